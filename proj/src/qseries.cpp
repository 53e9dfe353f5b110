#include "vvef/qseries.hpp"

#include <numeric>
#include <stdexcept>

namespace vvef {

namespace {

bool below(std::int64_t num, std::int64_t w, const Rational& prec) { return Rational(prec * w) > num; }

// smallest integer >= prec * w (prec >= 0)
std::int64_t ceil_scaled(const Rational& prec, std::int64_t w)
{
    Rational p = prec * w;
    Integer q;
    mpz_cdiv_q(q.get_mpz_t(), p.get_num_mpz_t(), p.get_den_mpz_t());
    return q.get_si();
}

Rational rpow(const Rational& x, int e)
{
    Rational r = 1;
    for (int i = 0; i < e; ++i)
        r *= x;
    return r;
}

}  // namespace

QExp::QExp(std::int64_t denom, Rational prec) : w_(denom), prec_(std::move(prec))
{
    if (denom < 1)
        throw std::invalid_argument("q-expansion denominator must be positive");
}

QExp QExp::from_coeffs(const std::vector<CycNum>& c, const Rational& prec)
{
    QExp f(1, prec);
    for (std::size_t i = 0; i < c.size(); ++i)
        if (below(static_cast<std::int64_t>(i), 1, prec) && !c[i].is_zero())
            f.c_[static_cast<std::int64_t>(i)] = c[i];
    return f;
}

QExp QExp::from_coeffs(const std::vector<long>& c, const Rational& prec)
{
    return from_coeffs(std::vector<CycNum>(c.begin(), c.end()), prec);
}

CycNum QExp::coeff(const Rational& n) const
{
    if (n >= prec_)
        throw std::out_of_range("coefficient beyond known precision");
    Rational s = n * w_;
    if (s.get_den() != 1)
        return CycNum(0);
    auto it = c_.find(s.get_num().get_si());
    return it == c_.end() ? CycNum(0) : it->second;
}

void QExp::add_term(const Rational& n, const CycNum& v)
{
    if (n >= prec_)
        throw std::out_of_range("term beyond known precision");
    if (sgn(n) < 0)
        throw std::invalid_argument("negative exponent");
    std::int64_t den = n.get_den().get_si();
    if (w_ % den != 0)
        *this = with_denom(std::lcm(w_, den));
    std::int64_t key = Rational(n * w_).get_num().get_si();
    auto it = c_.find(key);
    if (it == c_.end()) {
        if (!v.is_zero())
            c_.emplace(key, v);
        return;
    }
    it->second += v;
    if (it->second.is_zero())
        c_.erase(it);
}

std::vector<Rational> QExp::exponents() const
{
    std::vector<Rational> e;
    for (const auto& [k, v] : c_) {
        e.push_back(make_rational(k, w_));
    }
    return e;
}

QExp QExp::truncate(const Rational& p) const
{
    QExp r = *this;
    if (p < prec_)
        r.prec_ = p;
    for (auto it = r.c_.begin(); it != r.c_.end();) {
        if (below(it->first, r.w_, r.prec_))
            ++it;
        else
            it = r.c_.erase(it);
    }
    return r;
}

QExp QExp::with_denom(std::int64_t w) const
{
    if (w % w_ != 0)
        throw std::invalid_argument("with_denom: new denominator must be a multiple");
    if (w == w_)
        return *this;
    QExp r(w, prec_);
    std::int64_t s = w / w_;
    for (const auto& [k, v] : c_)
        r.c_.emplace(k * s, v);
    return r;
}

QExp QExp::dilate(std::int64_t t) const
{
    QExp r(w_, prec_ * t);
    for (const auto& [k, v] : c_)
        r.c_.emplace(k * t, v);
    return r;
}

void QExp::normalize()
{
    for (auto it = c_.begin(); it != c_.end();) {
        if (it->second.is_zero())
            it = c_.erase(it);
        else
            ++it;
    }
    std::int64_t g = w_;
    for (const auto& [k, v] : c_)
        g = std::gcd(g, k);
    if (g <= 1)
        return;
    std::map<std::int64_t, CycNum> n;
    for (auto& [k, v] : c_)
        n.emplace(k / g, std::move(v));
    c_ = std::move(n);
    w_ /= g;
}

QExp& QExp::operator+=(const QExp& o)
{
    std::int64_t w = std::lcm(w_, o.w_);
    if (w != w_)
        *this = with_denom(w);
    const QExp& b = o.w_ == w ? o : o.with_denom(w);
    if (b.prec_ < prec_)
        *this = truncate(b.prec_);
    for (const auto& [k, v] : b.c_) {
        if (!below(k, w_, prec_))
            continue;
        auto it = c_.find(k);
        if (it == c_.end()) {
            c_.emplace(k, v);
            continue;
        }
        it->second += v;
        if (it->second.is_zero())
            c_.erase(it);
    }
    normalize();
    return *this;
}

QExp& QExp::operator-=(const QExp& o) { return *this += CycNum(-1) * o; }

QExp operator*(const CycNum& s, const QExp& a)
{
    QExp r(a.w_, a.prec_);
    if (s.is_zero())
        return r;
    for (const auto& [k, v] : a.c_)
        r.c_.emplace(k, s * v);
    return r;
}

QExp operator*(const QExp& a, const QExp& b)
{
    std::int64_t w = std::lcm(a.w_, b.w_);
    Rational prec = a.prec_ < b.prec_ ? a.prec_ : b.prec_;
    std::int64_t limit = ceil_scaled(prec, w);
    std::int64_t sa = w / a.w_, sb = w / b.w_;
    long L = 1;
    for (const auto& [k, v] : a.c_)
        L = lcm_l(L, v.level());
    for (const auto& [k, v] : b.c_)
        L = lcm_l(L, v.level());
    std::vector<std::pair<std::int64_t, CycNum>> ta, tb;
    for (const auto& [k, v] : a.c_)
        if (k * sa < limit)
            ta.emplace_back(k * sa, v.embed(L));
    for (const auto& [k, v] : b.c_)
        if (k * sb < limit)
            tb.emplace_back(k * sb, v.embed(L));
    std::map<std::int64_t, CycNum> acc;
    for (const auto& [i, x] : ta)
        for (const auto& [j, y] : tb) {
            if (i + j >= limit)
                break;
            auto it = acc.try_emplace(i + j, CycNum(Rational(0), L)).first;
            it->second.add_product(x, y);
        }
    QExp r(w, prec);
    for (auto& [k, v] : acc)
        if (!v.is_zero())
            r.c_.emplace(k, std::move(v));
    r.normalize();
    return r;
}

bool operator==(const QExp& a, const QExp& b)
{
    if (a.prec_ != b.prec_)
        return false;
    std::int64_t w = std::lcm(a.w_, b.w_);
    QExp x = a.with_denom(w), y = b.with_denom(w);
    if (x.c_.size() != y.c_.size())
        return false;
    for (auto i = x.c_.begin(), j = y.c_.begin(); i != x.c_.end(); ++i, ++j)
        if (i->first != j->first || i->second != j->second)
            return false;
    return true;
}

QExp qexp_arith(const QExp& a, const QExp& b, QOp op)
{
    switch (op) {
    case QOp::add:
        return a + b;
    case QOp::mul:
        return a * b;
    case QOp::scale:
        // b is a constant series
        return b.coeff(0) * a;
    }
    throw std::invalid_argument("unknown q-expansion operation");
}

QExp slash_upper(const QExp& f, int k, const UpperTri& m, SlashNorm norm)
{
    if (k % 2 != 0)
        throw std::invalid_argument("slash_upper requires even weight");
    if (m.a <= 0 || m.d <= 0)
        throw std::invalid_argument("slash_upper requires a, d > 0");
    Rational scale = norm == SlashNorm::det_half_weight ? rpow(make_rational(m.a, m.d), k / 2)
                                                        : Rational(1) / rpow(Rational(m.d), k);
    scale.canonicalize();
    std::int64_t w = f.denom();
    std::int64_t L = w * m.d;
    Rational prec = f.prec() * m.a / m.d;
    QExp r(L, prec);
    for (const auto& [num, v] : f.terms()) {
        std::int64_t e = ((num % L) * (((m.b % L) + L) % L)) % L;
        CycNum c = v;
        c.scale(scale);
        if (e != 0) {
            std::int64_t g = std::gcd(e, L);
            c = c * CycNum::zeta(L / g, e / g);
        }
        r.add_term(make_rational(num * m.a, L), c);
    }
    r.normalize();
    return r;
}

VVForm make_vvform(int k, RepPtr rep, std::vector<QExp> comps)
{
    if (!rep || comps.size() != rep->dim())
        throw std::invalid_argument("vector-valued form: component count must equal representation dimension");
    std::int64_t w = 1;
    Rational prec = comps.front().prec();
    for (const auto& c : comps) {
        w = std::lcm(w, c.denom());
        if (c.prec() < prec)
            prec = c.prec();
    }
    for (auto& c : comps)
        c = c.truncate(prec).with_denom(w);
    return VVForm{k, std::move(rep), std::move(comps)};
}

VVForm scalar_form(int k, const QExp& f) { return make_vvform(k, trivial_rep(), {f}); }

bool check_t_compat(const VVForm& f)
{
    std::size_t n = f.rep->dim();
    std::int64_t w = f.comps.front().denom();
    std::map<std::int64_t, CycVector> vecs;
    for (std::size_t i = 0; i < n; ++i) {
        const QExp c = f.comps[i].with_denom(w);
        for (const auto& [k, v] : c.terms()) {
            auto it = vecs.try_emplace(k, CycVector(n)).first;
            it->second[i] = v;
        }
    }
    const auto& mono = f.rep->mono_T();
    for (const auto& [k, c] : vecs) {
        CycNum phase = CycNum::zeta(w, k);
        CycVector tc(n);
        if (mono) {
            for (std::size_t j = 0; j < n; ++j)
                if (!c[j].is_zero())
                    tc[mono->perm[j]] = mono->val[j] * c[j];
        } else {
            tc = f.rep->mat_T() * c;
        }
        for (std::size_t i = 0; i < n; ++i)
            if (tc[i] != phase * c[i])
                return false;
    }
    return true;
}

VVForm vv_hecke(const VVForm& f, std::int64_t M, SlashNorm norm)
{
    const auto& delta = delta_set(M);
    std::size_t n = f.rep->dim();
    std::vector<QExp> comps;
    comps.reserve(delta.size() * n);
    for (const auto& m : delta)
        for (std::size_t i = 0; i < n; ++i)
            comps.push_back(slash_upper(f.comps[i], f.weight, m, norm));
    return make_vvform(f.weight, hecke_rep(M, f.rep), std::move(comps));
}

VVForm vv_tensor(const VVForm& f, const VVForm& g)
{
    std::vector<QExp> comps;
    comps.reserve(f.comps.size() * g.comps.size());
    for (const auto& a : f.comps)
        for (const auto& b : g.comps)
            comps.push_back(a * b);
    return make_vvform(f.weight + g.weight, tensor_rep(f.rep, g.rep), std::move(comps));
}

VVForm vv_apply(const CycMatrix& F, const VVForm& f, const RepPtr& target)
{
    if (F.cols() != f.rep->dim() || F.rows() != target->dim())
        throw std::invalid_argument("vv_apply: dimension mismatch");
    std::vector<QExp> comps;
    for (std::size_t y = 0; y < F.rows(); ++y) {
        QExp acc(f.comps.front().denom(), f.prec());
        for (std::size_t x = 0; x < F.cols(); ++x)
            if (!F(y, x).is_zero())
                acc += F(y, x) * f.comps[x];
        comps.push_back(std::move(acc));
    }
    return make_vvform(f.weight, target, std::move(comps));
}

QExp vv_component(const VVForm& f, const CycVector& v)
{
    if (v.size() != f.comps.size())
        throw std::invalid_argument("vv_component: dimension mismatch");
    QExp acc(1, f.prec());
    for (std::size_t i = 0; i < v.size(); ++i)
        if (!v[i].is_zero())
            acc += v[i].conj() * f.comps[i];
    return acc;
}

QExp vv_contract(const VVForm& f, const CycVector& v)
{
    if (v.size() != f.comps.size())
        throw std::invalid_argument("vv_contract: dimension mismatch");
    QExp acc(1, f.prec());
    for (std::size_t i = 0; i < v.size(); ++i)
        if (!v[i].is_zero())
            acc += v[i] * f.comps[i];
    return acc;
}

VVForm vv_combine(const std::vector<VVForm>& forms, const CycVector& coeffs)
{
    if (forms.empty() || forms.size() != coeffs.size())
        throw std::invalid_argument("vv_combine: need one coefficient per form");
    std::vector<QExp> comps(forms.front().comps.size(), QExp(1, forms.front().prec()));
    for (std::size_t j = 0; j < forms.size(); ++j) {
        if (forms[j].comps.size() != comps.size())
            throw std::invalid_argument("vv_combine: dimension mismatch");
        if (coeffs[j].is_zero())
            continue;
        for (std::size_t i = 0; i < comps.size(); ++i)
            comps[i] += coeffs[j] * forms[j].comps[i];
    }
    return make_vvform(forms.front().weight, forms.front().rep, std::move(comps));
}

json to_json(const QExp& f)
{
    json terms = json::array();
    for (const auto& [k, v] : f.terms()) {
        Rational e = make_rational(k, f.denom());
        terms.push_back(json::array({e.get_str(), to_json(v)}));
    }
    return json{{"denom", f.denom()}, {"prec", f.prec().get_str()}, {"coeffs", terms}};
}

QExp qexp_from_json(const json& j)
{
    QExp f(j.at("denom").get<std::int64_t>(), parse_rational(j.at("prec").get<std::string>()));
    for (const auto& t : j.at("coeffs"))
        f.add_term(parse_rational(t.at(0).get<std::string>()), cyc_from_json(t.at(1)));
    if (f.denom() != j.at("denom").get<std::int64_t>())
        f = f.with_denom(j.at("denom").get<std::int64_t>());
    return f;
}

json to_json(const VVForm& f)
{
    json comps = json::array();
    for (const auto& c : f.comps)
        comps.push_back(to_json(c));
    return json{{"weight", f.weight}, {"rep", f.rep->spec()}, {"comps", comps}};
}

}  // namespace vvef
