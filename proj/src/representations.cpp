#include "vvef/representations.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>

namespace vvef {

namespace {

std::string char_tag(const DirichletChar& chi)
{
    return chi.is_trivial() ? "triv" : std::to_string(chi.index());
}

Monomial compose(const Monomial& a, const Monomial& b)
{
    Monomial r;
    std::size_t n = b.perm.size();
    r.perm.resize(n);
    r.val.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
        r.perm[j] = a.perm[b.perm[j]];
        r.val[j] = b.val[j] * a.val[b.perm[j]];
    }
    return r;
}

bool mono_is_identity(const Monomial& m)
{
    for (std::size_t j = 0; j < m.perm.size(); ++j)
        if (m.perm[j] != j || !m.val[j].is_one())
            return false;
    return true;
}

bool mono_equal(const Monomial& a, const Monomial& b)
{
    return a.perm == b.perm && a.val == b.val;
}

}  // namespace

std::optional<Monomial> as_monomial(const CycMatrix& m)
{
    if (m.rows() != m.cols())
        return std::nullopt;
    Monomial r;
    std::size_t n = m.cols();
    r.perm.assign(n, n);
    r.val.resize(n);
    std::vector<bool> hit(n, false);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i) {
            const auto& x = m(i, j);
            if (x.is_zero())
                continue;
            if (r.perm[j] != n || hit[i])
                return std::nullopt;
            r.perm[j] = i;
            r.val[j] = x;
            hit[i] = true;
        }
    for (std::size_t j = 0; j < n; ++j)
        if (r.perm[j] == n)
            return std::nullopt;
    return r;
}

void Rep::finish()
{
    if (kind_ != RepKind::Explicit) {
        S_ = evaluate_structural(Mat2::S());
        T_ = evaluate_structural(Mat2::T());
        Tinv_ = evaluate_structural(Mat2::Tinv());
    } else {
        Tinv_ = T_.inverse();
    }
    dim_ = S_.rows();
    level_ = lcm_l(S_.level(), T_.level());
    monoS_ = as_monomial(S_);
    monoT_ = as_monomial(T_);
}

CycMatrix Rep::evaluate(const Mat2& g) const
{
    if (g.det() != 1)
        throw std::invalid_argument("evaluate requires determinant one");
    if (g == Mat2::S())
        return S_;
    if (g == Mat2::T())
        return T_;
    if (g == Mat2::Tinv())
        return Tinv_;
    if (kind_ != RepKind::Explicit)
        return evaluate_structural(g);
    CycMatrix r = CycMatrix::identity(dim_);
    for (const auto& l : st_word(g)) {
        if (l.g == Gen::S)
            r = r * S_;
        else
            r = r * (l.e > 0 ? mat_pow(T_, l.e) : mat_pow(Tinv_, -l.e));
    }
    return r;
}

CycMatrix Rep::evaluate_structural(const Mat2& g) const
{
    switch (kind_) {
    case RepKind::Trivial:
        return CycMatrix::identity(1);
    case RepKind::Induced: {
        auto table = p1_cosets(param_);
        std::size_t n = table->size();
        CycMatrix m(n, n);
        Mat2 gi = g.inverse();
        for (std::size_t b = 0; b < n; ++b) {
            auto red = table->reduce(table->rep(b) * gi);
            m.set(red.rep_index, b, (*chi_)(red.iota.a));
        }
        return m;
    }
    case RepKind::Hecke: {
        const auto& delta = delta_set(param_);
        const Rep& inner = *children_[0];
        std::size_t k = inner.dim();
        CycMatrix m(delta.size() * k, delta.size() * k);
        Mat2 gi = g.inverse();
        for (std::size_t p = 0; p < delta.size(); ++p) {
            auto red = hecke_reduce(delta[p], gi);
            std::size_t q = delta_position(red.m_bar);
            CycMatrix blk = inner.evaluate(red.I_m_gamma.inverse());
            for (std::size_t i = 0; i < k; ++i)
                for (std::size_t j = 0; j < k; ++j)
                    if (!blk(i, j).is_zero())
                        m.set(q * k + i, p * k + j, blk(i, j));
        }
        return m;
    }
    case RepKind::Tensor:
        return kron(children_[0]->evaluate(g), children_[1]->evaluate(g));
    case RepKind::Dual:
        return children_[0]->evaluate(g.inverse()).transpose();
    case RepKind::Sum: {
        std::vector<CycMatrix> blocks;
        for (const auto& c : children_)
            blocks.push_back(c->evaluate(g));
        return block_diag(blocks);
    }
    case RepKind::Explicit:
        break;
    }
    throw std::logic_error("structural evaluation of an explicit representation");
}

RepPtr trivial_rep()
{
    auto r = std::make_shared<Rep>();
    r->kind_ = RepKind::Trivial;
    r->spec_ = "triv";
    r->finish();
    return r;
}

RepPtr induced_gamma0(std::int64_t N, const DirichletChar& chi)
{
    if (chi.modulus() != N)
        throw std::invalid_argument("induced_gamma0: character modulus must equal N");
    auto r = std::make_shared<Rep>();
    r->kind_ = RepKind::Induced;
    r->param_ = N;
    r->chi_ = chi;
    r->spec_ = "ind:" + std::to_string(N) + ":" + char_tag(chi);
    r->finish();
    return r;
}

RepPtr hecke_rep(std::int64_t M, const RepPtr& rho)
{
    if (M < 1)
        throw std::invalid_argument("hecke_rep requires M >= 1");
    auto r = std::make_shared<Rep>();
    r->kind_ = RepKind::Hecke;
    r->param_ = M;
    r->children_ = {rho};
    r->spec_ = "hecke:" + std::to_string(M) + ":" + rho->spec();
    r->finish();
    return r;
}

RepPtr tensor_rep(const RepPtr& a, const RepPtr& b)
{
    auto r = std::make_shared<Rep>();
    r->kind_ = RepKind::Tensor;
    r->children_ = {a, b};
    r->spec_ = "tensor(" + a->spec() + ", " + b->spec() + ")";
    r->finish();
    return r;
}

RepPtr dual_rep(const RepPtr& a)
{
    auto r = std::make_shared<Rep>();
    r->kind_ = RepKind::Dual;
    r->children_ = {a};
    r->spec_ = "dual(" + a->spec() + ")";
    r->finish();
    return r;
}

RepPtr sum_rep(const std::vector<RepPtr>& parts)
{
    if (parts.empty())
        throw std::invalid_argument("sum_rep requires at least one summand");
    auto r = std::make_shared<Rep>();
    r->kind_ = RepKind::Sum;
    r->children_ = parts;
    r->spec_ = "sum(";
    for (std::size_t i = 0; i < parts.size(); ++i)
        r->spec_ += (i ? ", " : "") + parts[i]->spec();
    r->spec_ += ")";
    r->finish();
    return r;
}

RepPtr explicit_rep(const CycMatrix& S, const CycMatrix& T, const std::string& name)
{
    if (S.rows() != S.cols() || T.rows() != T.cols() || S.rows() != T.rows())
        throw std::invalid_argument("explicit_rep: generator matrices must be square of equal size");
    auto r = std::make_shared<Rep>();
    r->kind_ = RepKind::Explicit;
    r->S_ = S;
    r->T_ = T;
    r->spec_ = name;
    r->finish();
    if (!check_relations(*r))
        throw std::invalid_argument("explicit_rep: matrices violate the SL2(Z) relations");
    return r;
}

bool check_relations(const Rep& rho)
{
    if (rho.is_monomial()) {
        const auto& s = *rho.mono_S();
        const auto& t = *rho.mono_T();
        auto s2 = compose(s, s);
        auto st = compose(s, t);
        auto st3 = compose(st, compose(st, st));
        return mono_is_identity(compose(s2, s2)) && mono_equal(st3, s2);
    }
    const auto& S = rho.mat_S();
    CycMatrix S2 = S * S;
    CycMatrix ST = S * rho.mat_T();
    return (S2 * S2).is_identity() && ST * ST * ST == S2;
}

bool is_intertwiner(const CycMatrix& F, const Rep& source, const Rep& target)
{
    if (F.rows() != target.dim() || F.cols() != source.dim())
        return false;
    return F * source.mat_S() == target.mat_S() * F && F * source.mat_T() == target.mat_T() * F;
}

namespace {

HomBasis hom_monomial(const RepPtr& source, const RepPtr& target)
{
    std::size_t s = source->dim(), t = target->dim();
    const Monomial* src[2] = {&*source->mono_S(), &*source->mono_T()};
    const Monomial* tgt[2] = {&*target->mono_S(), &*target->mono_T()};
    std::vector<CycNum> inv_alpha[2];
    for (int g = 0; g < 2; ++g)
        for (const auto& v : src[g]->val)
            inv_alpha[g].push_back(v.inverse());

    std::size_t n = s * t;
    std::vector<int> orbit(n, -1);
    std::vector<CycNum> val(n);
    HomBasis hb{source, target, {}};
    int next = 0;
    for (std::size_t root = 0; root < n; ++root) {
        if (orbit[root] >= 0)
            continue;
        int id = next++;
        std::vector<std::size_t> members{root};
        orbit[root] = id;
        val[root] = CycNum(1);
        bool ok = true;
        std::deque<std::size_t> queue{root};
        while (!queue.empty()) {
            std::size_t u = queue.front();
            queue.pop_front();
            std::size_t y = u / s, x = u % s;
            for (int g = 0; g < 2; ++g) {
                std::size_t v = tgt[g]->perm[y] * s + src[g]->perm[x];
                CycNum c = val[u] * tgt[g]->val[y] * inv_alpha[g][x];
                if (orbit[v] < 0) {
                    orbit[v] = id;
                    val[v] = c;
                    members.push_back(v);
                    queue.push_back(v);
                } else if (ok && val[v] != c) {
                    ok = false;
                }
            }
        }
        if (!ok)
            continue;
        std::sort(members.begin(), members.end());
        CycMatrix F(t, s);
        for (auto v : members)
            F.set(v / s, v % s, val[v]);
        hb.basis.push_back(std::move(F));
    }
    return hb;
}

HomBasis hom_generic(const RepPtr& source, const RepPtr& target)
{
    std::size_t s = source->dim(), t = target->dim();
    const CycMatrix* A[2] = {&source->mat_S(), &source->mat_T()};
    const CycMatrix* B[2] = {&target->mat_S(), &target->mat_T()};
    std::size_t n = s * t;
    CycMatrix sys(2 * n, n);
    for (int g = 0; g < 2; ++g)
        for (std::size_t y = 0; y < t; ++y)
            for (std::size_t x = 0; x < s; ++x) {
                std::size_t row = g * n + y * s + x;
                for (std::size_t k = 0; k < s; ++k)
                    if (!(*A[g])(k, x).is_zero())
                        sys.set(row, y * s + k, sys(row, y * s + k) + (*A[g])(k, x));
                for (std::size_t k = 0; k < t; ++k)
                    if (!(*B[g])(y, k).is_zero())
                        sys.set(row, k * s + x, sys(row, k * s + x) - (*B[g])(y, k));
            }
    auto r = rref(sys);
    HomBasis hb{source, target, {}};
    for (const auto& v : r.kernel_basis) {
        CycMatrix F(t, s);
        for (std::size_t i = 0; i < n; ++i)
            if (!v[i].is_zero())
                F.set(i / s, i % s, v[i]);
        hb.basis.push_back(std::move(F));
    }
    return hb;
}

}  // namespace

HomBasis hom_space(const RepPtr& source, const RepPtr& target)
{
    if (source->is_monomial() && target->is_monomial())
        return hom_monomial(source, target);
    return hom_generic(source, target);
}

std::vector<CycVector> t_fixed(const Rep& rho)
{
    std::size_t n = rho.dim();
    if (rho.mono_T()) {
        const auto& m = *rho.mono_T();
        std::vector<bool> seen(n, false);
        std::vector<CycVector> out;
        for (std::size_t j = 0; j < n; ++j) {
            if (seen[j])
                continue;
            CycVector v(n);
            std::size_t cur = j;
            CycNum c(1);
            while (!seen[cur]) {
                seen[cur] = true;
                v[cur] = c;
                c = c * m.val[cur];
                cur = m.perm[cur];
            }
            // closing the cycle must return the starting value
            if (c.is_one())
                out.push_back(std::move(v));
        }
        return out;
    }
    return rref(rho.mat_T() - CycMatrix::identity(n)).kernel_basis;
}

json rep_info_json(const Rep& rho)
{
    return json{{"spec", rho.spec()},
                {"dim", rho.dim()},
                {"level", rho.level()},
                {"mat_S", to_json(rho.mat_S())},
                {"mat_T", to_json(rho.mat_T())},
                {"t_fixed_dim", t_fixed(rho).size()}};
}

}  // namespace vvef
