#include "vvef/exactfield.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <stdexcept>

namespace vvef {

Rational make_rational(long num, long den)
{
    if (den == 0)
        throw std::domain_error("zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

Rational parse_rational(std::string_view s)
{
    Rational r;
    if (r.set_str(std::string(s), 10) != 0)
        throw std::invalid_argument("bad rational: " + std::string(s));
    if (r.get_den() == 0)
        throw std::domain_error("zero denominator");
    r.canonicalize();
    return r;
}

long gcd_l(long a, long b) { return std::gcd(a, b); }
long lcm_l(long a, long b) { return std::lcm(a, b); }

long mod_floor(long a, long m)
{
    long r = a % m;
    return r < 0 ? r + m : r;
}

std::vector<std::pair<long, int>> factorize(long n)
{
    std::vector<std::pair<long, int>> f;
    for (long p = 2; p * p <= n; ++p) {
        if (n % p)
            continue;
        int e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        f.emplace_back(p, e);
    }
    if (n > 1)
        f.emplace_back(n, 1);
    return f;
}

long euler_phi(long n)
{
    long r = n;
    for (auto [p, e] : factorize(n))
        r = r / p * (p - 1);
    return r;
}

std::vector<long> divisors(long n)
{
    std::vector<long> lo, hi;
    for (long d = 1; d * d <= n; ++d) {
        if (n % d)
            continue;
        lo.push_back(d);
        if (d != n / d)
            hi.push_back(n / d);
    }
    lo.insert(lo.end(), hi.rbegin(), hi.rend());
    return lo;
}

namespace {

std::vector<long> poly_divexact(std::vector<long> num, const std::vector<long>& den)
{
    // den is monic
    std::size_t dn = den.size() - 1;
    std::vector<long> q(num.size() - dn, 0);
    for (std::size_t i = num.size(); i-- > dn;) {
        long c = num[i];
        q[i - dn] = c;
        if (c == 0)
            continue;
        for (std::size_t j = 0; j <= dn; ++j)
            num[i - dn + j] -= c * den[j];
    }
    return q;
}

std::map<long, std::vector<long>>& poly_cache()
{
    static std::map<long, std::vector<long>> c;
    return c;
}

std::vector<long> cyclotomic_poly_locked(long L)
{
    auto& cache = poly_cache();
    if (auto it = cache.find(L); it != cache.end())
        return it->second;
    std::vector<long> p(L + 1, 0);
    p[0] = -1;
    p[L] = 1;
    for (long d : divisors(L))
        if (d < L)
            p = poly_divexact(p, cyclotomic_poly_locked(d));
    cache[L] = p;
    return p;
}

std::mutex& field_mutex()
{
    static std::mutex m;
    return m;
}

std::shared_ptr<const CycloField> build_field(long L)
{
    auto f = std::make_shared<CycloField>();
    f->level = L;
    f->poly = cyclotomic_poly_locked(L);
    f->phi = f->poly.size() - 1;
    std::size_t n = f->phi;
    std::vector<long> cur(n, 0);
    cur[0] = 1;
    f->powers.reserve(L);
    for (long j = 0; j < L; ++j) {
        f->powers.push_back(cur);
        // multiply by x and reduce
        long top = n ? cur[n - 1] : 0;
        for (std::size_t i = n; i-- > 1;)
            cur[i] = cur[i - 1];
        if (n)
            cur[0] = 0;
        if (top != 0)
            for (std::size_t i = 0; i < n; ++i)
                cur[i] -= top * f->poly[i];
        if (n == 0)
            cur = {};
    }
    return f;
}

}  // namespace

std::shared_ptr<const CycloField> cyclo_field(long L)
{
    if (L < 1)
        throw std::invalid_argument("cyclotomic level must be positive");
    static std::map<long, std::shared_ptr<const CycloField>> cache;
    std::lock_guard lock(field_mutex());
    if (auto it = cache.find(L); it != cache.end())
        return it->second;
    auto f = build_field(L);
    cache[L] = f;
    return f;
}

CycNum::CycNum() : level_(1), coeffs_(1) {}

CycNum::CycNum(long v) : level_(1), coeffs_{Rational(v)} {}

CycNum::CycNum(const Rational& r, long level) : level_(level)
{
    coeffs_.assign(cyclo_field(level)->phi, Rational(0));
    coeffs_[0] = r;
}

CycNum::CycNum(long level, std::vector<Rational> coeffs) : level_(level), coeffs_(std::move(coeffs))
{
    if (coeffs_.size() != cyclo_field(level)->phi)
        throw std::invalid_argument("coefficient vector length must equal phi(level)");
}

CycNum CycNum::zeta(long L, long e)
{
    auto f = cyclo_field(L);
    const auto& p = f->powers[mod_floor(e, L)];
    std::vector<Rational> c(f->phi);
    for (std::size_t i = 0; i < f->phi; ++i)
        c[i] = p[i];
    return CycNum(L, std::move(c));
}

bool CycNum::is_zero() const
{
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Rational& r) { return sgn(r) == 0; });
}

bool CycNum::is_rational() const
{
    return std::all_of(coeffs_.begin() + 1, coeffs_.end(), [](const Rational& r) { return sgn(r) == 0; });
}

bool CycNum::is_one() const { return is_rational() && coeffs_[0] == 1; }

Rational CycNum::rational_value() const
{
    if (!is_rational())
        throw std::domain_error("cyclotomic number is not rational");
    return coeffs_[0];
}

CycNum CycNum::embed(long L2) const
{
    if (L2 % level_ != 0)
        throw std::invalid_argument("embed: target level must be a multiple of the source level");
    if (L2 == level_)
        return *this;
    auto f = cyclo_field(L2);
    long r = L2 / level_;
    std::vector<Rational> c(f->phi, Rational(0));
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        if (sgn(coeffs_[i]) == 0)
            continue;
        const auto& p = f->powers[(static_cast<long>(i) * r) % L2];
        for (std::size_t j = 0; j < f->phi; ++j)
            if (p[j] != 0)
                c[j] += coeffs_[i] * p[j];
    }
    return CycNum(L2, std::move(c));
}

CycNum CycNum::galois(long u) const
{
    if (gcd_l(mod_floor(u, level_), level_) != 1)
        throw std::invalid_argument("galois: exponent not coprime to level");
    auto f = cyclo_field(level_);
    std::vector<Rational> c(f->phi, Rational(0));
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        if (sgn(coeffs_[i]) == 0)
            continue;
        const auto& p = f->powers[mod_floor(static_cast<long>(i) * u, level_)];
        for (std::size_t j = 0; j < f->phi; ++j)
            if (p[j] != 0)
                c[j] += coeffs_[i] * p[j];
    }
    return CycNum(level_, std::move(c));
}

CycNum CycNum::conj() const
{
    if (level_ <= 2)
        return *this;
    return galois(-1);
}

CycNum CycNum::demote() const
{
    for (long d : divisors(level_)) {
        if (d == level_)
            return *this;
        // a lies in Q(zeta_d) iff fixed by every u = 1 mod d
        bool fixed = true;
        for (long u = 1 + d; u < level_ && fixed; u += d)
            if (gcd_l(u, level_) == 1 && galois(u) != *this)
                fixed = false;
        if (!fixed)
            continue;
        // solve for the preimage coordinates
        auto f = cyclo_field(d);
        auto big = cyclo_field(level_);
        long r = level_ / d;
        std::size_t n = f->phi, m = big->phi;
        std::vector<std::vector<Rational>> a(m, std::vector<Rational>(n + 1));
        for (std::size_t i = 0; i < n; ++i) {
            const auto& p = big->powers[(static_cast<long>(i) * r) % level_];
            for (std::size_t j = 0; j < m; ++j)
                a[j][i] = p[j];
        }
        for (std::size_t j = 0; j < m; ++j)
            a[j][n] = coeffs_[j];
        std::size_t row = 0;
        std::vector<std::size_t> piv;
        for (std::size_t c = 0; c < n && row < m; ++c) {
            std::size_t p = row;
            while (p < m && sgn(a[p][c]) == 0)
                ++p;
            if (p == m)
                continue;
            std::swap(a[p], a[row]);
            Rational inv = 1 / a[row][c];
            for (auto& x : a[row])
                x *= inv;
            for (std::size_t i = 0; i < m; ++i) {
                if (i == row || sgn(a[i][c]) == 0)
                    continue;
                Rational t = a[i][c];
                for (std::size_t k = c; k <= n; ++k)
                    a[i][k] -= t * a[row][k];
            }
            piv.push_back(c);
            ++row;
        }
        std::vector<Rational> x(n, Rational(0));
        for (std::size_t i = 0; i < piv.size(); ++i)
            x[piv[i]] = a[i][n];
        return CycNum(d, std::move(x));
    }
    return *this;
}

namespace {

void unify(CycNum& a, CycNum& b)
{
    if (a.level() == b.level())
        return;
    long L = lcm_l(a.level(), b.level());
    a = a.embed(L);
    b = b.embed(L);
}

}  // namespace

CycNum& CycNum::operator+=(const CycNum& o)
{
    if (o.level_ == level_ || o.level_ == 1) {
        if (o.level_ == 1) {
            coeffs_[0] += o.coeffs_[0];
            return *this;
        }
        for (std::size_t i = 0; i < coeffs_.size(); ++i)
            coeffs_[i] += o.coeffs_[i];
        return *this;
    }
    CycNum b = o;
    unify(*this, b);
    return *this += b;
}

CycNum& CycNum::operator-=(const CycNum& o)
{
    if (o.level_ == level_ || o.level_ == 1) {
        if (o.level_ == 1) {
            coeffs_[0] -= o.coeffs_[0];
            return *this;
        }
        for (std::size_t i = 0; i < coeffs_.size(); ++i)
            coeffs_[i] -= o.coeffs_[i];
        return *this;
    }
    CycNum b = o;
    unify(*this, b);
    return *this -= b;
}

CycNum CycNum::operator-() const
{
    CycNum r = *this;
    for (auto& c : r.coeffs_)
        c = -c;
    return r;
}

void CycNum::scale(const Rational& r)
{
    for (auto& c : coeffs_)
        if (sgn(c) != 0)
            c *= r;
}

CycNum operator*(const CycNum& a, const CycNum& b)
{
    if (a.level_ == 1 && b.level_ == 1)
        return CycNum(Rational(a.coeffs_[0] * b.coeffs_[0]));
    if (a.level_ == 1) {
        CycNum r = b;
        r.scale(a.coeffs_[0]);
        return r;
    }
    if (b.level_ == 1) {
        CycNum r = a;
        r.scale(b.coeffs_[0]);
        return r;
    }
    if (a.level_ != b.level_) {
        CycNum x = a, y = b;
        unify(x, y);
        return x * y;
    }
    CycNum r(Rational(0), a.level_);
    r.add_product(a, b);
    return r;
}

void CycNum::add_product(const CycNum& a, const CycNum& b)
{
    if (a.level_ != b.level_ || a.level_ == 1 || (level_ != a.level_)) {
        *this += a * b;
        return;
    }
    auto f = cyclo_field(level_);
    long L = level_;
    std::size_t n = f->phi;
    std::vector<Rational> acc(L, Rational(0));
    std::vector<bool> used(L, false);
    Rational t;
    for (std::size_t i = 0; i < n; ++i) {
        if (sgn(a.coeffs_[i]) == 0)
            continue;
        for (std::size_t j = 0; j < n; ++j) {
            if (sgn(b.coeffs_[j]) == 0)
                continue;
            std::size_t e = (i + j) % static_cast<std::size_t>(L);
            mpq_mul(t.get_mpq_t(), a.coeffs_[i].get_mpq_t(), b.coeffs_[j].get_mpq_t());
            acc[e] += t;
            used[e] = true;
        }
    }
    for (long e = 0; e < L; ++e) {
        if (!used[e] || sgn(acc[e]) == 0)
            continue;
        if (static_cast<std::size_t>(e) < n) {
            coeffs_[e] += acc[e];
            continue;
        }
        const auto& p = f->powers[e];
        for (std::size_t j = 0; j < n; ++j)
            if (p[j] != 0)
                coeffs_[j] += acc[e] * p[j];
    }
}

CycNum& CycNum::operator*=(const CycNum& o)
{
    *this = *this * o;
    return *this;
}

CycNum CycNum::inverse() const
{
    if (is_zero())
        throw std::domain_error("division by zero in cyclotomic field");
    if (is_rational())
        return CycNum(Rational(1 / coeffs_[0]), level_);
    // solve (multiplication by this) x = 1
    auto f = cyclo_field(level_);
    std::size_t n = f->phi;
    std::vector<std::vector<Rational>> a(n, std::vector<Rational>(n + 1, Rational(0)));
    for (std::size_t j = 0; j < n; ++j) {
        CycNum col = *this * zeta(level_, static_cast<long>(j));
        for (std::size_t i = 0; i < n; ++i)
            a[i][j] = col.coeffs_[i];
    }
    a[0][n] = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (sgn(a[p][c]) == 0)
            ++p;
        std::swap(a[p], a[c]);
        Rational inv = 1 / a[c][c];
        for (std::size_t k = c; k <= n; ++k)
            a[c][k] *= inv;
        for (std::size_t i = 0; i < n; ++i) {
            if (i == c || sgn(a[i][c]) == 0)
                continue;
            Rational t = a[i][c];
            for (std::size_t k = c; k <= n; ++k)
                a[i][k] -= t * a[c][k];
        }
    }
    std::vector<Rational> x(n);
    for (std::size_t i = 0; i < n; ++i)
        x[i] = a[i][n];
    return CycNum(level_, std::move(x));
}

CycNum& CycNum::operator/=(const CycNum& o)
{
    *this = *this * o.inverse();
    return *this;
}

bool operator==(const CycNum& a, const CycNum& b)
{
    if (a.level_ == b.level_)
        return a.coeffs_ == b.coeffs_;
    if (a.is_rational() && b.is_rational())
        return a.coeffs_[0] == b.coeffs_[0];
    CycNum x = a, y = b;
    unify(x, y);
    return x.coeffs_ == y.coeffs_;
}

CycNum cyc_arith(const CycNum& a, const CycNum& b, CycOp op)
{
    switch (op) {
    case CycOp::add:
        return a + b;
    case CycOp::sub:
        return a - b;
    case CycOp::mul:
        return a * b;
    case CycOp::div:
        return a / b;
    }
    throw std::invalid_argument("unknown operation");
}

std::string to_text(const CycNum& a)
{
    std::string out;
    for (std::size_t i = 0; i < a.coeffs().size(); ++i) {
        const auto& c = a.coeffs()[i];
        if (sgn(c) == 0)
            continue;
        if (!out.empty())
            out += " + ";
        out += "(" + c.get_str() + ")";
        if (i >= 1)
            out += "*z" + std::to_string(a.level());
        if (i >= 2)
            out += "^" + std::to_string(i);
    }
    return out.empty() ? "0" : out;
}

json to_json(const CycNum& a)
{
    json terms = json::array();
    for (std::size_t i = 0; i < a.coeffs().size(); ++i)
        if (sgn(a.coeffs()[i]) != 0)
            terms.push_back(json::array({i, a.coeffs()[i].get_str()}));
    return json{{"level", a.level()}, {"terms", terms}};
}

CycNum cyc_from_json(const json& j)
{
    long L = j.at("level").get<long>();
    auto f = cyclo_field(L);
    std::vector<Rational> c(f->phi, Rational(0));
    for (const auto& t : j.at("terms")) {
        auto i = t.at(0).get<std::size_t>();
        if (i >= f->phi)
            throw std::invalid_argument("cyclotomic term index out of range");
        c[i] = parse_rational(t.at(1).get<std::string>());
    }
    return CycNum(L, std::move(c));
}

}  // namespace vvef
