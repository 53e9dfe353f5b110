#include "vvef/eisenstein.hpp"

#include <mutex>
#include <stdexcept>

namespace vvef {

namespace {

Integer binom(long n, long k)
{
    Integer r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return r;
}

Integer ipow(std::int64_t b, long e)
{
    Integer r;
    mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(b), static_cast<unsigned long>(e));
    return r;
}

void require_weight(int k)
{
    if (k < 4 || k % 2 != 0)
        throw std::invalid_argument("weight k must be even and >= 4");
}

// B_k(x) = sum_j C(k, j) B_j x^{k-j}
Rational bernoulli_poly(int k, const Rational& x)
{
    Rational s = 0, xp = 1;
    for (int j = k; j >= 0; --j) {
        s += Rational(binom(k, j)) * bernoulli(j) * xp;
        xp *= x;
    }
    return s;
}

// B_{k,chi} summed over residues mod chi's own modulus
CycNum bernoulli_sum(int k, const DirichletChar& chi)
{
    std::int64_t f = chi.modulus();
    CycNum s(Rational(0), chi.order());
    for (std::int64_t a = 1; a <= f; ++a) {
        if (!chi.exponent(a))
            continue;
        CycNum v = chi(a);
        v.scale(bernoulli_poly(k, make_rational(a, f)));
        s += v;
    }
    s.scale(Rational(ipow(f, k - 1)));
    return s.demote();
}

}  // namespace

Rational bernoulli(int n)
{
    if (n < 0)
        throw std::invalid_argument("bernoulli requires n >= 0");
    static std::mutex mu;
    static std::vector<Rational> cache{Rational(1)};
    std::lock_guard<std::mutex> lock(mu);
    // sum_{j=0}^{m} C(m+1, j) B_j = 0
    while (static_cast<int>(cache.size()) <= n) {
        long m = static_cast<long>(cache.size());
        Rational s = 0;
        for (long j = 0; j < m; ++j)
            s += Rational(binom(m + 1, j)) * cache[j];
        cache.push_back(-s / Rational(m + 1));
    }
    return cache[n];
}

CycNum gen_bernoulli(int k, const DirichletChar& chi) { return bernoulli_sum(k, chi.primitive()); }

QExp level1_eis(int k, long prec)
{
    require_weight(k);
    Rational c = Rational(-2 * k) / bernoulli(k);
    QExp f(1, Rational(prec));
    if (prec > 0)
        f.add_term(0, CycNum(1));
    DirichletChar one(1);
    for (long n = 1; n < prec; ++n)
        f.add_term(n, CycNum(c * sigma_w(n, k - 1, one, one).rational_value()));
    return f;
}

QExp char_eis(const EisSpec& spec, long prec)
{
    require_weight(spec.k);
    if (spec.t < 1)
        throw std::invalid_argument("rescale t must be positive");
    if (spec.delta.parity() * spec.eps.parity() != 1)
        throw std::invalid_argument("delta * eps must be even");
    QExp f(1, Rational(prec));
    if (spec.eps.modulus() == 1 && prec > 0) {
        CycNum c0 = -bernoulli_sum(spec.k, spec.delta);
        c0.scale(make_rational(1, 2 * spec.k));
        f.add_term(0, c0);
    }
    for (std::int64_t n = 1; n * spec.t < prec; ++n)
        f.add_term(Rational(n * spec.t), sigma_w(n, spec.k - 1, spec.delta, spec.eps));
    return f;
}

QExp eis_basis_member(std::int64_t u, const DirichletChar& psi, std::int64_t t, int k, long prec)
{
    if (u == 1)
        return level1_eis(k, prec).dilate(t).truncate(Rational(prec));
    if (psi.modulus() != u)
        throw std::invalid_argument("psi must have modulus u");
    return char_eis(EisSpec{k, psi.conj(), psi, t}, prec);
}

std::vector<QExp> eis_basis_gamma0(std::int64_t N, int k, long prec)
{
    require_weight(k);
    std::vector<QExp> out;
    for (long u : divisors(N)) {
        if (N % (static_cast<std::int64_t>(u) * u) != 0)
            continue;
        for (const auto& psi : enumerate_chars(u)) {
            if (!psi.is_primitive())
                continue;
            for (long t : divisors(N / (static_cast<std::int64_t>(u) * u)))
                out.push_back(eis_basis_member(u, psi, t, k, prec));
        }
    }
    return out;
}

QExp ramanujan_delta(long prec)
{
    // prod (1 - q^n)^24 for exponents < prec - 1, then shift by q
    long m = prec > 1 ? prec - 1 : 0;
    std::vector<Integer> p(m, Integer(0));
    if (m > 0)
        p[0] = 1;
    for (long n = 1; n < m; ++n)
        for (int r = 0; r < 24; ++r)
            for (long i = m - 1; i >= n; --i)
                p[i] -= p[i - n];
    QExp f(1, Rational(prec));
    for (long i = 0; i < m; ++i)
        if (p[i] != 0)
            f.add_term(Rational(i + 1), CycNum(Rational(p[i])));
    return f;
}

RankinSides rankin_sides(const CoeffOracle& c, int k, const DirichletChar& chi, int w, const DirichletChar& delta,
                         const DirichletChar& eps, std::int64_t n)
{
    if (n < 1)
        throw std::invalid_argument("rankin check requires n >= 1");
    RankinSides s{CycNum(0), CycNum(0)};
    for (long u : divisors(n)) {
        std::int64_t v = n / u;
        if (!eps.exponent(u) || !delta.exponent(v))
            continue;
        CycNum term = eps(u) * c(u) * delta(v) * c(v);
        term.scale(Rational(ipow(v, w)));
        s.lhs += term;
    }
    DirichletChar prod = chi * delta * eps;
    for (std::int64_t d = 1; d * d <= n; ++d) {
        if (n % (d * d) != 0 || !prod.exponent(d))
            continue;
        std::int64_t m = n / (d * d);
        CycNum term = prod(d) * sigma_w(m, w, delta, eps) * c(m);
        term.scale(Rational(ipow(d, k - 1 + w)));
        s.rhs += term;
    }
    return s;
}

bool rankin_coefficient_check(const CoeffOracle& c, int k, const DirichletChar& chi, int w,
                              const DirichletChar& delta, const DirichletChar& eps, std::int64_t n)
{
    auto s = rankin_sides(c, k, chi, w, delta, eps, n);
    return s.lhs == s.rhs;
}

}  // namespace vvef
