#include "vvef/eisenstein.hpp"
#include "vvef/linalg.hpp"

#include <doctest.h>

#include <random>

using namespace vvef;

namespace {

Integer ipow(long b, int e)
{
    Integer r = 1;
    for (int i = 0; i < e; ++i)
        r *= b;
    return r;
}

Integer sigma_brute(long n, int w)
{
    Integer s = 0;
    for (long d = 1; d <= n; ++d)
        if (n % d == 0)
            s += ipow(d, w);
    return s;
}

std::vector<Integer> delta_coeffs(long prec)
{
    std::vector<Integer> p(prec, 0);
    p[0] = 1;
    for (long n = 1; n < prec; ++n)
        for (int r = 0; r < 24; ++r)
            for (long i = prec - 1; i >= n; --i)
                p[i] -= p[i - n];
    std::vector<Integer> out(prec, 0);
    for (long i = 1; i < prec; ++i)
        out[i] = p[i - 1];
    return out;
}

std::size_t rank_of(const std::vector<QExp>& fs, long upto)
{
    std::vector<CycVector> rows;
    for (const auto& f : fs) {
        CycVector r;
        for (long n = 0; n < upto; ++n)
            r.push_back(f.coeff(n));
        rows.push_back(r);
    }
    return rref(CycMatrix::from_rows(rows)).rank;
}

}  // namespace

TEST_CASE("Bernoulli numbers")
{
    CHECK(bernoulli(0) == 1);
    CHECK(abs(bernoulli(1)) == make_rational(1, 2));
    CHECK(bernoulli(2) == make_rational(1, 6));
    CHECK(bernoulli(3) == 0);
    CHECK(bernoulli(4) == make_rational(-1, 30));
    CHECK(bernoulli(6) == make_rational(1, 42));
    CHECK(bernoulli(8) == make_rational(-1, 30));
    CHECK(bernoulli(10) == make_rational(5, 66));
    CHECK(bernoulli(12) == make_rational(-691, 2730));
    CHECK(bernoulli(20) == make_rational(-174611, 330));
    for (int n = 3; n < 40; n += 2)
        CHECK(bernoulli(n) == 0);
}

TEST_CASE("generalized Bernoulli numbers against known L-values")
{
    auto chi3 = enumerate_chars(3)[1];
    auto chi4 = enumerate_chars(4)[1];
    DirichletChar quad5(1);
    for (const auto& c : enumerate_chars(5))
        if (c.order() == 2)
            quad5 = c;
    REQUIRE(quad5.modulus() == 5);
    CHECK(gen_bernoulli(1, chi3) == CycNum(make_rational(-1, 3)));
    CHECK(gen_bernoulli(1, chi4) == CycNum(make_rational(-1, 2)));
    // L(-2, chi_{-3}) = -2/9 and L(-2, chi_{-4}) = -1/2
    CHECK(gen_bernoulli(3, chi3) == CycNum(make_rational(2, 3)));
    CHECK(gen_bernoulli(3, chi4) == CycNum(make_rational(3, 2)));
    // L(-1, chi_5) = -2/5
    CHECK(gen_bernoulli(2, quad5) == CycNum(make_rational(4, 5)));
    // trivial character recovers B_k (up to the sign convention of B_1)
    for (int k = 2; k <= 12; k += 2)
        CHECK(gen_bernoulli(k, DirichletChar(1)) == CycNum(bernoulli(k)));
    // parity: B_{k, chi} = 0 when chi(-1) != (-1)^k, k >= 2
    for (int k = 2; k <= 6; ++k)
        CHECK(gen_bernoulli(k, chi3).is_zero() == (k % 2 == 0));
}

TEST_CASE("level one Eisenstein series")
{
    auto E4 = level1_eis(4, 12);
    auto E12 = level1_eis(12, 12);
    CHECK(E4.coeff(0) == CycNum(1));
    CHECK(E12.coeff(0) == CycNum(1));
    for (long n = 1; n < 12; ++n) {
        CHECK(E4.coeff(n) == CycNum(Rational(240 * sigma_brute(n, 3))));
        CHECK(E12.coeff(n) == CycNum(Rational(65520 * sigma_brute(n, 11), 691)));
    }
    CHECK_THROWS_AS(level1_eis(3, 5), std::invalid_argument);
    CHECK_THROWS_AS(level1_eis(2, 5), std::invalid_argument);
}

TEST_CASE("E12 - Delta relation")
{
    // E12 - E6^2 = (2 * 65520 / 691 + 1008) Delta
    auto E12 = level1_eis(12, 20), E6 = level1_eis(6, 20);
    auto D = ramanujan_delta(20);
    Rational c = Rational(65520, 691) + 1008;
    CHECK(E12 - E6 * E6 == CycNum(c) * D);
    auto dc = delta_coeffs(20);
    for (long n = 0; n < 20; ++n)
        CHECK(D.coeff(n) == CycNum(Rational(dc[n])));
}

namespace {

DirichletChar quadratic_mod5()
{
    for (const auto& c : enumerate_chars(5))
        if (c.order() == 2)
            return c;
    return DirichletChar(5);
}

}  // namespace

TEST_CASE("character Eisenstein series coefficients")
{
    auto chi3 = enumerate_chars(3)[1];
    auto chi4 = enumerate_chars(4)[1];
    auto chi5 = quadratic_mod5();
    auto trivial = DirichletChar(1);
    // both characters of modulus one: -B_k/(2k) + sum sigma_{k-1}
    auto f = char_eis(EisSpec{4, trivial, trivial, 1}, 10);
    CHECK(f.coeff(0) == CycNum(make_rational(1, 240)));
    CHECK(CycNum(Rational(240)) * f == level1_eis(4, 10));
    // B_{4, chi5} = 125 sum chi5(a) B_4(a/5) = -8 with B_4(x) = x^4 - 2x^3 + x^2 - 1/30
    auto g = char_eis(EisSpec{4, chi5, trivial, 1}, 12);
    CHECK(g.coeff(0) == CycNum(1));
    for (long n = 1; n < 12; ++n)
        CHECK(g.coeff(n) == sigma_w(n, 3, chi5, trivial));
    auto h = char_eis(EisSpec{4, trivial, chi5, 2}, 20);
    CHECK(h.coeff(0).is_zero());
    for (long n = 1; n < 10; ++n) {
        CHECK(h.coeff(2 * n) == sigma_w(n, 3, trivial, chi5));
        CHECK(h.coeff(2 * n + 1).is_zero());
    }
    auto odd_pair = char_eis(EisSpec{4, chi3, chi4, 1}, 12);
    CHECK(odd_pair.coeff(0).is_zero());
    for (long n = 1; n < 12; ++n)
        CHECK(odd_pair.coeff(n) == sigma_w(n, 3, chi3, chi4));
    CHECK_THROWS_AS(char_eis(EisSpec{4, chi3, trivial, 1}, 5), std::invalid_argument);
    CHECK_THROWS_AS(char_eis(EisSpec{4, trivial, trivial, 0}, 5), std::invalid_argument);
    CHECK_THROWS_AS(char_eis(EisSpec{3, chi3, trivial, 1}, 5), std::invalid_argument);
}

TEST_CASE("character Eisenstein coefficients are multiplicative")
{
    auto chi3 = enumerate_chars(3)[1];
    auto chi4 = enumerate_chars(4)[1];
    auto chi5 = quadratic_mod5();
    DirichletChar one(1);
    for (const auto& spec : {EisSpec{4, one, one, 1}, EisSpec{4, chi5, one, 1}, EisSpec{4, one, chi5, 1},
                             EisSpec{4, chi3, chi3, 1}, EisSpec{6, chi3, chi4, 1}}) {
        auto f = char_eis(spec, 60);
        for (long m = 1; m < 8; ++m)
            for (long n = 1; n < 8; ++n)
                if (gcd_l(m, n) == 1)
                    CHECK(f.coeff(m * n) * f.coeff(1) == f.coeff(m) * f.coeff(n));
    }
}

TEST_CASE("Eisenstein bases for Gamma0(N)")
{
    CHECK(eis_basis_gamma0(1, 12, 5).size() == 1);
    CHECK(eis_basis_gamma0(1, 12, 5)[0] == level1_eis(12, 5));
    auto b3 = eis_basis_gamma0(3, 12, 8);
    REQUIRE(b3.size() == 2);
    std::vector<QExp> want3{level1_eis(12, 8), level1_eis(12, 8).dilate(3).truncate(Rational(8))};
    auto both = b3;
    both.insert(both.end(), want3.begin(), want3.end());
    CHECK(rank_of(both, 8) == 2);

    auto b9 = eis_basis_gamma0(9, 4, 12);
    REQUIRE(b9.size() == 4);
    auto chi3 = enumerate_chars(3)[1];
    auto E4 = level1_eis(4, 12);
    QExp twist(1, Rational(12));
    for (long n = 0; n < 12; ++n)
        twist.add_term(Rational(n), chi3(n) * E4.coeff(n));
    std::vector<QExp> want9{E4, E4.dilate(3).truncate(Rational(12)), E4.dilate(9).truncate(Rational(12)), twist};
    CHECK(rank_of(want9, 12) == 4);
    auto all9 = b9;
    all9.insert(all9.end(), want9.begin(), want9.end());
    CHECK(rank_of(all9, 12) == 4);
}

TEST_CASE("Eisenstein basis size equals the cusp count and is independent at Sturm precision")
{
    for (std::int64_t N = 1; N <= 10; ++N) {
        for (int k : {4, 6}) {
            // Sturm bound k * index / 12
            long sturm = static_cast<long>(k * gamma0_index(N) / 12) + 1;
            auto b = eis_basis_gamma0(N, k, sturm);
            std::size_t cusps = 0;
            for (long d : divisors(N))
                cusps += static_cast<std::size_t>(euler_phi(gcd_l(d, N / d)));
            CHECK(b.size() == cusps);
            CHECK(rank_of(b, sturm) == b.size());
        }
    }
}

TEST_CASE("Rankin coefficient identity for tau")
{
    auto D = ramanujan_delta(60);
    CoeffOracle tau = [&](std::int64_t n) { return D.coeff(n); };
    DirichletChar one(1);
    auto s = rankin_sides(tau, 12, one, 3, one, one, 4);
    CHECK(s.lhs == CycNum(-91072));
    CHECK(s.rhs == CycNum(-91072));
    CHECK(rankin_sides(tau, 12, one, 5, one, one, 1).lhs == CycNum(1));
    for (int w : {3, 5, 7})
        for (std::int64_t n = 1; n <= 50; ++n)
            CHECK(rankin_coefficient_check(tau, 12, one, w, one, one, n));
    auto chi3 = enumerate_chars(3)[1];
    auto chi4 = enumerate_chars(4)[1];
    for (std::int64_t n = 1; n <= 50; ++n) {
        CHECK(rankin_coefficient_check(tau, 12, one, 3, chi3, one, n));
        CHECK(rankin_coefficient_check(tau, 12, one, 5, chi3, chi4, n));
    }
}

TEST_CASE("Rankin identity fails for non-multiplicative coefficients")
{
    CoeffOracle junk = [](std::int64_t n) { return CycNum(n * n + 1); };
    DirichletChar one(1);
    bool any_fail = false;
    for (std::int64_t n = 2; n <= 20; ++n)
        any_fail = any_fail || !rankin_coefficient_check(junk, 12, one, 3, one, one, n);
    CHECK(any_fail);
}
