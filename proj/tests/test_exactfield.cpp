#include "vvef/exactfield.hpp"
#include "vvef/linalg.hpp"

#include <doctest.h>

#include <random>

using namespace vvef;

namespace {

CycNum random_cyc(std::mt19937& rng, long L)
{
    auto f = cyclo_field(L);
    std::uniform_int_distribution<long> num(-20, 20), den(1, 7);
    std::vector<Rational> c;
    for (std::size_t i = 0; i < f->phi; ++i)
        c.push_back(make_rational(num(rng), den(rng)));
    return CycNum(L, c);
}

}  // namespace

TEST_CASE("integer helpers")
{
    CHECK(gcd_l(12, 18) == 6);
    CHECK(gcd_l(-12, 18) == 6);
    CHECK(lcm_l(4, 6) == 12);
    CHECK(euler_phi(1) == 1);
    CHECK(euler_phi(12) == 4);
    CHECK(euler_phi(97) == 96);
    CHECK(divisors(12) == std::vector<long>{1, 2, 3, 4, 6, 12});
    CHECK(mod_floor(-7, 3) == 2);
    auto fz = factorize(360);
    CHECK(fz == std::vector<std::pair<long, int>>{{2, 3}, {3, 2}, {5, 1}});
}

TEST_CASE("euler phi agrees with a brute-force count")
{
    for (long n = 1; n <= 200; ++n) {
        long cnt = 0;
        for (long a = 1; a <= n; ++a)
            cnt += gcd_l(a, n) == 1;
        CHECK(euler_phi(n) == cnt);
    }
}

TEST_CASE("rational parsing")
{
    CHECK(parse_rational("-1883840/19683") == Rational(-1883840, 19683));
    CHECK(parse_rational("4/6") == make_rational(2, 3));
    CHECK(parse_rational("7") == 7);
    CHECK_THROWS(parse_rational("x/3"));
    CHECK_THROWS(parse_rational("1/0"));
}

TEST_CASE("cyclotomic polynomials")
{
    CHECK(cyclo_field(1)->poly == std::vector<long>{-1, 1});
    CHECK(cyclo_field(3)->poly == std::vector<long>{1, 1, 1});
    CHECK(cyclo_field(4)->poly == std::vector<long>{1, 0, 1});
    CHECK(cyclo_field(12)->poly == std::vector<long>{1, 0, -1, 0, 1});
    for (long L : {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 12, 15, 20, 24, 30})
        CHECK(cyclo_field(L)->phi == static_cast<std::size_t>(euler_phi(L)));
}

TEST_CASE("roots of unity")
{
    auto z3 = CycNum::zeta(3);
    CHECK(z3 * z3 + z3 + CycNum(1) == CycNum(0));
    CHECK(CycNum::zeta(4) * CycNum::zeta(4) == CycNum(-1));
    CHECK(CycNum::zeta(6) == -(z3 * z3));
    for (long L : {1, 2, 3, 5, 8, 9, 12, 15}) {
        auto z = CycNum::zeta(L);
        CycNum p(1);
        for (long i = 0; i < L; ++i)
            p *= z;
        CHECK(p.is_one());
        // sum of all L-th roots of unity vanishes for L > 1
        CycNum s(0);
        for (long i = 0; i < L; ++i)
            s += CycNum::zeta(L, i);
        CHECK((L == 1 ? s.is_one() : s.is_zero()));
    }
    CHECK(CycNum::zeta(12, 4) == z3);
    CHECK(CycNum::zeta(5, -1) == CycNum::zeta(5, 4));
}

TEST_CASE("field axioms hold on random elements")
{
    std::mt19937 rng(12345);
    for (long L : {3, 4, 5, 7, 8, 12}) {
        for (int it = 0; it < 25; ++it) {
            auto a = random_cyc(rng, L), b = random_cyc(rng, L), c = random_cyc(rng, L);
            CHECK(a * (b + c) == a * b + a * c);
            CHECK((a * b) * c == a * (b * c));
            CHECK(a * b == b * a);
            CHECK(a - a == CycNum(0));
            if (!a.is_zero()) {
                CHECK((a * a.inverse()).is_one());
                CHECK((b / a) * a == b);
            }
            CHECK(conj(conj(a)) == a);
            CHECK(conj(a * b) == conj(a) * conj(b));
            CHECK(a.embed(2 * L).demote() == a);
            CHECK(a.embed(3 * L) * b == a * b);
            CycNum f = b;
            f.add_product(a, c);
            CHECK(f == b + a * c);
            CHECK(cyc_arith(a, b, CycOp::sub) == a - b);
            CHECK(cyc_from_json(to_json(a)) == a);
        }
    }
}

TEST_CASE("galois automorphisms are ring homomorphisms")
{
    std::mt19937 rng(7);
    for (long L : {5, 8, 12}) {
        for (long u = 1; u < L; ++u) {
            if (gcd_l(u, L) != 1)
                continue;
            auto a = random_cyc(rng, L), b = random_cyc(rng, L);
            CHECK((a * b).galois(u) == a.galois(u) * b.galois(u));
            CHECK((a + b).galois(u) == a.galois(u) + b.galois(u));
            CHECK(CycNum::zeta(L).galois(u) == CycNum::zeta(L, u));
        }
        auto c = random_cyc(rng, L);
        CHECK(c.galois(L - 1) == conj(c));
    }
}

TEST_CASE("mixed levels compare after embedding")
{
    auto z3 = CycNum::zeta(3);
    auto z4 = CycNum::zeta(4);
    auto prod = z3 * z4;
    CHECK(prod.level() % 12 == 0);
    CHECK(prod == CycNum::zeta(12, 7));
    CHECK(CycNum(make_rational(1, 2)) == CycNum(make_rational(1, 2), 7));
    CHECK(CycNum(3).is_rational());
    CHECK_FALSE(z3.is_rational());
    CHECK((z3 + conj(z3)).is_rational());
    CHECK((z3 + conj(z3)).rational_value() == -1);
}

TEST_CASE("text rendering")
{
    CHECK(to_text(CycNum(0)) == "0");
    CHECK(to_text(CycNum(make_rational(-3, 4))) == "(-3/4)");
    CHECK(to_text(CycNum(make_rational(2, 1)) * CycNum::zeta(3)) == "(2)*z3");
}

TEST_CASE("rref, rank and kernel")
{
    auto m = CycMatrix::from_ints({{1, 2, 3}, {2, 4, 6}, {1, 0, 1}});
    auto r = rref(m);
    CHECK(r.rank == 2);
    REQUIRE(r.kernel_basis.size() == 1);
    auto v = m * r.kernel_basis[0];
    for (const auto& x : v)
        CHECK(x.is_zero());
    CHECK(rref(CycMatrix::identity(4)).rank == 4);
    CHECK(rref(CycMatrix(3, 5)).rank == 0);
}

TEST_CASE("rank over Q(zeta3) differs from rank over Q")
{
    // rows (1, z3) and (z3, z3^2) are proportional over Q(zeta3)
    auto z = CycNum::zeta(3);
    auto m = CycMatrix::from_rows({{CycNum(1), z}, {z, z * z}});
    CHECK(rref(m).rank == 1);
}

TEST_CASE("solve")
{
    auto m = CycMatrix::from_ints({{2, 1}, {1, 3}});
    auto s = solve(m, {CycNum(5), CycNum(10)});
    REQUIRE(std::holds_alternative<Solution>(s));
    const auto& x = std::get<Solution>(s);
    CHECK(x.x[0] == CycNum(1));
    CHECK(x.x[1] == CycNum(3));
    CHECK(x.kernel_dim == 0);

    auto sing = CycMatrix::from_ints({{1, 1}, {1, 1}});
    CHECK(std::holds_alternative<NoSolution>(solve(sing, {CycNum(1), CycNum(2)})));
    auto under = solve(sing, {CycNum(2), CycNum(2)});
    REQUIRE(std::holds_alternative<Solution>(under));
    CHECK(std::get<Solution>(under).kernel_dim == 1);
}

TEST_CASE("random solves reproduce the right-hand side")
{
    std::mt19937 rng(99);
    for (int it = 0; it < 20; ++it) {
        std::size_t n = 1 + it % 4;
        std::vector<CycVector> rows(n);
        for (auto& r : rows)
            for (std::size_t j = 0; j < n; ++j)
                r.push_back(random_cyc(rng, 3));
        auto m = CycMatrix::from_rows(rows);
        CycVector x;
        for (std::size_t j = 0; j < n; ++j)
            x.push_back(random_cyc(rng, 3));
        auto b = m * x;
        auto s = solve(m, b);
        REQUIRE(std::holds_alternative<Solution>(s));
        CHECK(m * std::get<Solution>(s).x == b);
    }
}

TEST_CASE("matrix algebra")
{
    auto a = CycMatrix::from_ints({{1, 2}, {3, 4}});
    CHECK(a * a.inverse() == CycMatrix::identity(2));
    CHECK(mat_pow(a, 3) == a * a * a);
    CHECK(mat_pow(a, -1) == a.inverse());
    CHECK(kron(CycMatrix::identity(2), a).rows() == 4);
    CHECK(kron(a, CycMatrix::identity(1)) == a);
    CHECK(block_diag({a, a})(2, 3) == CycNum(2));
    CHECK(CycMatrix::from_ints({{0, 1}, {1, 0}}).is_permutation());
    CHECK(matrix_from_json(to_json(a)) == a);
    auto z = CycNum::zeta(3);
    auto b = CycMatrix::from_rows({{z, CycNum(0)}, {CycNum(1), z * z}});
    CHECK(b.conj_transpose()(0, 0) == conj(z));
    CHECK(b.conj_transpose()(0, 1) == CycNum(1));
}

TEST_CASE("echelon basis rank accumulation")
{
    EchelonBasis eb(3);
    CHECK(eb.insert({CycNum(1), CycNum(2), CycNum(3)}));
    CHECK_FALSE(eb.insert({CycNum(2), CycNum(4), CycNum(6)}));
    CHECK(eb.insert({CycNum(0), CycNum(1), CycNum(0)}));
    CHECK_FALSE(eb.insert({CycNum(1), CycNum(3), CycNum(3)}));
    CHECK(eb.insert({CycNum(0), CycNum(0), CycNum::zeta(3)}));
    CHECK(eb.rank() == 3);
    CHECK_FALSE(eb.insert({CycNum(0), CycNum(0), CycNum(0)}));
}
