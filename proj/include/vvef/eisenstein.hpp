#pragma once

#include "vvef/characters.hpp"
#include "vvef/qseries.hpp"

#include <functional>

namespace vvef {

Rational bernoulli(int n);
// B_{k,chi} = N^{k-1} sum_{a=1}^{N} chi(a) B_k(a/N)
CycNum gen_bernoulli(int k, const DirichletChar& chi);

// 1 - (2k/B_k) sum sigma_{k-1}(n) q^n, exponents < prec
QExp level1_eis(int k, long prec);

struct EisSpec {
    int k;
    DirichletChar delta;
    DirichletChar eps;
    std::int64_t t = 1;
};

// c0 + sum sigma_{k-1,delta,eps}(n) q^{tn}, exponents < prec
QExp char_eis(const EisSpec& spec, long prec);

QExp eis_basis_member(std::int64_t u, const DirichletChar& psi, std::int64_t t, int k, long prec);
std::vector<QExp> eis_basis_gamma0(std::int64_t N, int k, long prec);

// q prod (1 - q^n)^24
QExp ramanujan_delta(long prec);

using CoeffOracle = std::function<CycNum(std::int64_t)>;

struct RankinSides {
    CycNum lhs, rhs;
};

RankinSides rankin_sides(const CoeffOracle& c, int k, const DirichletChar& chi, int w, const DirichletChar& delta,
                         const DirichletChar& eps, std::int64_t n);
bool rankin_coefficient_check(const CoeffOracle& c, int k, const DirichletChar& chi, int w,
                              const DirichletChar& delta, const DirichletChar& eps, std::int64_t n);

}  // namespace vvef
