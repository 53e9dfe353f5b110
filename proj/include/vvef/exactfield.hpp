#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

namespace vvef {

using Integer = mpz_class;
using Rational = mpq_class;
using json = nlohmann::json;

Rational make_rational(long num, long den = 1);
Rational parse_rational(std::string_view s);

long gcd_l(long a, long b);
long lcm_l(long a, long b);
long euler_phi(long n);
std::vector<long> divisors(long n);
std::vector<std::pair<long, int>> factorize(long n);
long mod_floor(long a, long m);

// Reduction data for Q(zeta_L): Phi_L and zeta^j mod Phi_L for 0 <= j < L.
struct CycloField {
    long level = 1;
    std::size_t phi = 1;
    std::vector<long> poly;                 // Phi_L, low degree first, monic
    std::vector<std::vector<long>> powers;  // powers[j] = zeta^j reduced
};

std::shared_ptr<const CycloField> cyclo_field(long L);

// Element of Q(zeta_L) as coefficients of 1, zeta, ..., zeta^(phi(L)-1).
class CycNum {
public:
    CycNum();
    CycNum(long v);  // NOLINT(google-explicit-constructor)
    CycNum(const Rational& r, long level = 1);  // NOLINT
    CycNum(long level, std::vector<Rational> coeffs);

    static CycNum zeta(long L, long e = 1);
    // e_M(x) = exp(2 pi i x / M)
    static CycNum root_of_unity(long M, long x) { return zeta(M, x); }

    long level() const { return level_; }
    const std::vector<Rational>& coeffs() const { return coeffs_; }

    bool is_zero() const;
    bool is_rational() const;
    bool is_one() const;
    Rational rational_value() const;

    CycNum embed(long L2) const;
    CycNum demote() const;
    CycNum conj() const;
    CycNum inverse() const;
    // zeta_L -> zeta_L^u for gcd(u, L) = 1
    CycNum galois(long u) const;

    CycNum& operator+=(const CycNum& o);
    CycNum& operator-=(const CycNum& o);
    CycNum& operator*=(const CycNum& o);
    CycNum& operator/=(const CycNum& o);

    friend CycNum operator+(CycNum a, const CycNum& b) { return a += b; }
    friend CycNum operator-(CycNum a, const CycNum& b) { return a -= b; }
    friend CycNum operator*(const CycNum& a, const CycNum& b);
    friend CycNum operator/(CycNum a, const CycNum& b) { return a /= b; }
    CycNum operator-() const;

    friend bool operator==(const CycNum& a, const CycNum& b);
    friend bool operator!=(const CycNum& a, const CycNum& b) { return !(a == b); }

    // fused this += a * b
    void add_product(const CycNum& a, const CycNum& b);
    void scale(const Rational& r);

private:
    long level_;
    std::vector<Rational> coeffs_;
};

enum class CycOp { add, sub, mul, div };
CycNum cyc_arith(const CycNum& a, const CycNum& b, CycOp op);

inline CycNum conj(const CycNum& a) { return a.conj(); }
inline CycNum embed(const CycNum& a, long L2) { return a.embed(L2); }

std::string to_text(const CycNum& a);
json to_json(const CycNum& a);
CycNum cyc_from_json(const json& j);

}  // namespace vvef
