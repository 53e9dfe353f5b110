#pragma once

#include "vvef/exactfield.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

namespace vvef {

class DirichletChar {
public:
    // trivial character mod N
    explicit DirichletChar(std::int64_t N = 1);
    // from discrete-log exponents: chi(a) = zeta_order^{exps[a]}, -1 marks non-units
    DirichletChar(std::int64_t N, long order, std::vector<long> exps, std::size_t index = 0);

    std::int64_t modulus() const { return N_; }
    // values lie in Q(zeta_order)
    long order() const { return order_; }
    std::size_t index() const { return index_; }

    bool is_trivial() const;
    std::int64_t conductor() const;
    int parity() const;  // chi(-1)
    bool is_primitive() const { return conductor() == N_; }

    // exponent e with chi(a) = zeta_order^e, or nullopt when gcd(a, N) > 1
    std::optional<long> exponent(std::int64_t a) const;
    CycNum operator()(std::int64_t a) const;
    CycNum value(std::int64_t a) const { return (*this)(a); }

    DirichletChar conj() const;
    // same character viewed modulo a multiple of N
    DirichletChar extend(std::int64_t M) const;
    // product of characters to the lcm modulus
    friend DirichletChar operator*(const DirichletChar& a, const DirichletChar& b);
    friend bool operator==(const DirichletChar& a, const DirichletChar& b);

    // the primitive character inducing this one
    DirichletChar primitive() const;

    static DirichletChar from_function(std::int64_t N, const std::function<std::optional<long>(std::int64_t)>& e,
                                       long order);

private:
    std::int64_t N_;
    long order_;
    std::vector<long> exps_;
    std::size_t index_ = 0;
    void reduce_order();
};

std::vector<DirichletChar> enumerate_chars(std::int64_t N);

// G(eps, e_M(b)) = sum_{a mod M} eps(a) e_M(a b)
CycNum gauss_sum(const DirichletChar& eps, std::int64_t b);

// sum_{d | n} delta(d) eps(n/d) d^w
CycNum sigma_w(std::int64_t n, int w, const DirichletChar& delta, const DirichletChar& eps);

json to_json(const DirichletChar& chi);

}  // namespace vvef
