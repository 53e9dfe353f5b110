#pragma once

#include "vvef/exactfield.hpp"

#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace vvef {

// Integer 2x2 matrix. Entries are 64-bit; products are overflow-checked.
struct Mat2 {
    std::int64_t a = 1, b = 0, c = 0, d = 1;

    static Mat2 identity() { return {1, 0, 0, 1}; }
    static Mat2 S() { return {0, -1, 1, 0}; }
    static Mat2 T() { return {1, 1, 0, 1}; }
    static Mat2 Tinv() { return {1, -1, 0, 1}; }
    static Mat2 diag(std::int64_t x, std::int64_t y) { return {x, 0, 0, y}; }

    std::int64_t det() const;
    // inverse of a determinant-one matrix
    Mat2 inverse() const;
    // adjugate (d -b; -c a)
    Mat2 adjugate() const { return {d, -b, -c, a}; }
    Mat2 operator-() const { return {-a, -b, -c, -d}; }

    friend Mat2 operator*(const Mat2& x, const Mat2& y);
    friend bool operator==(const Mat2& x, const Mat2& y) = default;
};

std::string to_string(const Mat2& m);
json to_json(const Mat2& m);

std::int64_t ext_gcd(std::int64_t a, std::int64_t b, std::int64_t& x, std::int64_t& y);
std::int64_t mod_inverse(std::int64_t a, std::int64_t m);

struct DeltaElt {
    std::int64_t a = 1, b = 0, d = 1;

    std::int64_t det() const { return a * d; }
    Mat2 matrix() const { return {a, b, 0, d}; }
    friend bool operator==(const DeltaElt& x, const DeltaElt& y) = default;
};

json to_json(const DeltaElt& m);

// Delta_M ordered by d ascending then b ascending.
const std::vector<DeltaElt>& delta_set(std::int64_t M);
std::size_t delta_position(const DeltaElt& m);
std::int64_t sigma1(std::int64_t M);

// m = J * (a b; 0 d) with J in SL2(Z), d > 0, 0 <= b < d.
std::pair<Mat2, DeltaElt> hermite_reduce(const Mat2& m);

struct HeckeReduction {
    Mat2 I_m_gamma;
    DeltaElt m_bar;
};
HeckeReduction hecke_reduce(const DeltaElt& m, const Mat2& gamma);

DeltaElt adjoint_matrix(const DeltaElt& m);

enum class Gen { S, T };
struct WordLetter {
    Gen g;
    std::int64_t e;  // exponent; S letters always have e = 1
};
using STWord = std::vector<WordLetter>;

STWord st_word(const Mat2& gamma);
Mat2 eval_word(const STWord& w);

std::int64_t gamma0_index(std::int64_t N);

struct CosetReduction {
    std::size_t rep_index;
    Mat2 iota;
};

// Right cosets Gamma0(N) \ SL2(Z) indexed by P^1(Z/N).
class CosetTable {
public:
    explicit CosetTable(std::int64_t N);

    std::int64_t level() const { return N_; }
    std::size_t size() const { return reps_.size(); }
    const std::vector<Mat2>& reps() const { return reps_; }
    const Mat2& rep(std::size_t i) const { return reps_[i]; }
    // normalized (c : d) of each rep
    const std::vector<std::pair<std::int64_t, std::int64_t>>& classes() const { return classes_; }

    std::size_t index_of(std::int64_t c, std::int64_t d) const;
    CosetReduction reduce(const Mat2& gamma) const;

private:
    std::int64_t N_;
    std::vector<Mat2> reps_;
    std::vector<std::pair<std::int64_t, std::int64_t>> classes_;
    std::vector<std::int32_t> lookup_;  // (c mod N) * N + (d mod N) -> index or -1
};

std::shared_ptr<const CosetTable> p1_cosets(std::int64_t N);
CosetReduction coset_reduce(const Mat2& gamma, std::int64_t N);

bool in_gamma0(const Mat2& g, std::int64_t N);

// any lift of a determinant-one matrix mod N to SL2(Z)
Mat2 lift_sl2(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d, std::int64_t N);

// gamma = S mod M, gamma = I mod N/M, for M || N
Mat2 gamma_MN(std::int64_t M, std::int64_t N);

// orbits of the right SL2(Z)-action on Delta_M
struct DeltaOrbit {
    std::int64_t a;                       // elementary divisor, a^2 | M
    std::vector<std::size_t> members;     // positions in delta_set(M)
    // witness[i] = position in delta_set(M) of (M/a, 0, a) * rep_i of Gamma0(M/a^2)
    std::vector<std::size_t> witness;
};
std::vector<DeltaOrbit> orbit_decomposition(std::int64_t M);

}  // namespace vvef
