#pragma once

#include "vvef/exactfield.hpp"

#include <cstddef>
#include <variant>
#include <vector>

namespace vvef {

using CycVector = std::vector<CycNum>;

class CycMatrix {
public:
    CycMatrix() = default;
    CycMatrix(std::size_t rows, std::size_t cols);
    CycMatrix(std::size_t rows, std::size_t cols, std::vector<CycNum> entries);

    static CycMatrix identity(std::size_t n);
    static CycMatrix from_rows(const std::vector<CycVector>& rows);
    static CycMatrix from_ints(const std::vector<std::vector<long>>& rows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    long level() const { return level_; }

    const CycNum& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
    // setter keeps the common-level invariant
    void set(std::size_t i, std::size_t j, const CycNum& v);

    CycVector row(std::size_t i) const;
    CycVector col(std::size_t j) const;

    CycMatrix transpose() const;
    CycMatrix conj_transpose() const;
    CycMatrix embed(long L) const;
    CycMatrix inverse() const;

    bool is_zero() const;
    bool is_identity() const;
    bool is_permutation() const;
    // for monomial matrices: the row index of the nonzero entry in each column
    std::vector<std::size_t> column_support() const;

    friend CycMatrix operator*(const CycMatrix& a, const CycMatrix& b);
    friend CycMatrix operator+(const CycMatrix& a, const CycMatrix& b);
    friend CycMatrix operator-(const CycMatrix& a, const CycMatrix& b);
    friend CycMatrix operator*(const CycNum& s, const CycMatrix& a);
    friend CycVector operator*(const CycMatrix& a, const CycVector& v);
    friend bool operator==(const CycMatrix& a, const CycMatrix& b);
    friend bool operator!=(const CycMatrix& a, const CycMatrix& b) { return !(a == b); }

private:
    std::size_t rows_ = 0, cols_ = 0;
    long level_ = 1;
    std::vector<CycNum> data_;
    void normalize_level();
};

CycMatrix kron(const CycMatrix& a, const CycMatrix& b);
CycMatrix block_diag(const std::vector<CycMatrix>& blocks);
CycMatrix mat_pow(const CycMatrix& a, long e);

struct RrefResult {
    CycMatrix echelon;
    std::size_t rank = 0;
    std::vector<std::size_t> pivots;
    std::vector<CycVector> kernel_basis;
};

RrefResult rref(const CycMatrix& m);

struct Solution {
    CycVector x;
    std::size_t kernel_dim = 0;
};
struct NoSolution {};
using SolveResult = std::variant<Solution, NoSolution>;

SolveResult solve(const CycMatrix& m, const CycVector& rhs);

// Incremental row echelon basis used for rank accumulation.
class EchelonBasis {
public:
    explicit EchelonBasis(std::size_t width) : width_(width) {}
    // returns true if the row was independent of the current basis
    bool insert(CycVector row);
    std::size_t rank() const { return rows_.size(); }
    std::size_t width() const { return width_; }

private:
    std::size_t width_;
    std::vector<CycVector> rows_;
    std::vector<std::size_t> pivots_;
};

json to_json(const CycMatrix& m);
CycMatrix matrix_from_json(const json& j);
json to_json(const CycVector& v);

}  // namespace vvef
