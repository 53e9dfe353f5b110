#include "vvef/linalg.hpp"

#include <stdexcept>

namespace vvef {

CycMatrix::CycMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

CycMatrix::CycMatrix(std::size_t rows, std::size_t cols, std::vector<CycNum> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries))
{
    if (data_.size() != rows * cols)
        throw std::invalid_argument("matrix entry count mismatch");
    normalize_level();
}

void CycMatrix::normalize_level()
{
    long L = 1;
    for (const auto& x : data_)
        L = lcm_l(L, x.level());
    level_ = L;
    for (auto& x : data_)
        if (x.level() != L)
            x = x.embed(L);
}

void CycMatrix::set(std::size_t i, std::size_t j, const CycNum& v)
{
    if (v.level() == level_) {
        data_[i * cols_ + j] = v;
        return;
    }
    if (level_ % v.level() == 0) {
        data_[i * cols_ + j] = v.embed(level_);
        return;
    }
    data_[i * cols_ + j] = v;
    normalize_level();
}

CycMatrix CycMatrix::identity(std::size_t n)
{
    CycMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        m.data_[i * n + i] = CycNum(1);
    return m;
}

CycMatrix CycMatrix::from_rows(const std::vector<CycVector>& rows)
{
    std::size_t r = rows.size(), c = r ? rows[0].size() : 0;
    std::vector<CycNum> e;
    e.reserve(r * c);
    for (const auto& row : rows) {
        if (row.size() != c)
            throw std::invalid_argument("ragged matrix rows");
        e.insert(e.end(), row.begin(), row.end());
    }
    return CycMatrix(r, c, std::move(e));
}

CycMatrix CycMatrix::from_ints(const std::vector<std::vector<long>>& rows)
{
    std::vector<CycVector> r;
    for (const auto& row : rows)
        r.emplace_back(row.begin(), row.end());
    return from_rows(r);
}

CycVector CycMatrix::row(std::size_t i) const
{
    return CycVector(data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_);
}

CycVector CycMatrix::col(std::size_t j) const
{
    CycVector v(rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        v[i] = (*this)(i, j);
    return v;
}

CycMatrix CycMatrix::transpose() const
{
    CycMatrix t(cols_, rows_);
    t.level_ = level_;
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            t.data_[j * rows_ + i] = (*this)(i, j);
    return t;
}

CycMatrix CycMatrix::conj_transpose() const
{
    CycMatrix t(cols_, rows_);
    t.level_ = level_;
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            t.data_[j * rows_ + i] = (*this)(i, j).conj();
    return t;
}

CycMatrix CycMatrix::embed(long L) const
{
    CycMatrix m = *this;
    for (auto& x : m.data_)
        x = x.embed(L);
    m.level_ = L;
    return m;
}

bool CycMatrix::is_zero() const
{
    for (const auto& x : data_)
        if (!x.is_zero())
            return false;
    return true;
}

bool CycMatrix::is_identity() const
{
    if (rows_ != cols_)
        return false;
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) {
            const auto& x = (*this)(i, j);
            if (i == j ? !x.is_one() : !x.is_zero())
                return false;
        }
    return true;
}

std::vector<std::size_t> CycMatrix::column_support() const
{
    std::vector<std::size_t> s(cols_, rows_);
    for (std::size_t j = 0; j < cols_; ++j)
        for (std::size_t i = 0; i < rows_; ++i)
            if (!(*this)(i, j).is_zero()) {
                if (s[j] != rows_)
                    throw std::domain_error("matrix is not monomial");
                s[j] = i;
            }
    return s;
}

bool CycMatrix::is_permutation() const
{
    if (rows_ != cols_)
        return false;
    std::vector<int> rowcount(rows_, 0);
    for (std::size_t j = 0; j < cols_; ++j) {
        int n = 0;
        for (std::size_t i = 0; i < rows_; ++i) {
            const auto& x = (*this)(i, j);
            if (x.is_zero())
                continue;
            if (!x.is_one())
                return false;
            ++n;
            ++rowcount[i];
        }
        if (n != 1)
            return false;
    }
    for (int c : rowcount)
        if (c != 1)
            return false;
    return true;
}

CycMatrix operator*(const CycMatrix& a, const CycMatrix& b)
{
    if (a.cols_ != b.rows_)
        throw std::invalid_argument("matrix product dimension mismatch");
    long L = lcm_l(a.level_, b.level_);
    const CycMatrix& x = a.level_ == L ? a : a.embed(L);
    CycMatrix yb;
    const CycMatrix* y = &b;
    if (b.level_ != L) {
        yb = b.embed(L);
        y = &yb;
    }
    CycMatrix r(a.rows_, b.cols_);
    r.level_ = L;
    for (auto& e : r.data_)
        e = CycNum(Rational(0), L);
    for (std::size_t i = 0; i < a.rows_; ++i)
        for (std::size_t k = 0; k < a.cols_; ++k) {
            const auto& aik = x(i, k);
            if (aik.is_zero())
                continue;
            for (std::size_t j = 0; j < b.cols_; ++j) {
                const auto& bkj = (*y)(k, j);
                if (bkj.is_zero())
                    continue;
                r.data_[i * r.cols_ + j].add_product(aik, bkj);
            }
        }
    return r;
}

CycMatrix operator+(const CycMatrix& a, const CycMatrix& b)
{
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
        throw std::invalid_argument("matrix sum dimension mismatch");
    std::vector<CycNum> e(a.data_.size());
    for (std::size_t i = 0; i < e.size(); ++i)
        e[i] = a.data_[i] + b.data_[i];
    return CycMatrix(a.rows_, a.cols_, std::move(e));
}

CycMatrix operator-(const CycMatrix& a, const CycMatrix& b)
{
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
        throw std::invalid_argument("matrix difference dimension mismatch");
    std::vector<CycNum> e(a.data_.size());
    for (std::size_t i = 0; i < e.size(); ++i)
        e[i] = a.data_[i] - b.data_[i];
    return CycMatrix(a.rows_, a.cols_, std::move(e));
}

CycMatrix operator*(const CycNum& s, const CycMatrix& a)
{
    std::vector<CycNum> e(a.data_.size());
    for (std::size_t i = 0; i < e.size(); ++i)
        e[i] = s * a.data_[i];
    return CycMatrix(a.rows_, a.cols_, std::move(e));
}

CycVector operator*(const CycMatrix& a, const CycVector& v)
{
    if (a.cols_ != v.size())
        throw std::invalid_argument("matrix-vector dimension mismatch");
    CycVector r(a.rows_);
    for (std::size_t i = 0; i < a.rows_; ++i)
        for (std::size_t j = 0; j < a.cols_; ++j) {
            const auto& x = a(i, j);
            if (!x.is_zero() && !v[j].is_zero())
                r[i] += x * v[j];
        }
    return r;
}

bool operator==(const CycMatrix& a, const CycMatrix& b)
{
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
        return false;
    for (std::size_t i = 0; i < a.data_.size(); ++i)
        if (a.data_[i] != b.data_[i])
            return false;
    return true;
}

CycMatrix kron(const CycMatrix& a, const CycMatrix& b)
{
    std::size_t r = a.rows() * b.rows(), c = a.cols() * b.cols();
    std::vector<CycNum> e(r * c);
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            const auto& x = a(i, j);
            if (x.is_zero())
                continue;
            for (std::size_t k = 0; k < b.rows(); ++k)
                for (std::size_t l = 0; l < b.cols(); ++l) {
                    const auto& y = b(k, l);
                    if (!y.is_zero())
                        e[(i * b.rows() + k) * c + j * b.cols() + l] = x * y;
                }
        }
    return CycMatrix(r, c, std::move(e));
}

CycMatrix block_diag(const std::vector<CycMatrix>& blocks)
{
    std::size_t r = 0, c = 0;
    for (const auto& b : blocks) {
        r += b.rows();
        c += b.cols();
    }
    std::vector<CycNum> e(r * c);
    std::size_t r0 = 0, c0 = 0;
    for (const auto& b : blocks) {
        for (std::size_t i = 0; i < b.rows(); ++i)
            for (std::size_t j = 0; j < b.cols(); ++j)
                e[(r0 + i) * c + c0 + j] = b(i, j);
        r0 += b.rows();
        c0 += b.cols();
    }
    return CycMatrix(r, c, std::move(e));
}

CycMatrix mat_pow(const CycMatrix& a, long e)
{
    if (e < 0)
        return mat_pow(a.inverse(), -e);
    CycMatrix r = CycMatrix::identity(a.rows()), base = a;
    while (e > 0) {
        if (e & 1)
            r = r * base;
        e >>= 1;
        if (e)
            base = base * base;
    }
    return r;
}

namespace {

struct Work {
    std::size_t rows, cols;
    long level;
    std::vector<CycNum> d;
    CycNum& at(std::size_t i, std::size_t j) { return d[i * cols + j]; }
};

// Gauss-Jordan, first nonzero pivot in column order
std::vector<std::size_t> gauss_jordan(Work& w)
{
    std::vector<std::size_t> piv;
    std::size_t row = 0;
    for (std::size_t c = 0; c < w.cols && row < w.rows; ++c) {
        std::size_t p = row;
        while (p < w.rows && w.at(p, c).is_zero())
            ++p;
        if (p == w.rows)
            continue;
        if (p != row)
            for (std::size_t j = 0; j < w.cols; ++j)
                std::swap(w.at(p, j), w.at(row, j));
        CycNum inv = w.at(row, c).inverse();
        for (std::size_t j = c; j < w.cols; ++j)
            if (!w.at(row, j).is_zero())
                w.at(row, j) = w.at(row, j) * inv;
        for (std::size_t i = 0; i < w.rows; ++i) {
            if (i == row || w.at(i, c).is_zero())
                continue;
            CycNum t = -w.at(i, c);
            for (std::size_t j = c; j < w.cols; ++j)
                if (!w.at(row, j).is_zero())
                    w.at(i, j).add_product(t, w.at(row, j));
        }
        piv.push_back(c);
        ++row;
    }
    return piv;
}

Work make_work(const CycMatrix& m)
{
    Work w{m.rows(), m.cols(), m.level(), {}};
    w.d.reserve(m.rows() * m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            w.d.push_back(m(i, j).level() == m.level() ? m(i, j) : m(i, j).embed(m.level()));
    for (auto& x : w.d)
        if (x.level() != w.level)
            x = x.embed(w.level);
    return w;
}

}  // namespace

RrefResult rref(const CycMatrix& m)
{
    Work w = make_work(m);
    RrefResult r;
    r.pivots = gauss_jordan(w);
    r.rank = r.pivots.size();
    r.echelon = CycMatrix(w.rows, w.cols, std::move(w.d));
    std::vector<bool> is_piv(m.cols(), false);
    for (auto p : r.pivots)
        is_piv[p] = true;
    for (std::size_t f = 0; f < m.cols(); ++f) {
        if (is_piv[f])
            continue;
        CycVector v(m.cols(), CycNum(Rational(0), m.level()));
        v[f] = CycNum(Rational(1), m.level());
        for (std::size_t i = 0; i < r.pivots.size(); ++i)
            v[r.pivots[i]] = -r.echelon(i, f);
        r.kernel_basis.push_back(std::move(v));
    }
    return r;
}

CycMatrix CycMatrix::inverse() const
{
    if (rows_ != cols_)
        throw std::invalid_argument("inverse of non-square matrix");
    std::size_t n = rows_;
    std::vector<CycNum> e(n * 2 * n, CycNum(Rational(0), level_));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j)
            e[i * 2 * n + j] = (*this)(i, j);
        e[i * 2 * n + n + i] = CycNum(Rational(1), level_);
    }
    Work w{n, 2 * n, level_, std::move(e)};
    auto piv = gauss_jordan(w);
    if (piv.size() < n || piv[n - 1] != n - 1)
        throw std::domain_error("matrix is singular");
    std::vector<CycNum> out(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            out[i * n + j] = w.at(i, n + j);
    return CycMatrix(n, n, std::move(out));
}

SolveResult solve(const CycMatrix& m, const CycVector& rhs)
{
    if (rhs.size() != m.rows())
        throw std::invalid_argument("solve: right-hand side length mismatch");
    std::vector<CycNum> e;
    e.reserve(m.rows() * (m.cols() + 1));
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j)
            e.push_back(m(i, j));
        e.push_back(rhs[i]);
    }
    CycMatrix aug(m.rows(), m.cols() + 1, std::move(e));
    Work w = make_work(aug);
    auto piv = gauss_jordan(w);
    if (!piv.empty() && piv.back() == m.cols())
        return NoSolution{};
    Solution s;
    s.x.assign(m.cols(), CycNum(Rational(0), aug.level()));
    for (std::size_t i = 0; i < piv.size(); ++i)
        s.x[piv[i]] = w.at(i, m.cols());
    s.kernel_dim = m.cols() - piv.size();
    return s;
}

bool EchelonBasis::insert(CycVector row)
{
    if (row.size() != width_)
        throw std::invalid_argument("echelon insert: width mismatch");
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        const CycNum c = row[pivots_[i]];
        if (c.is_zero())
            continue;
        CycNum t = -c;
        for (std::size_t j = pivots_[i]; j < width_; ++j)
            if (!rows_[i][j].is_zero())
                row[j] += t * rows_[i][j];
    }
    std::size_t p = 0;
    while (p < width_ && row[p].is_zero())
        ++p;
    if (p == width_)
        return false;
    CycNum inv = row[p].inverse();
    for (std::size_t j = p; j < width_; ++j)
        if (!row[j].is_zero())
            row[j] = row[j] * inv;
    rows_.push_back(std::move(row));
    pivots_.push_back(p);
    return true;
}

json to_json(const CycVector& v)
{
    json a = json::array();
    for (const auto& x : v)
        a.push_back(to_json(x));
    return a;
}

json to_json(const CycMatrix& m)
{
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i)
        rows.push_back(to_json(m.row(i)));
    return json{{"rows", m.rows()}, {"cols", m.cols()}, {"entries", rows}};
}

CycMatrix matrix_from_json(const json& j)
{
    std::vector<CycVector> rows;
    for (const auto& r : j.at("entries")) {
        CycVector row;
        for (const auto& x : r)
            row.push_back(cyc_from_json(x));
        rows.push_back(std::move(row));
    }
    if (rows.empty())
        return CycMatrix(j.at("rows").get<std::size_t>(), j.at("cols").get<std::size_t>());
    return CycMatrix::from_rows(rows);
}

}  // namespace vvef
