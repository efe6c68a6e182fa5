#pragma once

#include "moduli/numeric.hpp"

#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <vector>

namespace moduli {

// Small dense matrix with value semantics. Used with exact scalar types
// (Int, Rational, long long); everything here is elementary row-by-row
// arithmetic, no decompositions beyond fraction-free elimination below.
template <typename T>
class Matrix {
public:
    Matrix() : rows_(0), cols_(0) {}
    Matrix(std::size_t rows, std::size_t cols, const T& fill = T(0))
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    Matrix(std::initializer_list<std::initializer_list<T>> init) {
        rows_ = init.size();
        cols_ = rows_ ? init.begin()->size() : 0;
        data_.reserve(rows_ * cols_);
        for (const auto& row : init) {
            if (row.size() != cols_) throw std::invalid_argument("ragged matrix initializer");
            for (const auto& v : row) data_.push_back(v);
        }
    }

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    bool operator==(const Matrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
    }
    bool operator!=(const Matrix& o) const { return !(*this == o); }

    Matrix operator+(const Matrix& o) const {
        check_same_shape(o);
        Matrix r = *this;
        for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] += o.data_[i];
        return r;
    }

    Matrix operator-(const Matrix& o) const {
        check_same_shape(o);
        Matrix r = *this;
        for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] -= o.data_[i];
        return r;
    }

    Matrix operator-() const {
        Matrix r = *this;
        for (auto& v : r.data_) v = -v;
        return r;
    }

    Matrix operator*(const Matrix& o) const {
        if (cols_ != o.rows_) throw std::invalid_argument("matrix product shape mismatch");
        Matrix r(rows_, o.cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t k = 0; k < cols_; ++k) {
                const T& aik = (*this)(i, k);
                if (aik == T(0)) continue;
                for (std::size_t j = 0; j < o.cols_; ++j) r(i, j) += aik * o(k, j);
            }
        return r;
    }

    Matrix operator*(const T& s) const {
        Matrix r = *this;
        for (auto& v : r.data_) v *= s;
        return r;
    }

    Matrix transpose() const {
        Matrix r(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
        return r;
    }

    T trace() const {
        if (rows_ != cols_) throw std::invalid_argument("trace of non-square matrix");
        T t(0);
        for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
        return t;
    }

    bool is_zero() const {
        for (const auto& v : data_)
            if (v != T(0)) return false;
        return true;
    }

    bool is_symmetric() const {
        if (rows_ != cols_) return false;
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = i + 1; j < cols_; ++j)
                if ((*this)(i, j) != (*this)(j, i)) return false;
        return true;
    }

    template <typename U>
    Matrix<U> cast() const {
        Matrix<U> r(rows_, cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) r(i, j) = U((*this)(i, j));
        return r;
    }

private:
    void check_same_shape(const Matrix& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_)
            throw std::invalid_argument("matrix shape mismatch");
    }

    std::size_t rows_, cols_;
    std::vector<T> data_;
};

// v^t * M * w for column vectors given as std::vector.
template <typename T>
T bilinear(const std::vector<T>& v, const Matrix<T>& m, const std::vector<T>& w) {
    if (v.size() != m.rows() || w.size() != m.cols())
        throw std::invalid_argument("bilinear form shape mismatch");
    T acc(0);
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (v[i] == T(0)) continue;
        T row(0);
        for (std::size_t j = 0; j < w.size(); ++j) row += m(i, j) * w[j];
        acc += v[i] * row;
    }
    return acc;
}

// Fraction-free (Bareiss) elimination over the integers: exact rank and,
// for square input, the determinant as the last full-rank pivot.
struct BareissResult {
    std::size_t rank = 0;
    Int det = 0;  // meaningful only for square matrices; 0 if rank-deficient
};

inline BareissResult bareiss_eliminate(Matrix<Int> m) {
    const std::size_t rows = m.rows(), cols = m.cols();
    BareissResult res;
    Int prev(1);
    int sign = 1;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t pivot = r;
        while (pivot < rows && m(pivot, c) == 0) ++pivot;
        if (pivot == rows) continue;
        if (pivot != r) {
            for (std::size_t j = c; j < cols; ++j) std::swap(m(pivot, j), m(r, j));
            sign = -sign;
        }
        for (std::size_t i = r + 1; i < rows; ++i) {
            for (std::size_t j = c + 1; j < cols; ++j)
                m(i, j) = (m(r, c) * m(i, j) - m(i, c) * m(r, j)) / prev;
            m(i, c) = 0;
        }
        prev = m(r, c);
        ++r;
    }
    res.rank = r;
    if (rows == cols) res.det = (r == rows) ? Int(sign) * prev : Int(0);
    return res;
}

inline std::size_t rank_of(const Matrix<Int>& m) { return bareiss_eliminate(m).rank; }

inline Int det_of(const Matrix<Int>& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("determinant of non-square matrix");
    return bareiss_eliminate(m).det;
}

// Rank of a rational matrix: clear denominators row by row (rank is
// invariant under row scaling), then run Bareiss over Int.
inline std::size_t rank_of(const Matrix<Rational>& m) {
    Matrix<Int> z(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Int lcm(1);
        for (std::size_t j = 0; j < m.cols(); ++j) {
            Int d = denominator(m(i, j));
            lcm = lcm / gcd_int(lcm, d) * d;
        }
        for (std::size_t j = 0; j < m.cols(); ++j) {
            const Rational& x = m(i, j);
            z(i, j) = numerator(x) * (lcm / denominator(x));
        }
    }
    return rank_of(z);
}

}  // namespace moduli
