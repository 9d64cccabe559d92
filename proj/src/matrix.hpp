#pragma once

#include "exact.hpp"

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <vector>

namespace toric {

/// Dense row-major matrix over an exact ring. Empty shapes (0 rows or
/// 0 cols) are legal and stand for trivial maps.
template <class T>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
    Matrix(std::initializer_list<std::initializer_list<long>> init);

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool empty() const noexcept { return rows_ == 0 || cols_ == 0; }

    T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::vector<T> row(std::size_t r) const {
        return std::vector<T>(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                              data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
    }
    std::vector<T> col(std::size_t c) const {
        std::vector<T> out(rows_);
        for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
        return out;
    }

    void swap_rows(std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(a, c), (*this)(b, c));
    }
    void swap_cols(std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t r = 0; r < rows_; ++r) std::swap((*this)(r, a), (*this)(r, b));
    }
    /// row[dst] += k * row[src]
    void add_row_multiple(std::size_t dst, std::size_t src, const T& k) {
        for (std::size_t c = 0; c < cols_; ++c) (*this)(dst, c) += k * (*this)(src, c);
    }
    void add_col_multiple(std::size_t dst, std::size_t src, const T& k) {
        for (std::size_t r = 0; r < rows_; ++r) (*this)(r, dst) += k * (*this)(r, src);
    }
    void negate_row(std::size_t r) {
        for (std::size_t c = 0; c < cols_; ++c) (*this)(r, c) = -(*this)(r, c);
    }
    void negate_col(std::size_t c) {
        for (std::size_t r = 0; r < rows_; ++r) (*this)(r, c) = -(*this)(r, c);
    }

    Matrix transpose() const {
        Matrix t(cols_, rows_);
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
        return t;
    }

    /// Keeps the listed columns, in the given order.
    Matrix select_cols(const std::vector<std::size_t>& idx) const {
        Matrix out(rows_, idx.size());
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t k = 0; k < idx.size(); ++k) out(r, k) = (*this)(r, idx[k]);
        return out;
    }
    Matrix select_rows(const std::vector<std::size_t>& idx) const {
        Matrix out(idx.size(), cols_);
        for (std::size_t k = 0; k < idx.size(); ++k)
            for (std::size_t c = 0; c < cols_; ++c) out(k, c) = (*this)(idx[k], c);
        return out;
    }

    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        Matrix out(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                if (a(i, k) == 0) continue;
                for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) += a(i, k) * b(k, j);
            }
        return out;
    }

    const std::vector<T>& data() const noexcept { return data_; }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

template <class T>
Matrix<T>::Matrix(std::initializer_list<std::initializer_list<long>> init)
    : rows_(init.size()), cols_(init.size() ? init.begin()->size() : 0) {
    data_.reserve(rows_ * cols_);
    for (const auto& r : init) {
        if (r.size() != cols_) throw std::invalid_argument("ragged matrix literal");
        for (long v : r) data_.emplace_back(v);
    }
}

using IntegerMatrix = Matrix<Integer>;
using RationalMatrix = Matrix<Rational>;
using RationalVector = std::vector<Rational>;
using IntegerVector = std::vector<Integer>;

RationalMatrix to_rational(const IntegerMatrix& m);

/// Matrix-vector product M v.
RationalVector mat_vec(const RationalMatrix& m, const RationalVector& v);
IntegerVector mat_vec(const IntegerMatrix& m, const IntegerVector& v);

/// Reduced row echelon form; `pivots` receives pivot columns.
RationalMatrix rref(RationalMatrix m, std::vector<std::size_t>* pivots = nullptr);

std::size_t rank(const RationalMatrix& m);
inline std::size_t rank(const IntegerMatrix& m) { return rank(to_rational(m)); }

/// Exact determinant of a square matrix (rational elimination).
Rational determinant(const RationalMatrix& m);
Integer determinant(const IntegerMatrix& m);

/// Rows form a basis of {v : M v = 0} over Q, read off the RREF.
RationalMatrix rational_kernel(const RationalMatrix& m);

/// Inverse of a square nonsingular matrix; nullopt when singular.
std::optional<RationalMatrix> inverse(const RationalMatrix& m);

/// Solution set {x : M x = rhs} as particular + span(kernel rows).
struct AffineSolution {
    RationalVector particular;
    RationalMatrix kernel;  // rows
};
std::optional<AffineSolution> solve_affine(const RationalMatrix& m, const RationalVector& rhs);

}  // namespace toric
