#ifndef DRAZIN_MATRIX_HPP
#define DRAZIN_MATRIX_HPP

#include "drazin/gaussian_rational.hpp"

#include <cstddef>
#include <deque>
#include <initializer_list>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace drazin {

/// Raised when operand dimensions do not fit the requested operation.
class ShapeError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Dense row-major matrix over the Gaussian rationals.
///
/// Zero-row and zero-column matrices are legal values; basis routines return
/// them for trivial ranges and kernels.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols);
    Matrix(std::initializer_list<std::initializer_list<GaussianRational>> rows);

    static Matrix identity(std::size_t n);
    static Matrix zero(std::size_t rows, std::size_t cols) { return {rows, cols}; }
    static Matrix diagonal(const std::vector<GaussianRational>& diag);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool is_square() const noexcept { return rows_ == cols_; }
    bool empty() const noexcept { return data_.empty(); }

    const GaussianRational& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
    GaussianRational& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }

    const std::vector<GaussianRational>& entries() const noexcept { return data_; }

    bool is_zero() const noexcept;
    bool is_real() const noexcept;

    /// Copy of the rows [r0, r0+nr) x cols [c0, c0+nc).
    Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
    /// Overwrites the block whose top-left corner is (r0, c0) with src.
    void set_block(std::size_t r0, std::size_t c0, const Matrix& src);

    Matrix transpose() const;
    Matrix conj_transpose() const;

    Matrix& operator+=(const Matrix& rhs);
    Matrix& operator-=(const Matrix& rhs);

    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

    /// "rows x cols"
    std::string shape() const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<GaussianRational> data_;
};

Matrix operator+(Matrix lhs, const Matrix& rhs);
Matrix operator-(Matrix lhs, const Matrix& rhs);
Matrix operator-(const Matrix& a);
Matrix operator*(const Matrix& a, const Matrix& b);
Matrix operator*(const GaussianRational& s, const Matrix& a);

/// A^e with A^0 = I.
Matrix power(const Matrix& a, std::size_t exponent);

/// Product of a chain left to right; all shapes are validated.
Matrix product(std::initializer_list<const Matrix*> factors);

/// [a | b] and [a ; b].
Matrix hstack(const Matrix& a, const Matrix& b);
Matrix vstack(const Matrix& a, const Matrix& b);
/// [[a, b], [c, d]]; every block must agree with its neighbours.
Matrix block2x2(const Matrix& a, const Matrix& b, const Matrix& c, const Matrix& d);

std::ostream& operator<<(std::ostream& os, const Matrix& m);

/// Successive powers of a fixed square base, computed on demand and memoized.
/// References returned by operator[] stay valid for the object's lifetime.
class PowerSequence {
public:
    explicit PowerSequence(Matrix base);
    const Matrix& operator[](std::size_t exponent);
    const Matrix& base() const noexcept { return powers_[1]; }

private:
    std::deque<Matrix> powers_;
};

}  // namespace drazin

#endif  // DRAZIN_MATRIX_HPP
