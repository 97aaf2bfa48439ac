#include "drazin/matrix.hpp"

#include <ostream>
#include <sstream>

namespace drazin {

namespace {

[[noreturn]] void shape_mismatch(const char* op, const Matrix& a, const Matrix& b) {
    throw ShapeError(std::string(op) + ": shape mismatch " + a.shape() + " vs " + b.shape());
}

}  // namespace

Matrix::Matrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {}

Matrix::Matrix(std::initializer_list<std::initializer_list<GaussianRational>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& row : rows) {
        if (row.size() != cols_) {
            throw ShapeError("ragged initializer list");
        }
        data_.insert(data_.end(), row.begin(), row.end());
    }
}

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        m(i, i) = 1;
    }
    return m;
}

Matrix Matrix::diagonal(const std::vector<GaussianRational>& diag) {
    Matrix m(diag.size(), diag.size());
    for (std::size_t i = 0; i < diag.size(); ++i) {
        m(i, i) = diag[i];
    }
    return m;
}

bool Matrix::is_zero() const noexcept {
    for (const auto& z : data_) {
        if (!z.is_zero()) {
            return false;
        }
    }
    return true;
}

bool Matrix::is_real() const noexcept {
    for (const auto& z : data_) {
        if (!z.is_real()) {
            return false;
        }
    }
    return true;
}

Matrix Matrix::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    if (r0 + nr > rows_ || c0 + nc > cols_) {
        throw ShapeError("block out of range of " + shape());
    }
    Matrix out(nr, nc);
    for (std::size_t i = 0; i < nr; ++i) {
        for (std::size_t j = 0; j < nc; ++j) {
            out(i, j) = (*this)(r0 + i, c0 + j);
        }
    }
    return out;
}

void Matrix::set_block(std::size_t r0, std::size_t c0, const Matrix& src) {
    if (r0 + src.rows() > rows_ || c0 + src.cols() > cols_) {
        throw ShapeError("set_block: " + src.shape() + " does not fit into " + shape());
    }
    for (std::size_t i = 0; i < src.rows(); ++i) {
        for (std::size_t j = 0; j < src.cols(); ++j) {
            (*this)(r0 + i, c0 + j) = src(i, j);
        }
    }
}

Matrix Matrix::transpose() const {
    Matrix out(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j) {
            out(j, i) = (*this)(i, j);
        }
    }
    return out;
}

Matrix Matrix::conj_transpose() const {
    Matrix out(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j) {
            out(j, i) = (*this)(i, j).conj();
        }
    }
    return out;
}

Matrix& Matrix::operator+=(const Matrix& rhs) {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_) {
        shape_mismatch("add", *this, rhs);
    }
    for (std::size_t i = 0; i < data_.size(); ++i) {
        data_[i] += rhs.data_[i];
    }
    return *this;
}

Matrix& Matrix::operator-=(const Matrix& rhs) {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_) {
        shape_mismatch("sub", *this, rhs);
    }
    for (std::size_t i = 0; i < data_.size(); ++i) {
        data_[i] -= rhs.data_[i];
    }
    return *this;
}

std::string Matrix::shape() const {
    return std::to_string(rows_) + "x" + std::to_string(cols_);
}

Matrix operator+(Matrix lhs, const Matrix& rhs) { return lhs += rhs; }
Matrix operator-(Matrix lhs, const Matrix& rhs) { return lhs -= rhs; }

Matrix operator-(const Matrix& a) {
    Matrix out(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            out(i, j) = -a(i, j);
        }
    }
    return out;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.rows()) {
        shape_mismatch("mul", a, b);
    }
    Matrix out(a.rows(), b.cols());
    GaussianRational term;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t l = 0; l < a.cols(); ++l) {
            const GaussianRational& ail = a(i, l);
            if (ail.is_zero()) {
                continue;
            }
            for (std::size_t j = 0; j < b.cols(); ++j) {
                if (b(l, j).is_zero()) {
                    continue;
                }
                term = ail;
                term *= b(l, j);
                out(i, j) += term;
            }
        }
    }
    return out;
}

Matrix operator*(const GaussianRational& s, const Matrix& a) {
    Matrix out(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            out(i, j) = s * a(i, j);
        }
    }
    return out;
}

Matrix power(const Matrix& a, std::size_t exponent) {
    if (!a.is_square()) {
        throw ShapeError("power: matrix is not square (" + a.shape() + ")");
    }
    Matrix result = Matrix::identity(a.rows());
    Matrix base = a;
    while (exponent > 0) {
        if (exponent & 1U) {
            result = result * base;
        }
        exponent >>= 1U;
        if (exponent > 0) {
            base = base * base;
        }
    }
    return result;
}

Matrix product(std::initializer_list<const Matrix*> factors) {
    if (factors.size() == 0) {
        throw ShapeError("product of no factors");
    }
    auto it = factors.begin();
    Matrix acc = **it;
    for (++it; it != factors.end(); ++it) {
        acc = acc * **it;
    }
    return acc;
}

Matrix hstack(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows()) {
        shape_mismatch("hstack", a, b);
    }
    Matrix out(a.rows(), a.cols() + b.cols());
    out.set_block(0, 0, a);
    out.set_block(0, a.cols(), b);
    return out;
}

Matrix vstack(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.cols()) {
        shape_mismatch("vstack", a, b);
    }
    Matrix out(a.rows() + b.rows(), a.cols());
    out.set_block(0, 0, a);
    out.set_block(a.rows(), 0, b);
    return out;
}

Matrix block2x2(const Matrix& a, const Matrix& b, const Matrix& c, const Matrix& d) {
    return vstack(hstack(a, b), hstack(c, d));
}

std::ostream& operator<<(std::ostream& os, const Matrix& m) {
    os << '[';
    for (std::size_t i = 0; i < m.rows(); ++i) {
        os << (i == 0 ? "[" : " [");
        for (std::size_t j = 0; j < m.cols(); ++j) {
            os << (j == 0 ? "" : ", ") << m(i, j);
        }
        os << ']';
    }
    return os << ']';
}

PowerSequence::PowerSequence(Matrix base) {
    if (!base.is_square()) {
        throw ShapeError("power sequence of non-square " + base.shape());
    }
    powers_.push_back(Matrix::identity(base.rows()));
    powers_.push_back(std::move(base));
}

const Matrix& PowerSequence::operator[](std::size_t exponent) {
    while (powers_.size() <= exponent) {
        powers_.push_back(powers_.back() * powers_[1]);
    }
    return powers_[exponent];
}

}  // namespace drazin
