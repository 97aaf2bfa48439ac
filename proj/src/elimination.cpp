#include "drazin/elimination.hpp"

#include <utility>

namespace drazin {

namespace {

void swap_rows(Matrix& m, std::size_t a, std::size_t b) {
    if (a == b) {
        return;
    }
    for (std::size_t j = 0; j < m.cols(); ++j) {
        std::swap(m(a, j), m(b, j));
    }
}

}  // namespace

Echelon row_reduce(const Matrix& a) {
    Echelon out{a, {}};
    Matrix& m = out.reduced;
    std::size_t row = 0;
    GaussianRational scratch;
    for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
        std::size_t pivot = row;
        while (pivot < m.rows() && m(pivot, col).is_zero()) {
            ++pivot;
        }
        if (pivot == m.rows()) {
            continue;
        }
        swap_rows(m, row, pivot);

        const GaussianRational inv = m(row, col).reciprocal();
        for (std::size_t j = col; j < m.cols(); ++j) {
            m(row, j) *= inv;
        }
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == row || m(i, col).is_zero()) {
                continue;
            }
            const GaussianRational factor = m(i, col);
            for (std::size_t j = col; j < m.cols(); ++j) {
                if (m(row, j).is_zero()) {
                    continue;
                }
                scratch = factor;
                scratch *= m(row, j);
                m(i, j) -= scratch;
            }
        }
        out.pivots.push_back(col);
        ++row;
    }
    return out;
}

std::size_t rank(const Matrix& a) {
    return row_reduce(a).pivots.size();
}

Matrix solve(const Matrix& a, const Matrix& b) {
    if (!a.is_square()) {
        throw ShapeError("solve: coefficient matrix is not square (" + a.shape() + ")");
    }
    if (a.rows() != b.rows()) {
        throw ShapeError("solve: shape mismatch " + a.shape() + " vs " + b.shape());
    }
    const std::size_t n = a.rows();
    Echelon e = row_reduce(hstack(a, b));
    if (e.pivots.size() < n || (n > 0 && e.pivots[n - 1] != n - 1)) {
        throw SingularMatrixError("solve: singular " + a.shape() + " matrix");
    }
    return e.reduced.block(0, n, n, b.cols());
}

Matrix inverse(const Matrix& a) {
    if (!a.is_square()) {
        throw ShapeError("inverse: matrix is not square (" + a.shape() + ")");
    }
    try {
        return solve(a, Matrix::identity(a.rows()));
    } catch (const SingularMatrixError&) {
        throw SingularMatrixError("inverse: singular " + a.shape() + " matrix");
    }
}

Matrix column_space_basis(const Matrix& a) {
    const Echelon e = row_reduce(a);
    Matrix basis(a.rows(), e.pivots.size());
    for (std::size_t k = 0; k < e.pivots.size(); ++k) {
        for (std::size_t i = 0; i < a.rows(); ++i) {
            basis(i, k) = a(i, e.pivots[k]);
        }
    }
    return basis;
}

Matrix null_space_basis(const Matrix& a) {
    const Echelon e = row_reduce(a);
    const std::size_t n = a.cols();
    std::vector<bool> is_pivot(n, false);
    for (std::size_t p : e.pivots) {
        is_pivot[p] = true;
    }
    Matrix basis(n, n - e.pivots.size());
    std::size_t k = 0;
    for (std::size_t free = 0; free < n; ++free) {
        if (is_pivot[free]) {
            continue;
        }
        basis(free, k) = 1;
        for (std::size_t r = 0; r < e.pivots.size(); ++r) {
            basis(e.pivots[r], k) = -e.reduced(r, free);
        }
        ++k;
    }
    return basis;
}

}  // namespace drazin
