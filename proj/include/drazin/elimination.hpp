#ifndef DRAZIN_ELIMINATION_HPP
#define DRAZIN_ELIMINATION_HPP

#include "drazin/matrix.hpp"

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace drazin {

/// Raised by inverse()/solve() on a singular square matrix.
class SingularMatrixError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Reduced row echelon form together with its pivot columns.
struct Echelon {
    Matrix reduced;
    std::vector<std::size_t> pivots;
};

/// Gauss-Jordan elimination with exact division. Pivots are the first nonzero
/// entry found scanning down the current column.
Echelon row_reduce(const Matrix& a);

std::size_t rank(const Matrix& a);

/// Exact inverse of a square matrix; SingularMatrixError when rank < n.
Matrix inverse(const Matrix& a);

/// X with A X = B for square nonsingular A.
Matrix solve(const Matrix& a, const Matrix& b);

/// Columns form a basis of range(A): the pivot columns of A itself.
Matrix column_space_basis(const Matrix& a);

/// Columns form a basis of null(A), one per free variable of the echelon form.
Matrix null_space_basis(const Matrix& a);

}  // namespace drazin

#endif  // DRAZIN_ELIMINATION_HPP
