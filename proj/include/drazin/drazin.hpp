#ifndef DRAZIN_DRAZIN_HPP
#define DRAZIN_DRAZIN_HPP

#include "drazin/matrix.hpp"

#include <cstddef>
#include <stdexcept>
#include <string>

namespace drazin {

/// A defining identity failed on a freshly computed result. Never expected.
class ComputationInvariantError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// A formula was called on operands that violate its hypotheses.
class HypothesisViolation : public std::invalid_argument {
public:
    HypothesisViolation(std::string name, Matrix residual);
    const std::string& hypothesis() const noexcept { return name_; }
    const Matrix& residual() const noexcept { return residual_; }

private:
    std::string name_;
    Matrix residual_;
};

class NoGroupInverseError : public std::domain_error {
public:
    explicit NoGroupInverseError(std::size_t index);
    std::size_t index() const noexcept { return index_; }

private:
    std::size_t index_;
};

struct DrazinResult {
    Matrix dinv;            // A^d
    std::size_t index = 0;  // ind(A)
    Matrix projector;       // I - A A^d
};

/// Smallest k >= 0 with rank(A^k) == rank(A^{k+1}); always k <= n.
std::size_t index_of(const Matrix& a);

/// Drazin inverse via the core-nilpotent split of A over range(A^k) (+) null(A^k).
/// The result is checked against the three defining identities before return.
DrazinResult drazin(const Matrix& a);

/// True iff X satisfies AX = XA, XAX = X and A^{k+1}X = A^k.
bool satisfies_drazin_identities(const Matrix& a, const Matrix& x, std::size_t k);

/// A^# for index <= 1; NoGroupInverseError otherwise.
Matrix group_inverse(const Matrix& a);

bool is_nilpotent(const Matrix& a);

/// (P+Q)^d for PQ = 0, evaluated as
///   Q^pi sum_{i<t} Q^i (P^d)^{i+1} + sum_{i<s} (Q^d)^{i+1} P^i P^pi
/// with s = ind(P), t = ind(Q). Throws HypothesisViolation when PQ != 0.
Matrix additive_drazin(const Matrix& p, const Matrix& q);

/// (P+Q+R)^d = P^d + sum_{i<t} (P^d)^{i+2} R Q^i, t = ind(Q), valid when
/// PQ = QP = QR = RP = R^2 = 0 and Q is nilpotent (all checked).
Matrix pqr_drazin(const Matrix& p, const Matrix& q, const Matrix& r);

/// V ((UV)^d)^2 U, which equals (VU)^d for any conformable U (n x m), V (m x n).
Matrix cline_rhs(const Matrix& u, const Matrix& v);

enum class Triangle { upper, lower };

/// Drazin inverse of [[A, C], [0, D]] (upper) or [[D, 0], [C, A]] (lower),
/// assembled from A^d, D^d and the coupling block
///   X = sum_{i<s} (A^d)^{i+2} C D^i D^pi + A^pi sum_{i<r} A^i C (D^d)^{i+2} - A^d C D^d
/// with r = ind(A), s = ind(D).
Matrix block_triangular_drazin(const Matrix& a, const Matrix& c, const Matrix& d, Triangle orientation);

}  // namespace drazin

#endif  // DRAZIN_DRAZIN_HPP
