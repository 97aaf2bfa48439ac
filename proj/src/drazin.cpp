#include "drazin/drazin.hpp"

#include "drazin/elimination.hpp"

namespace drazin {

HypothesisViolation::HypothesisViolation(std::string name, Matrix residual)
    : std::invalid_argument("hypothesis violated: " + name + " is nonzero"),
      name_(std::move(name)),
      residual_(std::move(residual)) {}

NoGroupInverseError::NoGroupInverseError(std::size_t index)
    : std::domain_error("no group inverse: index " + std::to_string(index) + " exceeds 1"),
      index_(index) {}

namespace {

void require_square(const Matrix& a, const char* what) {
    if (!a.is_square()) {
        throw ShapeError(std::string(what) + ": matrix is not square (" + a.shape() + ")");
    }
}

void require_zero(const Matrix& residual, const char* name) {
    if (!residual.is_zero()) {
        throw HypothesisViolation(name, residual);
    }
}

}  // namespace

std::size_t index_of(const Matrix& a) {
    require_square(a, "index_of");
    std::size_t k = 0;
    Matrix pk = Matrix::identity(a.rows());
    std::size_t rank_k = a.rows();
    for (;;) {
        Matrix next = pk * a;
        const std::size_t rank_next = rank(next);
        if (rank_next == rank_k) {
            return k;
        }
        ++k;
        pk = std::move(next);
        rank_k = rank_next;
    }
}

bool satisfies_drazin_identities(const Matrix& a, const Matrix& x, std::size_t k) {
    if (!(a * x == x * a)) {
        return false;
    }
    if (!(x * a * x == x)) {
        return false;
    }
    const Matrix ak = power(a, k);
    return ak * a * x == ak;
}

DrazinResult drazin(const Matrix& a) {
    require_square(a, "drazin");
    const std::size_t n = a.rows();
    const std::size_t k = index_of(a);
    const Matrix ak = power(a, k);

    // Columns of [range(A^k) | null(A^k)] split C^n into A-invariant pieces on
    // which A is invertible and nilpotent respectively.
    const Matrix range = column_space_basis(ak);
    const Matrix kernel = null_space_basis(ak);
    const std::size_t r = range.cols();
    if (r + kernel.cols() != n) {
        throw ComputationInvariantError("drazin: range and kernel dimensions do not add up");
    }

    Matrix dinv(n, n);
    if (r > 0) {
        const Matrix basis = hstack(range, kernel);
        const Matrix basis_inv = inverse(basis);
        const Matrix split = basis_inv * a * basis;
        if (!split.block(0, r, r, n - r).is_zero() || !split.block(r, 0, n - r, r).is_zero()) {
            throw ComputationInvariantError("drazin: core-nilpotent split is not block diagonal");
        }
        const Matrix core_inv = inverse(split.block(0, 0, r, r));
        dinv = range * core_inv * basis_inv.block(0, 0, r, n);
    }

    if (!satisfies_drazin_identities(a, dinv, k)) {
        throw ComputationInvariantError("drazin: result violates the defining identities");
    }
    Matrix projector = Matrix::identity(n) - a * dinv;
    return {std::move(dinv), k, std::move(projector)};
}

Matrix group_inverse(const Matrix& a) {
    DrazinResult res = drazin(a);
    if (res.index > 1) {
        throw NoGroupInverseError(res.index);
    }
    return std::move(res.dinv);
}

bool is_nilpotent(const Matrix& a) {
    require_square(a, "is_nilpotent");
    return power(a, a.rows()).is_zero();
}

Matrix additive_drazin(const Matrix& p, const Matrix& q) {
    require_square(p, "additive_drazin");
    if (p.rows() != q.rows() || p.cols() != q.cols()) {
        throw ShapeError("additive_drazin: shape mismatch " + p.shape() + " vs " + q.shape());
    }
    require_zero(p * q, "PQ");

    const DrazinResult pd = drazin(p);
    const DrazinResult qd = drazin(q);
    const std::size_t n = p.rows();

    PowerSequence q_pow(q);
    PowerSequence pd_pow(pd.dinv);
    Matrix first(n, n);
    for (std::size_t i = 0; i < qd.index; ++i) {
        first += q_pow[i] * pd_pow[i + 1];
    }

    PowerSequence p_pow(p);
    PowerSequence qd_pow(qd.dinv);
    Matrix second(n, n);
    for (std::size_t i = 0; i < pd.index; ++i) {
        second += qd_pow[i + 1] * p_pow[i];
    }
    return qd.projector * first + second * pd.projector;
}

Matrix pqr_drazin(const Matrix& p, const Matrix& q, const Matrix& r) {
    require_square(p, "pqr_drazin");
    if (!(p.rows() == q.rows() && q.rows() == r.rows() && q.is_square() && r.is_square())) {
        throw ShapeError("pqr_drazin: shape mismatch " + p.shape() + ", " + q.shape() + ", " + r.shape());
    }
    require_zero(p * q, "PQ");
    require_zero(q * p, "QP");
    require_zero(q * r, "QR");
    require_zero(r * p, "RP");
    require_zero(r * r, "R^2");
    if (!is_nilpotent(q)) {
        throw HypothesisViolation("Q^n (Q not nilpotent)", power(q, q.rows()));
    }

    const DrazinResult pd = drazin(p);
    const std::size_t t = index_of(q);
    PowerSequence pd_pow(pd.dinv);
    PowerSequence q_pow(q);
    Matrix out = pd.dinv;
    for (std::size_t i = 0; i < t; ++i) {
        out += pd_pow[i + 2] * r * q_pow[i];
    }
    return out;
}

Matrix cline_rhs(const Matrix& u, const Matrix& v) {
    if (u.rows() != v.cols() || u.cols() != v.rows()) {
        throw ShapeError("cline_rhs: shapes " + u.shape() + " and " + v.shape() + " are not conformable");
    }
    const Matrix uv_d = drazin(u * v).dinv;
    return v * uv_d * uv_d * u;
}

Matrix block_triangular_drazin(const Matrix& a, const Matrix& c, const Matrix& d, Triangle orientation) {
    require_square(a, "block_triangular_drazin");
    require_square(d, "block_triangular_drazin");
    if (c.rows() != a.rows() || c.cols() != d.rows()) {
        throw ShapeError("block_triangular_drazin: coupling block " + c.shape() + " does not fit A " + a.shape() +
                         " and D " + d.shape());
    }
    const DrazinResult ad = drazin(a);
    const DrazinResult dd = drazin(d);

    PowerSequence ad_pow(ad.dinv);
    PowerSequence d_pow(d);
    Matrix left(c.rows(), c.cols());
    for (std::size_t i = 0; i < dd.index; ++i) {
        left += ad_pow[i + 2] * c * d_pow[i] * dd.projector;
    }
    PowerSequence a_pow(a);
    PowerSequence dd_pow(dd.dinv);
    Matrix right(c.rows(), c.cols());
    for (std::size_t i = 0; i < ad.index; ++i) {
        right += a_pow[i] * c * dd_pow[i + 2];
    }
    const Matrix x = left + ad.projector * right - ad.dinv * c * dd.dinv;

    if (orientation == Triangle::upper) {
        return block2x2(ad.dinv, x, Matrix::zero(d.rows(), a.cols()), dd.dinv);
    }
    return block2x2(dd.dinv, Matrix::zero(d.rows(), a.cols()), x, ad.dinv);
}

}  // namespace drazin
