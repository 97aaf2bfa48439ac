#include <doctest.h>

#include "drazin/drazin.hpp"
#include "drazin/elimination.hpp"
#include "drazin/forge.hpp"
#include "oracle.hpp"

using namespace drazin;

namespace {

GaussianRational q(long num, long den = 1) { return GaussianRational::from_fraction(num, den); }

Matrix nil2() { return Matrix{{0, 1}, {0, 0}}; }

void check_identities(const Matrix& a, const DrazinResult& r) {
    const Matrix& x = r.dinv;
    CHECK(a * x == x * a);
    CHECK(x * a * x == x);
    CHECK(power(a, r.index + 1) * x == power(a, r.index));
    CHECK(r.projector == Matrix::identity(a.rows()) - a * x);
    CHECK(r.projector * r.projector == r.projector);
}

}  // namespace

TEST_CASE("index examples") {
    CHECK(index_of(Matrix::identity(3)) == 0);
    CHECK(index_of(Matrix(3, 3)) == 1);
    CHECK(index_of(nil2()) == 2);
    CHECK(index_of(Matrix{{1, 1}, {0, 0}}) == 1);
    CHECK(index_of(Matrix(0, 0)) == 0);
}

TEST_CASE("drazin examples") {
    const DrazinResult id = drazin::drazin(Matrix::identity(2));
    CHECK(id.dinv == Matrix::identity(2));
    CHECK(id.index == 0);
    CHECK(id.projector.is_zero());

    const DrazinResult nil = drazin::drazin(nil2());
    CHECK(nil.dinv.is_zero());
    CHECK(nil.index == 2);
    CHECK(nil.projector == Matrix::identity(2));

    const Matrix idem{{1, 1}, {0, 0}};
    const DrazinResult e = drazin::drazin(idem);
    CHECK(e.dinv == idem);
    CHECK(e.index == 1);

    const Matrix d = Matrix::diagonal({2, 0});
    const DrazinResult r = drazin::drazin(d);
    CHECK(r.dinv == Matrix::diagonal({q(1, 2), 0}));
    CHECK(r.index == 1);
    check_identities(d, r);
    CHECK(r.dinv == oracle::drazin(d));

    CHECK_THROWS_AS(drazin::drazin(Matrix(2, 3)), ShapeError);
}

TEST_CASE("group inverse") {
    CHECK(group_inverse(Matrix::identity(3)) == Matrix::identity(3));
    const Matrix a = Matrix::diagonal({3, 0});
    const Matrix x = group_inverse(a);
    CHECK(x == Matrix::diagonal({q(1, 3), 0}));
    CHECK(a * x * a == a);
    CHECK(x * a * x == x);
    CHECK(a * x == x * a);
    try {
        group_inverse(nil2());
        FAIL("expected NoGroupInverseError");
    } catch (const NoGroupInverseError& e) {
        CHECK(e.index() == 2);
    }
}

TEST_CASE("drazin agrees with the independent oracle") {
    SplitMix64 rng(101);
    for (int t = 0; t < 120; ++t) {
        const std::size_t n = 1 + rng.below(5);
        const std::size_t k = rng.below(n + 1);
        GenConfig cfg;
        cfg.seed = rng.next();
        cfg.complex_entries = t % 5 == 0;
        const Matrix a = gen_index_k(cfg, n, k);
        const DrazinResult r = drazin::drazin(a);
        CHECK(r.index == k);
        CHECK(r.index == oracle::index(a));
        CHECK(r.dinv == oracle::drazin(a));
        check_identities(a, r);
    }
}

TEST_CASE("drazin of unstructured random matrices") {
    SplitMix64 rng(5);
    for (int t = 0; t < 80; ++t) {
        const std::size_t n = 1 + rng.below(5);
        const std::size_t inner = 1 + rng.below(n);
        // Low-rank squares land on every index.
        const Matrix a = oracle::random_matrix(rng, n, inner, 2, t % 4 == 1) *
                         oracle::random_matrix(rng, inner, n, 2, t % 4 == 1);
        const DrazinResult r = drazin::drazin(a);
        CHECK(r.index == oracle::index(a));
        CHECK(r.dinv == oracle::drazin(a));
        check_identities(a, r);
    }
}

TEST_CASE("drazin covariance properties") {
    SplitMix64 rng(23);
    for (int t = 0; t < 60; ++t) {
        const std::size_t n = 1 + rng.below(4);
        GenConfig cfg;
        cfg.seed = rng.next();
        const Matrix a = gen_index_k(cfg, n, rng.below(n + 1));
        const DrazinResult r = drazin::drazin(a);

        CHECK(drazin::drazin(a.transpose()).dinv == r.dinv.transpose());
        CHECK(drazin::drazin(a.conj_transpose()).dinv == r.dinv.conj_transpose());

        cfg.seed = rng.next();
        const Matrix p = gen_invertible(cfg, n);
        const Matrix pinv = inverse(p);
        CHECK(drazin::drazin(p * a * pinv).dinv == p * r.dinv * pinv);

        // (A^d)^d = A^2 A^d and (A^d)^d has index <= 1.
        const DrazinResult rr = drazin::drazin(r.dinv);
        CHECK(rr.dinv == a * a * r.dinv);
        CHECK(rr.index <= 1);

        // A^d = A^{m-1} (A^m)^d for m >= 1.
        const std::size_t m = 1 + rng.below(3);
        CHECK(power(a, m - 1) * drazin::drazin(power(a, m)).dinv == r.dinv);
    }
}

TEST_CASE("nilpotency") {
    CHECK(is_nilpotent(nil2()));
    CHECK(is_nilpotent(Matrix(3, 3)));
    CHECK_FALSE(is_nilpotent(Matrix::identity(2)));
    GenConfig cfg{9, 4, 4};
    CHECK(is_nilpotent(gen_nilpotent(cfg, 4)));
}

TEST_CASE("additive formula") {
    const Matrix p{{0, 0}, {1, 0}};
    const Matrix qm{{0, 0}, {0, 1}};
    CHECK(additive_drazin(p, qm) == Matrix{{0, 0}, {1, 1}});
    CHECK(oracle::drazin(p + qm) == Matrix{{0, 0}, {1, 1}});

    const Matrix a{{2, 1}, {0, 0}};
    CHECK(additive_drazin(Matrix(2, 2), a) == drazin::drazin(a).dinv);
    CHECK(additive_drazin(a, Matrix(2, 2)) == drazin::drazin(a).dinv);
    CHECK_THROWS_AS(additive_drazin(Matrix::identity(2), Matrix::identity(2)), HypothesisViolation);

    SplitMix64 rng(31);
    for (int t = 0; t < 40; ++t) {
        GenConfig cfg;
        cfg.seed = rng.next();
        const std::size_t n = 2 + rng.below(3);
        const AnnihilatingPair pq = gen_annihilating_pair(cfg, n);
        REQUIRE((pq.P * pq.Q).is_zero());
        CHECK(additive_drazin(pq.P, pq.Q) == oracle::drazin(pq.P + pq.Q));
    }
}

TEST_CASE("pqr formula") {
    const Matrix a{{3, 0}, {0, 0}};
    CHECK(pqr_drazin(a, Matrix(2, 2), Matrix(2, 2)) == drazin::drazin(a).dinv);
    CHECK(pqr_drazin(Matrix(2, 2), nil2(), Matrix(2, 2)).is_zero());

    // P = diag(1,0,0), Q = e23, R = e12: PQ = QP = QR = RP = R^2 = 0.
    const Matrix p = Matrix::diagonal({1, 0, 0});
    Matrix qm(3, 3);
    qm(1, 2) = 1;
    Matrix r(3, 3);
    r(0, 1) = 1;
    CHECK(pqr_drazin(p, qm, r) == oracle::drazin(p + qm + r));
    CHECK_THROWS_AS(pqr_drazin(p, qm, r.transpose()), HypothesisViolation);

    SplitMix64 rng(37);
    for (int t = 0; t < 30; ++t) {
        GenConfig cfg;
        cfg.seed = rng.next();
        const PqrTriple x = gen_pqr_triple(cfg, 2 + rng.below(3));
        CHECK(pqr_drazin(x.P, x.Q, x.R) == oracle::drazin(x.P + x.Q + x.R));
    }
}

TEST_CASE("cline formula") {
    const Matrix a{{1, 2}, {0, 0}};
    CHECK(cline_rhs(Matrix::identity(2), a) == drazin::drazin(a).dinv);
    SplitMix64 rng(41);
    CHECK(cline_rhs(Matrix(2, 3), oracle::random_matrix(rng, 3, 2)).is_zero());
    for (int t = 0; t < 40; ++t) {
        const std::size_t n = 1 + rng.below(4);
        const std::size_t m = 1 + rng.below(4);
        const Matrix u = oracle::random_matrix(rng, n, m, 2, t % 3 == 0);
        const Matrix v = oracle::random_matrix(rng, m, n, 2, t % 3 == 0);
        CHECK(cline_rhs(u, v) == oracle::drazin(v * u));
    }
}

TEST_CASE("block triangular formula") {
    const Matrix one{{1}};
    const Matrix zero{{0}};
    CHECK(block_triangular_drazin(one, one, zero, Triangle::upper) == Matrix{{1, 1}, {0, 0}});
    CHECK(oracle::drazin(Matrix{{1, 1}, {0, 0}}) == Matrix{{1, 1}, {0, 0}});

    SplitMix64 rng(43);
    for (int t = 0; t < 40; ++t) {
        const std::size_t n = 1 + rng.below(3);
        const std::size_t m = 1 + rng.below(3);
        GenConfig cfg;
        cfg.seed = rng.next();
        const Matrix a = gen_index_k(cfg, n, rng.below(n + 1));
        cfg.seed = rng.next();
        const Matrix d = gen_index_k(cfg, m, rng.below(m + 1));
        const Matrix c = oracle::random_matrix(rng, n, m, 2);
        const Matrix upper = block2x2(a, c, Matrix(m, n), d);
        CHECK(block_triangular_drazin(a, c, d, Triangle::upper) == oracle::drazin(upper));
        const Matrix lower = block2x2(d, Matrix(m, n), c, a);
        CHECK(block_triangular_drazin(a, c, d, Triangle::lower) == oracle::drazin(lower));

        const Matrix blockdiag = block_triangular_drazin(a, Matrix(n, m), d, Triangle::upper);
        CHECK(blockdiag == block2x2(drazin::drazin(a).dinv, Matrix(n, m), Matrix(m, n), drazin::drazin(d).dinv));
    }

    const Matrix a{{2, 1}, {1, 1}};
    const Matrix d{{3}};
    const Matrix c{{1}, {2}};
    const Matrix x = block_triangular_drazin(a, c, d, Triangle::upper);
    CHECK(x.block(0, 2, 2, 1) == -(inverse(a) * c * inverse(d)));
    CHECK(x == inverse(block2x2(a, c, Matrix(1, 2), d)));
}
