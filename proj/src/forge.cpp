#include "drazin/forge.hpp"

#include "drazin/drazin.hpp"
#include "drazin/elimination.hpp"

#include <algorithm>
#include <array>

namespace drazin {

std::uint64_t SplitMix64::next() noexcept {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30U)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27U)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31U);
}

std::uint64_t SplitMix64::below(std::uint64_t bound) noexcept {
    // Rejection keeps the draw unbiased.
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
    std::uint64_t x = next();
    while (x >= limit) {
        x = next();
    }
    return x % bound;
}

std::int64_t SplitMix64::between(std::int64_t lo, std::int64_t hi) noexcept {
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<std::int64_t>(below(span));
}

std::uint64_t mix_seed(std::uint64_t master, std::uint64_t index) noexcept {
    SplitMix64 inner(index);
    SplitMix64 outer(master ^ inner.next());
    return outer.next();
}

namespace {

constexpr std::array<Family, 13> kFamilies = {
    Family::ALL_INVERTIBLE,      Family::RANGE_C,    Family::ANNIHILATED_B,    Family::RANGE_C_ANNIHILATED_B,
    Family::RANGE_B_ANNIHILATED_C, Family::ZERO_C,   Family::ZERO_B,           Family::JACOBSON_BLOCKS,
    Family::INTERTWINE,          Family::INTERTWINE_SINGULAR, Family::ZERO_Z,  Family::PRESCRIBED_INDEX,
    Family::REJECTION,
};

std::string_view family_name(Family f) {
    switch (f) {
        case Family::ALL_INVERTIBLE: return "ALL_INVERTIBLE";
        case Family::RANGE_C: return "RANGE_C";
        case Family::ANNIHILATED_B: return "ANNIHILATED_B";
        case Family::RANGE_C_ANNIHILATED_B: return "RANGE_C_ANNIHILATED_B";
        case Family::RANGE_B_ANNIHILATED_C: return "RANGE_B_ANNIHILATED_C";
        case Family::ZERO_C: return "ZERO_C";
        case Family::ZERO_B: return "ZERO_B";
        case Family::JACOBSON_BLOCKS: return "JACOBSON_BLOCKS";
        case Family::INTERTWINE: return "INTERTWINE";
        case Family::INTERTWINE_SINGULAR: return "INTERTWINE_SINGULAR";
        case Family::ZERO_Z: return "ZERO_Z";
        case Family::PRESCRIBED_INDEX: return "PRESCRIBED_INDEX";
        case Family::REJECTION: return "REJECTION";
    }
    return "?";
}

using F = FormulaId;

class Generator {
public:
    explicit Generator(const GenConfig& cfg) : cfg_(cfg), rng_(cfg.seed) {
        if (cfg.entry_bound < 1) {
            throw std::invalid_argument("entry_bound must be positive");
        }
        if (cfg.retry_budget < 1) {
            throw std::invalid_argument("retry_budget must be positive");
        }
    }

    SplitMix64& rng() { return rng_; }
    std::size_t budget() const { return cfg_.retry_budget; }

    mpq_class rational() {
        const std::int64_t b = cfg_.entry_bound;
        mpq_class q(static_cast<long>(rng_.between(-b, b)), static_cast<unsigned long>(rng_.between(1, b)));
        q.canonicalize();
        return q;
    }

    GaussianRational scalar() {
        mpq_class re = rational();
        mpq_class im = cfg_.complex_entries ? rational() : mpq_class(0);
        return {std::move(re), std::move(im)};
    }

    GaussianRational integer() {
        return GaussianRational(static_cast<long>(rng_.between(-cfg_.entry_bound, cfg_.entry_bound)));
    }

    Matrix matrix(std::size_t rows, std::size_t cols, bool sparse = false) {
        Matrix out(rows, cols);
        for (std::size_t i = 0; i < rows; ++i) {
            for (std::size_t j = 0; j < cols; ++j) {
                if (sparse && rng_.coin()) {
                    continue;
                }
                out(i, j) = scalar();
            }
        }
        return out;
    }

    Matrix invertible(std::size_t n) {
        for (std::size_t attempt = 0; attempt < cfg_.retry_budget; ++attempt) {
            Matrix candidate = matrix(n, n);
            if (rank(candidate) == n) {
                return candidate;
            }
        }
        throw GenerationFailure("no invertible " + std::to_string(n) + "x" + std::to_string(n) +
                                " matrix within the retry budget");
    }

    // Permuted product of unit lower and unit upper integer triangles:
    // determinant +-1, so both it and its inverse have integer entries.
    std::pair<Matrix, Matrix> unimodular(std::size_t n) {
        Matrix lower = Matrix::identity(n);
        Matrix upper = Matrix::identity(n);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < i; ++j) {
                lower(i, j) = integer();
                upper(j, i) = integer();
            }
        }
        std::vector<std::size_t> perm(n);
        for (std::size_t i = 0; i < n; ++i) {
            perm[i] = i;
        }
        for (std::size_t i = n; i > 1; --i) {
            std::swap(perm[i - 1], perm[rng_.below(i)]);
        }
        Matrix permutation(n, n);
        for (std::size_t i = 0; i < n; ++i) {
            permutation(i, perm[i]) = 1;
        }
        Matrix t = permutation * lower * upper;
        Matrix t_inv = inverse(t);
        return {std::move(t), std::move(t_inv)};
    }

    Matrix conjugate(const Matrix& x) {
        auto [t, t_inv] = unimodular(x.rows());
        return t * x * t_inv;
    }

    Matrix strictly_upper(std::size_t n) {
        Matrix out(n, n);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                out(i, j) = scalar();
            }
        }
        return out;
    }

    // Nilpotent of size s whose largest Jordan block has size k (1 <= k <= s).
    Matrix jordan_nilpotent(std::size_t s, std::size_t k) {
        std::vector<std::size_t> blocks{k};
        std::size_t left = s - k;
        while (left > 0) {
            const auto size = static_cast<std::size_t>(rng_.between(1, static_cast<std::int64_t>(std::min(left, k))));
            blocks.push_back(size);
            left -= size;
        }
        for (std::size_t i = blocks.size(); i > 1; --i) {
            std::swap(blocks[i - 1], blocks[rng_.below(i)]);
        }
        Matrix out(s, s);
        std::size_t offset = 0;
        for (std::size_t size : blocks) {
            for (std::size_t i = 0; i + 1 < size; ++i) {
                out(offset + i, offset + i + 1) = 1;
            }
            offset += size;
        }
        return out;
    }

    // block-diag(core, nilpotent) with core invertible of size n - nil and a
    // nilpotent part of nilpotency exactly k (k = 0 iff nil = 0).
    Matrix core_nilpotent(std::size_t n, std::size_t nil, std::size_t k, bool conjugated) {
        Matrix x(n, n);
        x.set_block(0, 0, invertible(n - nil));
        if (nil > 0) {
            x.set_block(n - nil, n - nil, jordan_nilpotent(nil, k));
        }
        return conjugated ? conjugate(x) : x;
    }

    Matrix with_index(std::size_t n, std::size_t k, bool conjugated = true) {
        if (k > n) {
            throw std::invalid_argument("gen_index_k: index " + std::to_string(k) + " exceeds size " +
                                        std::to_string(n));
        }
        std::size_t nil = 0;
        if (k > 0) {
            nil = static_cast<std::size_t>(rng_.between(static_cast<std::int64_t>(k), static_cast<std::int64_t>(n)));
        }
        Matrix out = core_nilpotent(n, nil, k, conjugated);
        if (index_of(out) != k) {
            throw ComputationInvariantError("gen_index_k: produced a matrix of the wrong index");
        }
        return out;
    }

    Matrix random_index(std::size_t n, std::size_t min_k = 0, bool conjugated = true) {
        const auto k = static_cast<std::size_t>(
            rng_.between(static_cast<std::int64_t>(std::min(min_k, n)), static_cast<std::int64_t>(n)));
        return with_index(n, k, conjugated);
    }

    // c0 I + c1 A + c2 A^2
    Matrix polynomial_of(const Matrix& a) {
        const Matrix a2 = a * a;
        return scalar() * Matrix::identity(a.rows()) + scalar() * a + scalar() * a2;
    }

private:
    GenConfig cfg_;
    SplitMix64 rng_;
};

Matrix drazin_projection(const Matrix& a, const DrazinResult& ad) {
    return a * ad.dinv;
}

void check_structure(bool ok, Family f, const char* what) {
    if (!ok) {
        throw ComputationInvariantError("family " + std::string(family_name(f)) + " broke its guarantee: " + what);
    }
}

SchurInstance build(Generator& g, const GenConfig& cfg, const FamilySpec& spec) {
    const std::size_t n = cfg.n;
    const std::size_t m = cfg.m;
    const std::size_t budget = g.budget();

    switch (spec.family) {
        case Family::ALL_INVERTIBLE:
            for (std::size_t attempt = 0; attempt < budget; ++attempt) {
                SchurInstance inst{g.invertible(n), g.matrix(m, n), g.matrix(n, m), g.invertible(m)};
                const Matrix z = inst.D - inst.B * inverse(inst.A) * inst.C;
                if (rank(z) == m) {
                    return inst;
                }
            }
            throw GenerationFailure("ALL_INVERTIBLE: Schur complement Z stayed singular");

        case Family::RANGE_C:
        case Family::ANNIHILATED_B:
        case Family::RANGE_C_ANNIHILATED_B: {
            const bool range_c = spec.family != Family::ANNIHILATED_B;
            const bool annihilated_b = spec.family != Family::RANGE_C;
            SchurInstance inst;
            inst.A = g.random_index(n, annihilated_b ? 1 : 0);
            const DrazinResult ad = drazin(inst.A);
            if (annihilated_b) {
                const Matrix left_null = null_space_basis(ad.dinv.transpose());
                inst.B = g.matrix(m, left_null.cols()) * left_null.transpose();
            } else {
                inst.B = g.matrix(m, n);
            }
            inst.C = range_c ? drazin_projection(inst.A, ad) * g.matrix(n, m) : g.matrix(n, m);
            inst.D = g.random_index(m);
            return inst;
        }

        case Family::RANGE_B_ANNIHILATED_C: {
            SchurInstance inst;
            inst.A = g.random_index(n, 1);
            const DrazinResult ad = drazin(inst.A);
            inst.B = g.matrix(m, n) * drazin_projection(inst.A, ad);
            const Matrix kernel = null_space_basis(ad.dinv);
            inst.C = kernel * g.matrix(kernel.cols(), m);
            inst.D = g.random_index(m);
            return inst;
        }

        case Family::ZERO_C:
            return {g.random_index(n), g.matrix(m, n), Matrix::zero(n, m), g.random_index(m)};

        case Family::ZERO_B:
            return {g.random_index(n), Matrix::zero(m, n), g.matrix(n, m), g.random_index(m)};

        case Family::JACOBSON_BLOCKS:
            return {Matrix::identity(n), g.matrix(m, n), g.matrix(n, m), Matrix::identity(m)};

        case Family::INTERTWINE: {
            Matrix a = g.invertible(n);
            Matrix b = g.polynomial_of(a);
            return {a, std::move(b), g.matrix(n, m), a};
        }

        case Family::INTERTWINE_SINGULAR: {
            Matrix a = g.random_index(n, 1);
            const DrazinResult ad = drazin(a);
            Matrix b = g.polynomial_of(a);
            Matrix c = drazin_projection(a, ad) * g.matrix(n, m);
            return {a, std::move(b), std::move(c), a};
        }

        case Family::ZERO_Z:
            for (std::size_t attempt = 0; attempt < budget; ++attempt) {
                const auto core = static_cast<std::size_t>(
                    g.rng().between(static_cast<std::int64_t>(m), static_cast<std::int64_t>(n)));
                const std::size_t nil = n - core;
                const std::size_t k =
                    nil == 0 ? 0 : static_cast<std::size_t>(g.rng().between(1, static_cast<std::int64_t>(nil)));
                SchurInstance inst;
                inst.A = g.core_nilpotent(n, nil, k, true);
                const DrazinResult ad = drazin(inst.A);
                const Matrix e = drazin_projection(inst.A, ad);
                inst.C = e * g.matrix(n, m);
                inst.B = g.matrix(m, n) * e;
                inst.D = inst.B * ad.dinv * inst.C;
                const Matrix gamma = inst.B * ad.dinv * ad.dinv * inst.C;
                if (rank(inst.D) == m && rank(gamma) == m) {
                    return inst;
                }
            }
            throw GenerationFailure("ZERO_Z: D = B A^d C or Gamma stayed singular");

        case Family::PRESCRIBED_INDEX:
            return {g.random_index(n), g.matrix(m, n), g.matrix(n, m), g.random_index(m)};

        case Family::REJECTION:
            for (std::size_t attempt = 0; attempt < budget; ++attempt) {
                const bool conjugated = g.rng().coin();
                SchurInstance inst{g.random_index(n, 0, conjugated), g.matrix(m, n, true), g.matrix(n, m, true),
                                   g.random_index(m, 0, conjugated)};
                if (check_conditions(inst, spec.target).all_hold) {
                    return inst;
                }
            }
            throw GenerationFailure("REJECTION:" + std::string(to_token(spec.target)) +
                                    ": no instance met the hypotheses within the retry budget");
    }
    throw GenerationFailure("unknown family");
}

void assert_guarantee(const FamilySpec& spec, const SchurInstance& inst) {
    const DerivedCache cache = derive(inst);
    const Family f = spec.family;
    switch (f) {
        case Family::RANGE_C:
            check_structure((cache.a.projector * inst.C).is_zero(), f, "A^pi C = 0");
            break;
        case Family::ANNIHILATED_B:
            check_structure(cache.H.is_zero(), f, "B A^d = 0");
            break;
        case Family::RANGE_C_ANNIHILATED_B:
            check_structure((cache.a.projector * inst.C).is_zero() && cache.H.is_zero(), f, "A^pi C = 0, B A^d = 0");
            break;
        case Family::RANGE_B_ANNIHILATED_C:
            check_structure((inst.B * cache.a.projector).is_zero() && cache.K.is_zero(), f, "B A^pi = 0, A^d C = 0");
            break;
        case Family::ZERO_C:
            check_structure(inst.C.is_zero(), f, "C = 0");
            break;
        case Family::ZERO_B:
            check_structure(inst.B.is_zero(), f, "B = 0");
            break;
        case Family::JACOBSON_BLOCKS:
            check_structure(inst.A == Matrix::identity(inst.n()) && inst.D == Matrix::identity(inst.m()), f,
                            "A = I, D = I");
            break;
        case Family::INTERTWINE:
        case Family::INTERTWINE_SINGULAR:
            check_structure(inst.D * inst.B == inst.B * inst.A, f, "DB = BA");
            break;
        case Family::ZERO_Z:
            check_structure(cache.Z.is_zero() && cache.d.index == 0 && cache.gamma.index == 0, f,
                            "Z = 0, D and Gamma invertible");
            break;
        case Family::ALL_INVERTIBLE:
            check_structure(cache.a.index == 0 && cache.d.index == 0 && cache.z.index == 0, f,
                            "A, D, Z invertible");
            break;
        case Family::PRESCRIBED_INDEX:
        case Family::REJECTION:
            break;
    }
    for (FormulaId formula : guaranteed_formulas(spec)) {
        if (!check_conditions(cache, formula).all_hold) {
            throw ComputationInvariantError("family " + to_token(spec) + " emitted an instance violating the " +
                                            std::string(to_token(formula)) + " hypotheses");
        }
    }
}

}  // namespace

std::span<const Family> all_families() { return kFamilies; }

std::string to_token(const FamilySpec& spec) {
    std::string out(family_name(spec.family));
    if (spec.family == Family::REJECTION) {
        out += ':';
        out += to_token(spec.target);
    }
    return out;
}

std::optional<FamilySpec> family_from_token(std::string_view token) {
    constexpr std::string_view rejection = "REJECTION:";
    if (token.starts_with(rejection)) {
        auto target = formula_from_token(token.substr(rejection.size()));
        if (!target) {
            return std::nullopt;
        }
        return FamilySpec{Family::REJECTION, *target};
    }
    for (Family f : kFamilies) {
        if (f != Family::REJECTION && family_name(f) == token) {
            return FamilySpec{f, FormulaId::T_A_FORM1};
        }
    }
    return std::nullopt;
}

std::vector<FormulaId> guaranteed_formulas(const FamilySpec& spec) {
    switch (spec.family) {
        case Family::ALL_INVERTIBLE:
            return {F::SMW_INVERSE, F::T_A_FORM1, F::T_A_FORM2, F::COR_A_STRONG,
                    F::COR_A_PROJEQ, F::T_B_FORM1, F::T_B_FORM2};
        case Family::RANGE_C:
        case Family::ANNIHILATED_B:
        case Family::PRESCRIBED_INDEX:
            return {};
        case Family::RANGE_C_ANNIHILATED_B:
            return {F::T_A_FORM1, F::T_A_FORM2, F::COR_A_STRONG, F::COR_A_PROJEQ, F::T_GAMMA_A, F::T_INTERTWINE};
        case Family::RANGE_B_ANNIHILATED_C:
            return {F::T_B_FORM1, F::T_B_FORM2, F::T_GAMMA_B};
        case Family::ZERO_C:
            return {F::T_A_FORM1, F::T_A_FORM2, F::COR_A_STRONG, F::COR_A_PROJEQ, F::T_B_FORM1,
                    F::T_B_FORM2, F::T_GAMMA_A, F::COR_GAMMA_A, F::T_GAMMA_B};
        case Family::ZERO_B:
            return {F::T_A_FORM1, F::T_A_FORM2, F::COR_A_STRONG, F::COR_A_PROJEQ, F::T_B_FORM1,
                    F::T_B_FORM2, F::T_GAMMA_A, F::COR_GAMMA_A, F::T_GAMMA_B, F::T_INTERTWINE};
        case Family::JACOBSON_BLOCKS:
            return {F::JACOBSON, F::T_INTERTWINE, F::COR_INTERTWINE_INV};
        case Family::INTERTWINE:
            return {F::T_INTERTWINE, F::COR_INTERTWINE_INV};
        case Family::INTERTWINE_SINGULAR:
            return {F::T_INTERTWINE};
        case Family::ZERO_Z:
            return {F::T_GAMMA_A, F::COR_GAMMA_A, F::T_GAMMA_B};
        case Family::REJECTION:
            return {spec.target};
    }
    return {};
}

bool sizes_supported(const FamilySpec& spec, std::size_t n, std::size_t m) {
    if (n == 0 || m == 0) {
        return false;
    }
    switch (spec.family) {
        case Family::INTERTWINE:
        case Family::INTERTWINE_SINGULAR:
            return n == m;
        case Family::ZERO_Z:
            return m <= n;
        default:
            return true;
    }
}

std::vector<FamilySpec> families_for(FormulaId f) {
    std::vector<FamilySpec> out;
    for (Family fam : kFamilies) {
        if (fam == Family::REJECTION) {
            continue;
        }
        const FamilySpec spec{fam, FormulaId::T_A_FORM1};
        const auto g = guaranteed_formulas(spec);
        if (std::find(g.begin(), g.end(), f) != g.end()) {
            out.push_back(spec);
        }
    }
    out.push_back({Family::REJECTION, f});
    return out;
}

Matrix gen_matrix(const GenConfig& cfg, std::size_t rows, std::size_t cols) {
    Generator g(cfg);
    return g.matrix(rows, cols);
}

Matrix gen_invertible(const GenConfig& cfg, std::size_t n) {
    Generator g(cfg);
    return g.invertible(n);
}

Matrix gen_nilpotent(const GenConfig& cfg, std::size_t n) {
    Generator g(cfg);
    return g.conjugate(g.strictly_upper(n));
}

Matrix gen_index_k(const GenConfig& cfg, std::size_t n, std::size_t k) {
    Generator g(cfg);
    return g.with_index(n, k);
}

SchurInstance gen_instance(const GenConfig& cfg, const FamilySpec& spec) {
    if (!sizes_supported(spec, cfg.n, cfg.m)) {
        throw GenerationFailure("family " + to_token(spec) + " does not support n=" + std::to_string(cfg.n) +
                                ", m=" + std::to_string(cfg.m));
    }
    Generator g(cfg);
    SchurInstance inst = build(g, cfg, spec);
    inst.validate();
    assert_guarantee(spec, inst);
    return inst;
}

AnnihilatingPair gen_annihilating_pair(const GenConfig& cfg, std::size_t n) {
    Generator g(cfg);
    Matrix q = g.random_index(n, 1);
    const Matrix v = null_space_basis(q.transpose());
    Matrix p = g.matrix(n, v.cols()) * v.transpose();
    if (!(p * q).is_zero()) {
        throw ComputationInvariantError("gen_annihilating_pair: PQ != 0");
    }
    return {std::move(p), std::move(q)};
}

PqrTriple gen_pqr_triple(const GenConfig& cfg, std::size_t n) {
    if (n == 0) {
        throw std::invalid_argument("gen_pqr_triple: empty size");
    }
    Generator g(cfg);
    const auto nil = static_cast<std::size_t>(g.rng().between(1, static_cast<std::int64_t>(n)));
    const std::size_t core = n - nil;

    Matrix p(n, n);
    p.set_block(0, 0, g.random_index(core));
    Matrix q(n, n);
    q.set_block(core, core, g.strictly_upper(nil));
    Matrix r(n, n);
    r.set_block(0, core, g.matrix(core, nil));

    auto [t, t_inv] = g.unimodular(n);
    PqrTriple out{t * p * t_inv, t * q * t_inv, t * r * t_inv};
    const bool ok = (out.P * out.Q).is_zero() && (out.Q * out.P).is_zero() && (out.Q * out.R).is_zero() &&
                    (out.R * out.P).is_zero() && (out.R * out.R).is_zero() && is_nilpotent(out.Q);
    if (!ok) {
        throw ComputationInvariantError("gen_pqr_triple: product conditions failed");
    }
    return out;
}

}  // namespace drazin
