#ifndef DRAZIN_FORGE_HPP
#define DRAZIN_FORGE_HPP

#include "drazin/matrix.hpp"
#include "drazin/schur.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace drazin {

/// splitmix64 (Steele, Lea, Flood): state += 0x9E3779B97F4A7C15, then the
/// 30/27/31 xor-shift-multiply finalizer.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

    std::uint64_t next() noexcept;
    /// Uniform in [0, bound); bound must be positive.
    std::uint64_t below(std::uint64_t bound) noexcept;
    /// Uniform in [lo, hi].
    std::int64_t between(std::int64_t lo, std::int64_t hi) noexcept;
    bool coin() noexcept { return (next() >> 63U) != 0; }

private:
    std::uint64_t state_;
};

/// Independent per-trial seed: the splitmix64 finalizer of master combined with
/// the finalized index. Depends only on its arguments.
std::uint64_t mix_seed(std::uint64_t master, std::uint64_t index) noexcept;

struct GenConfig {
    std::uint64_t seed = 0;
    std::size_t n = 2;
    std::size_t m = 2;
    std::int64_t entry_bound = 3;  // numerators in [-b, b], denominators in [1, b]
    std::size_t retry_budget = 200;
    bool complex_entries = false;  // draw imaginary parts too
};

class GenerationFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class Family {
    ALL_INVERTIBLE,         // A, D invertible, retried until Z is invertible
    RANGE_C,                // C = A A^d C0, so A^pi C = 0
    ANNIHILATED_B,          // B A^d = 0, so H = 0 and Z = D
    RANGE_C_ANNIHILATED_B,  // both of the above
    RANGE_B_ANNIHILATED_C,  // B = B0 A A^d and A^d C = 0 (mirror of the above)
    ZERO_C,
    ZERO_B,
    JACOBSON_BLOCKS,        // A = I_n, D = I_m
    INTERTWINE,             // m = n, A invertible, D = A, B = q(A)
    INTERTWINE_SINGULAR,    // m = n, ind(A) >= 1, D = A, B = q(A), C = A A^d C0
    ZERO_Z,                 // A^pi C = 0, B A^pi = 0, D = B A^d C invertible, Gamma invertible
    PRESCRIBED_INDEX,       // A, D with random prescribed index, B, C free
    REJECTION,              // sparse random draws until the target's hypotheses hold
};

struct FamilySpec {
    Family family = Family::PRESCRIBED_INDEX;
    FormulaId target = FormulaId::T_A_FORM1;  // meaningful for REJECTION only

    friend bool operator==(const FamilySpec&, const FamilySpec&) = default;
};

std::span<const Family> all_families();
/// "ZERO_C", "REJECTION:T_A_FORM1", ...
std::string to_token(const FamilySpec& spec);
std::optional<FamilySpec> family_from_token(std::string_view token);

/// Formulas whose hypotheses every emitted instance of the family satisfies.
std::vector<FormulaId> guaranteed_formulas(const FamilySpec& spec);
/// Whether gen_instance can serve (n, m) for this family.
bool sizes_supported(const FamilySpec& spec, std::size_t n, std::size_t m);
/// Families guaranteeing f, followed by REJECTION(f).
std::vector<FamilySpec> families_for(FormulaId f);

Matrix gen_matrix(const GenConfig& cfg, std::size_t rows, std::size_t cols);
Matrix gen_invertible(const GenConfig& cfg, std::size_t n);
/// Strictly upper triangular matrix conjugated by a random unimodular matrix.
Matrix gen_nilpotent(const GenConfig& cfg, std::size_t n);
/// block-diag(invertible core, Jordan-type nilpotent of nilpotency k) conjugated
/// by a random unimodular matrix; index_of(result) == k is asserted.
Matrix gen_index_k(const GenConfig& cfg, std::size_t n, std::size_t k);

/// Emits an instance of size (cfg.n, cfg.m) satisfying the family's guarantee,
/// which is asserted before return. GenerationFailure when the retry budget
/// runs out or the sizes do not suit the family.
SchurInstance gen_instance(const GenConfig& cfg, const FamilySpec& spec);

/// P, Q with PQ = 0: Q singular, P = R V^T with the columns of V spanning null(Q^T).
struct AnnihilatingPair {
    Matrix P;
    Matrix Q;
};
AnnihilatingPair gen_annihilating_pair(const GenConfig& cfg, std::size_t n);

/// P, Q, R with PQ = QP = QR = RP = R^2 = 0 and Q nilpotent.
struct PqrTriple {
    Matrix P;
    Matrix Q;
    Matrix R;
};
PqrTriple gen_pqr_triple(const GenConfig& cfg, std::size_t n);

}  // namespace drazin

#endif  // DRAZIN_FORGE_HPP
