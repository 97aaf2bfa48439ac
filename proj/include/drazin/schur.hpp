#ifndef DRAZIN_SCHUR_HPP
#define DRAZIN_SCHUR_HPP

#include "drazin/drazin.hpp"
#include "drazin/matrix.hpp"

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace drazin {

/// Block quadruple of the partitioned matrix [[A, C], [B, D]]:
/// A is n x n, B is m x n, C is n x m, D is m x m.
struct SchurInstance {
    Matrix A;
    Matrix B;
    Matrix C;
    Matrix D;

    std::size_t n() const noexcept { return A.rows(); }
    std::size_t m() const noexcept { return D.rows(); }

    /// Throws ShapeError unless the four blocks are compatible.
    void validate() const;

    friend bool operator==(const SchurInstance&, const SchurInstance&) = default;
};

/// Quantities shared by the hypotheses and formulas, computed once per instance.
struct DerivedCache {
    SchurInstance inst;

    DrazinResult a;  // A^d, ind(A), A^pi
    DrazinResult d;  // D^d, ind(D), D^pi

    Matrix S;        // A - C D^d B
    Matrix Z;        // D - B A^d C
    Matrix H;        // B A^d
    Matrix K;        // A^d C
    Matrix Gamma;    // H K
    Matrix E;        // A A^d - K Gamma^d H
    Matrix S_A_right;  // S A A^d
    Matrix S_A_sym;    // A A^d S A A^d
    Matrix Z_D;        // D D^d Z D D^d
    Matrix M;          // A^d + K Z^d H

    DrazinResult z;
    DrazinResult gamma;
    DrazinResult z_d;
};

enum class FormulaId {
    SMW_INVERSE,
    T_A_FORM1,
    T_A_FORM2,
    COR_A_STRONG,
    COR_A_PROJEQ,
    T_B_FORM1,
    T_B_FORM2,
    T_GAMMA_A,
    COR_GAMMA_A,
    T_GAMMA_B,
    T_INTERTWINE,
    COR_INTERTWINE_INV,
    JACOBSON,
};

std::span<const FormulaId> all_formulas();
std::string_view to_token(FormulaId f);
std::optional<FormulaId> formula_from_token(std::string_view token);
/// One-line statement of the hypotheses and the displayed expression.
std::string_view describe(FormulaId f);

struct ConditionCheck {
    std::string name;
    Matrix residual;
    bool holds = false;
};

struct ConditionReport {
    FormulaId formula{};
    std::vector<ConditionCheck> checks;
    bool all_hold = true;
};

struct VerificationReport {
    FormulaId formula{};
    ConditionReport conditions;
    Matrix formula_value;
    Matrix oracle_value;
    bool match = false;
};

struct GroupEquivalence {
    /// (1) K D^pi Z^d H = K D^d Z^pi H   (2) S_A M = A A^d
    /// (3) M S_A = A A^d                 (4) K Z^pi D^d H = K Z^d D^pi H
    std::array<bool, 4> flags{};
    /// M = A^d + K Z^d H, present iff all four statements hold.
    std::optional<Matrix> group_inverse;
};

DerivedCache derive(const SchurInstance& inst);

/// Evaluates every hypothesis of f as a residual compared exactly to zero.
ConditionReport check_conditions(const DerivedCache& cache, FormulaId f);
ConditionReport check_conditions(const SchurInstance& inst, FormulaId f);

/// Group-inverse characterisation of S_A = A A^d S A A^d.
GroupEquivalence lemma_group_equiv(const DerivedCache& cache);
GroupEquivalence lemma_group_equiv(const SchurInstance& inst);

/// Evaluates the closed form selected by f without checking its hypotheses.
/// Inverses in the invertible-case formulas are evaluated as Drazin inverses,
/// which agree whenever the hypotheses hold. JACOBSON reads only B and C and
/// evaluates with A = I_n, D = I_m.
Matrix eval_formula(const DerivedCache& cache, FormulaId f);
Matrix eval_formula(const SchurInstance& inst, FormulaId f);

/// The Drazin inverse the formula claims to represent: (A - C D^d B)^d, or
/// (I - CB)^d for JACOBSON.
Matrix oracle_value(const DerivedCache& cache, FormulaId f);

/// Conditions, formula value, oracle value and their exact comparison.
VerificationReport verify(const DerivedCache& cache, FormulaId f);
VerificationReport verify(const SchurInstance& inst, FormulaId f);

/// The instance JACOBSON is about: A = I_n, D = I_m with the given B, C.
SchurInstance jacobson_instance(const Matrix& b, const Matrix& c);

}  // namespace drazin

#endif  // DRAZIN_SCHUR_HPP
