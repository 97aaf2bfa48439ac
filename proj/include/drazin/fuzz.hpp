#ifndef DRAZIN_FUZZ_HPP
#define DRAZIN_FUZZ_HPP

#include "drazin/forge.hpp"
#include "drazin/json_io.hpp"
#include "drazin/schur.hpp"

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace drazin {

struct FuzzOptions {
    std::vector<FormulaId> formulas;
    std::vector<FamilySpec> families;  // empty: families_for(formula) per formula
    std::size_t trials = 100;
    std::size_t n = 3;
    std::size_t m = 2;
    std::int64_t entry_bound = 3;
    std::uint64_t seed = 0;
    std::size_t retry_budget = 200;
    bool complex_entries = false;
    std::size_t jobs = 1;
};

struct FuzzFinding {
    std::uint64_t seed = 0;
    FormulaId formula{};
    FamilySpec family;
    std::string message;  // empty for plain mismatches
};

/// One (formula, family) cell of a campaign.
struct FuzzCell {
    FormulaId formula{};
    FamilySpec family;
    std::size_t trials = 0;
    std::size_t generated = 0;
    std::size_t condition_pass = 0;
    std::size_t matches = 0;
    std::size_t generation_failures = 0;
    std::vector<FuzzFinding> mismatches;
    std::vector<FuzzFinding> errors;  // unexpected exceptions; artifact defects
};

struct FuzzReport {
    FuzzOptions options;
    std::vector<FuzzCell> cells;

    std::size_t total_mismatches() const;
    std::size_t total_errors() const;
    /// True when some requested formula produced no instance from any family.
    bool generation_exhausted() const;
};

/// Seed used for trial `trial` of the (formula, family) cell.
std::uint64_t trial_seed(std::uint64_t master, FormulaId f, const FamilySpec& family, std::size_t trial);

/// Runs every cell; results are independent of opts.jobs.
FuzzReport run_fuzz(const FuzzOptions& opts);

Json emit_fuzz_report(const FuzzReport& report);

}  // namespace drazin

#endif  // DRAZIN_FUZZ_HPP
