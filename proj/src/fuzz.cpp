#include "drazin/fuzz.hpp"

#include <algorithm>
#include <atomic>
#include <optional>
#include <thread>

namespace drazin {

namespace {

// FNV-1a over the cell label, so cell seeds do not depend on enum order.
std::uint64_t label_hash(std::string_view label) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (char c : label) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ULL;
    }
    return h;
}

enum class Outcome { generation_failure, hypothesis_fail, match, mismatch, error };

struct TrialResult {
    Outcome outcome = Outcome::generation_failure;
    std::uint64_t seed = 0;
    std::string message;
};

TrialResult run_trial(const FuzzOptions& opts, FormulaId f, const FamilySpec& family, std::size_t trial) {
    TrialResult out;
    out.seed = trial_seed(opts.seed, f, family, trial);
    GenConfig cfg{out.seed, opts.n, opts.m, opts.entry_bound, opts.retry_budget, opts.complex_entries};
    std::optional<SchurInstance> inst;
    try {
        inst = gen_instance(cfg, family);
    } catch (const GenerationFailure& e) {
        out.message = e.what();
        return out;
    } catch (const std::exception& e) {
        out.outcome = Outcome::error;
        out.message = e.what();
        return out;
    }
    try {
        const VerificationReport r = verify(*inst, f);
        if (!r.conditions.all_hold) {
            out.outcome = Outcome::hypothesis_fail;
        } else {
            out.outcome = r.match ? Outcome::match : Outcome::mismatch;
        }
    } catch (const std::exception& e) {
        out.outcome = Outcome::error;
        out.message = e.what();
    }
    return out;
}

FuzzCell run_cell(const FuzzOptions& opts, FormulaId f, const FamilySpec& family) {
    std::vector<TrialResult> results(opts.trials);
    const std::size_t jobs = std::clamp<std::size_t>(opts.jobs, 1, std::max<std::size_t>(opts.trials, 1));
    if (jobs == 1) {
        for (std::size_t t = 0; t < opts.trials; ++t) {
            results[t] = run_trial(opts, f, family, t);
        }
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::jthread> workers;
        for (std::size_t w = 0; w < jobs; ++w) {
            workers.emplace_back([&] {
                for (std::size_t t = next++; t < opts.trials; t = next++) {
                    results[t] = run_trial(opts, f, family, t);
                }
            });
        }
    }

    FuzzCell cell{f, family, opts.trials, 0, 0, 0, 0, {}, {}};
    for (const TrialResult& r : results) {
        switch (r.outcome) {
            case Outcome::generation_failure:
                ++cell.generation_failures;
                break;
            case Outcome::hypothesis_fail:
                ++cell.generated;
                break;
            case Outcome::match:
                ++cell.generated;
                ++cell.condition_pass;
                ++cell.matches;
                break;
            case Outcome::mismatch:
                ++cell.generated;
                ++cell.condition_pass;
                cell.mismatches.push_back({r.seed, f, family, {}});
                break;
            case Outcome::error:
                cell.errors.push_back({r.seed, f, family, r.message});
                break;
        }
    }
    return cell;
}

Json emit_finding(const FuzzFinding& x) {
    Json j{{"seed", x.seed}, {"formula", std::string(to_token(x.formula))}, {"family", to_token(x.family)}};
    if (!x.message.empty()) {
        j["message"] = x.message;
    }
    return j;
}

}  // namespace

std::uint64_t trial_seed(std::uint64_t master, FormulaId f, const FamilySpec& family, std::size_t trial) {
    const std::string label = std::string(to_token(f)) + "|" + to_token(family);
    return mix_seed(mix_seed(master, label_hash(label)), trial);
}

std::size_t FuzzReport::total_mismatches() const {
    std::size_t total = 0;
    for (const auto& c : cells) {
        total += c.mismatches.size();
    }
    return total;
}

std::size_t FuzzReport::total_errors() const {
    std::size_t total = 0;
    for (const auto& c : cells) {
        total += c.errors.size();
    }
    return total;
}

bool FuzzReport::generation_exhausted() const {
    for (FormulaId f : options.formulas) {
        std::size_t generated = 0;
        for (const auto& c : cells) {
            if (c.formula == f) {
                generated += c.generated;
            }
        }
        if (generated == 0 && options.trials > 0) {
            return true;
        }
    }
    return false;
}

FuzzReport run_fuzz(const FuzzOptions& opts) {
    FuzzReport report{opts, {}};
    for (FormulaId f : opts.formulas) {
        const std::vector<FamilySpec> families = opts.families.empty() ? families_for(f) : opts.families;
        for (const FamilySpec& family : families) {
            // Default selection skips families that cannot serve the requested sizes.
            if (opts.families.empty() && !sizes_supported(family, opts.n, opts.m)) {
                continue;
            }
            report.cells.push_back(run_cell(opts, f, family));
        }
    }
    return report;
}

Json emit_fuzz_report(const FuzzReport& report) {
    std::size_t trials = 0;
    std::size_t generated = 0;
    std::size_t condition_pass = 0;
    std::size_t matches = 0;
    std::size_t generation_failures = 0;
    Json mismatches = Json::array();
    Json errors = Json::array();
    Json cells = Json::array();
    for (const FuzzCell& c : report.cells) {
        trials += c.trials;
        generated += c.generated;
        condition_pass += c.condition_pass;
        matches += c.matches;
        generation_failures += c.generation_failures;
        for (const auto& x : c.mismatches) {
            mismatches.push_back(emit_finding(x));
        }
        for (const auto& x : c.errors) {
            errors.push_back(emit_finding(x));
        }
        cells.push_back(Json{{"formula", std::string(to_token(c.formula))},
                             {"family", to_token(c.family)},
                             {"trials", c.trials},
                             {"generated", c.generated},
                             {"condition_pass", c.condition_pass},
                             {"matches", c.matches},
                             {"mismatches", c.mismatches.size()},
                             {"generation_failures", c.generation_failures},
                             {"errors", c.errors.size()}});
    }
    const FuzzOptions& o = report.options;
    return Json{{"config",
                 {{"seed", o.seed},
                  {"n", o.n},
                  {"m", o.m},
                  {"entry_bound", o.entry_bound},
                  {"retry_budget", o.retry_budget},
                  {"complex", o.complex_entries},
                  {"trials_per_cell", o.trials}}},
                {"trials", trials},
                {"generated", generated},
                {"condition_pass", condition_pass},
                {"matches", matches},
                {"mismatches", std::move(mismatches)},
                {"generation_failures", generation_failures},
                {"errors", std::move(errors)},
                {"cells", std::move(cells)}};
}

}  // namespace drazin
