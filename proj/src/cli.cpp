#include "drazin/cli.hpp"

#include "drazin/forge.hpp"
#include "drazin/fuzz.hpp"
#include "drazin/json_io.hpp"
#include "drazin/schur.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

namespace drazin::cli {

namespace {

struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

Json read_json(const std::string& path) {
    std::string text;
    if (path == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        text = ss.str();
    } else {
        std::ifstream in(path);
        if (!in) {
            throw InputError("cannot open " + path);
        }
        std::ostringstream ss;
        ss << in.rdbuf();
        text = ss.str();
    }
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw InputError(path + ": invalid JSON: " + e.what());
    }
}

FormulaId require_formula(const std::string& token) {
    if (auto f = formula_from_token(token)) {
        return *f;
    }
    throw InputError("unknown formula token '" + token + "' (see `formulas`)");
}

FamilySpec require_family(const std::string& token) {
    if (auto f = family_from_token(token)) {
        return *f;
    }
    throw InputError("unknown family token '" + token + "' (see `families`)");
}

std::uint64_t default_seed() {
    if (const char* env = std::getenv("DRAZIN_SCHUR_SEED")) {
        try {
            return std::stoull(env);
        } catch (const std::exception&) {
            throw InputError(std::string("DRAZIN_SCHUR_SEED is not an unsigned integer: ") + env);
        }
    }
    return 0;
}

void print(std::ostream& out, const Json& j) { out << j.dump(2) << '\n'; }

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact Drazin inverses and generalized Schur complement formulas"};
    app.require_subcommand(1);

    std::string input;
    std::string formula_token;

    auto* drazin_cmd = app.add_subcommand("drazin", "Drazin inverse, index and spectral projector of a matrix");
    drazin_cmd->add_option("--input", input, "Matrix JSON file ('-' for stdin)")->required();

    auto* check_cmd = app.add_subcommand("check", "Evaluate the hypotheses of a formula on an instance");
    check_cmd->add_option("--input", input, "Instance JSON file ('-' for stdin)")->required();
    check_cmd->add_option("--formula", formula_token, "Formula token")->required();

    auto* verify_cmd = app.add_subcommand("verify", "Compare a formula against the Drazin oracle");
    verify_cmd->add_option("--input", input, "Instance JSON file ('-' for stdin)")->required();
    verify_cmd->add_option("--formula", formula_token, "Formula token")->required();

    FuzzOptions fuzz;
    std::string fuzz_formula = "all";
    std::vector<std::string> family_tokens;
    std::optional<std::uint64_t> seed;
    std::string report_path;
    auto* fuzz_cmd = app.add_subcommand("fuzz", "Seeded campaign over generated instances");
    fuzz_cmd->add_option("--formula", fuzz_formula, "Formula token or 'all'");
    fuzz_cmd->add_option("--family", family_tokens, "Family token(s); default: every family serving the formula");
    fuzz_cmd->add_option("--trials", fuzz.trials, "Trials per (formula, family) cell");
    fuzz_cmd->add_option("--n", fuzz.n, "Size of A")->check(CLI::PositiveNumber);
    fuzz_cmd->add_option("--m", fuzz.m, "Size of D")->check(CLI::PositiveNumber);
    fuzz_cmd->add_option("--entry-bound", fuzz.entry_bound, "Bound on drawn numerators/denominators")
        ->check(CLI::PositiveNumber);
    fuzz_cmd->add_option("--retry-budget", fuzz.retry_budget, "Draws allowed per generation")
        ->check(CLI::PositiveNumber);
    fuzz_cmd->add_option("--seed", seed, "Master seed (default: $DRAZIN_SCHUR_SEED or 0)");
    fuzz_cmd->add_flag("--complex", fuzz.complex_entries, "Draw nonzero imaginary parts");
    fuzz_cmd->add_option("--jobs", fuzz.jobs, "Worker threads")->check(CLI::PositiveNumber);
    fuzz_cmd->add_option("--report", report_path, "Also write the report JSON to this file");

    GenConfig gen;
    std::string gen_family;
    std::optional<std::uint64_t> gen_seed;
    auto* gen_cmd = app.add_subcommand("generate", "Emit one generated instance (reproduces a fuzz seed)");
    gen_cmd->add_option("--family", gen_family, "Family token")->required();
    gen_cmd->add_option("--seed", gen_seed, "Trial seed (default: $DRAZIN_SCHUR_SEED or 0)");
    gen_cmd->add_option("--n", gen.n, "Size of A")->check(CLI::PositiveNumber);
    gen_cmd->add_option("--m", gen.m, "Size of D")->check(CLI::PositiveNumber);
    gen_cmd->add_option("--entry-bound", gen.entry_bound)->check(CLI::PositiveNumber);
    gen_cmd->add_option("--retry-budget", gen.retry_budget)->check(CLI::PositiveNumber);
    gen_cmd->add_flag("--complex", gen.complex_entries);

    auto* formulas_cmd = app.add_subcommand("formulas", "List formula tokens");
    auto* families_cmd = app.add_subcommand("families", "List instance family tokens");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kSuccess;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    }

    try {
        if (*formulas_cmd) {
            Json list = Json::array();
            for (FormulaId f : all_formulas()) {
                list.push_back(Json{{"token", std::string(to_token(f))}, {"description", std::string(describe(f))}});
            }
            print(out, list);
            return kSuccess;
        }

        if (*families_cmd) {
            Json list = Json::array();
            for (Family fam : all_families()) {
                FamilySpec spec{fam, FormulaId::T_A_FORM1};
                Json guaranteed = Json::array();
                if (fam != Family::REJECTION) {
                    for (FormulaId f : guaranteed_formulas(spec)) {
                        guaranteed.push_back(std::string(to_token(f)));
                    }
                }
                const std::string token = fam == Family::REJECTION ? "REJECTION:<FORMULA>" : to_token(spec);
                list.push_back(Json{{"token", token}, {"guarantees", std::move(guaranteed)}});
            }
            print(out, list);
            return kSuccess;
        }

        if (*drazin_cmd) {
            const Matrix a = parse_matrix(read_json(input));
            if (!a.is_square()) {
                throw InputError("drazin: matrix is " + a.shape() + ", expected square");
            }
            const DrazinResult r = drazin(a);
            print(out, emit_drazin(r));
            err << "index " << r.index << "\n";
            return kSuccess;
        }

        if (*check_cmd || *verify_cmd) {
            const FormulaId f = require_formula(formula_token);
            const SchurInstance inst = parse_instance(read_json(input), f == FormulaId::JACOBSON);
            const DerivedCache cache = derive(inst);
            if (*check_cmd) {
                const ConditionReport r = check_conditions(cache, f);
                print(out, emit_condition_report(r));
                err << to_token(f) << ": hypotheses " << (r.all_hold ? "hold" : "fail") << '\n';
                return kSuccess;
            }
            const VerificationReport r = verify(cache, f);
            print(out, emit_verification_report(r));
            err << to_token(f) << ": hypotheses " << (r.conditions.all_hold ? "hold" : "fail") << ", formula "
                << (r.match ? "matches" : "differs from") << " the oracle\n";
            if (!r.conditions.all_hold) {
                return kConditionsNotMet;
            }
            return r.match ? kSuccess : kMismatch;
        }

        if (*gen_cmd) {
            const FamilySpec spec = require_family(gen_family);
            gen.seed = gen_seed ? *gen_seed : default_seed();
            try {
                print(out, emit_instance(gen_instance(gen, spec)));
            } catch (const GenerationFailure& e) {
                err << "generation failed: " << e.what() << '\n';
                return kGenerationExhausted;
            }
            return kSuccess;
        }

        if (*fuzz_cmd) {
            if (fuzz_formula == "all") {
                fuzz.formulas.assign(all_formulas().begin(), all_formulas().end());
            } else {
                fuzz.formulas = {require_formula(fuzz_formula)};
            }
            for (const auto& token : family_tokens) {
                fuzz.families.push_back(require_family(token));
            }
            fuzz.seed = seed ? *seed : default_seed();

            const FuzzReport report = run_fuzz(fuzz);
            const Json j = emit_fuzz_report(report);
            print(out, j);
            if (!report_path.empty()) {
                std::ofstream file(report_path);
                if (!file) {
                    throw InputError("cannot write report to " + report_path);
                }
                print(file, j);
            }
            for (const FuzzCell& c : report.cells) {
                err << to_token(c.formula) << " x " << to_token(c.family) << ": generated " << c.generated << "/"
                    << c.trials << ", hypotheses held " << c.condition_pass << ", matches " << c.matches
                    << ", mismatches " << c.mismatches.size() << '\n';
            }
            if (report.total_mismatches() > 0 || report.total_errors() > 0) {
                return kMismatch;
            }
            return report.generation_exhausted() ? kGenerationExhausted : kSuccess;
        }
    } catch (const InputError& e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << '\n';
        return kInputError;
    } catch (const ShapeError& e) {
        err << "shape error: " << e.what() << '\n';
        return kInputError;
    }
    return kInputError;
}

}  // namespace drazin::cli
