#ifndef DRAZIN_JSON_IO_HPP
#define DRAZIN_JSON_IO_HPP

#include "drazin/drazin.hpp"
#include "drazin/schur.hpp"

#include <json.hpp>

#include <stdexcept>
#include <string>

namespace drazin {

using Json = nlohmann::ordered_json;

/// Malformed input; path() points at the offending element, e.g. "$.A.entries[1][0].re".
class ParseError : public std::runtime_error {
public:
    ParseError(std::string path, const std::string& message);
    const std::string& path() const noexcept { return path_; }

private:
    std::string path_;
};

Json emit_scalar(const GaussianRational& z);
GaussianRational parse_scalar(const Json& j, const std::string& path = "$");

/// {"rows": r, "cols": c, "entries": [[{"re": "p/q", "im": "r/s"}, ...], ...]}
Json emit_matrix(const Matrix& m);
Matrix parse_matrix(const Json& j, const std::string& path = "$");

/// {"A": Matrix, "B": Matrix, "C": Matrix, "D": Matrix}. With
/// identity_blocks_optional, a missing A or D defaults to the identity sized
/// from C (the JACOBSON reading).
Json emit_instance(const SchurInstance& inst);
SchurInstance parse_instance(const Json& j, bool identity_blocks_optional = false);

Json emit_drazin(const DrazinResult& r);
Json emit_condition_report(const ConditionReport& r);
Json emit_verification_report(const VerificationReport& r);

}  // namespace drazin

#endif  // DRAZIN_JSON_IO_HPP
