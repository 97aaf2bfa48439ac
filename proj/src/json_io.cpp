#include "drazin/json_io.hpp"

namespace drazin {

ParseError::ParseError(std::string path, const std::string& message)
    : std::runtime_error(path + ": " + message), path_(std::move(path)) {}

namespace {

const Json& require_field(const Json& obj, const char* key, const std::string& path) {
    if (!obj.is_object()) {
        throw ParseError(path, "expected an object");
    }
    auto it = obj.find(key);
    if (it == obj.end()) {
        throw ParseError(path, std::string("missing field \"") + key + "\"");
    }
    return *it;
}

std::size_t parse_dimension(const Json& j, const std::string& path) {
    if (!j.is_number_integer() || j.get<long long>() < 0) {
        throw ParseError(path, "expected a non-negative integer");
    }
    return j.get<std::size_t>();
}

mpq_class parse_part(const Json& j, const std::string& path) {
    if (!j.is_string()) {
        throw ParseError(path, "expected a rational string such as \"-3/4\"");
    }
    try {
        return parse_rational(j.get<std::string>());
    } catch (const std::invalid_argument& e) {
        throw ParseError(path, e.what());
    }
}

}  // namespace

Json emit_scalar(const GaussianRational& z) {
    return Json{{"re", format_rational(z.re())}, {"im", format_rational(z.im())}};
}

GaussianRational parse_scalar(const Json& j, const std::string& path) {
    mpq_class re = parse_part(require_field(j, "re", path), path + ".re");
    mpq_class im = 0;
    if (auto it = j.find("im"); it != j.end()) {
        im = parse_part(*it, path + ".im");
    }
    return {std::move(re), std::move(im)};
}

Json emit_matrix(const Matrix& m) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) {
            row.push_back(emit_scalar(m(i, j)));
        }
        rows.push_back(std::move(row));
    }
    return Json{{"rows", m.rows()}, {"cols", m.cols()}, {"entries", std::move(rows)}};
}

Matrix parse_matrix(const Json& j, const std::string& path) {
    const std::size_t rows = parse_dimension(require_field(j, "rows", path), path + ".rows");
    const std::size_t cols = parse_dimension(require_field(j, "cols", path), path + ".cols");
    const Json& entries = require_field(j, "entries", path);
    const std::string entries_path = path + ".entries";
    if (!entries.is_array()) {
        throw ParseError(entries_path, "expected an array of rows");
    }
    if (entries.size() != rows) {
        throw ParseError(entries_path, "has " + std::to_string(entries.size()) + " rows, header says " +
                                           std::to_string(rows));
    }
    Matrix out(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        const std::string row_path = entries_path + "[" + std::to_string(i) + "]";
        const Json& row = entries[i];
        if (!row.is_array() || row.size() != cols) {
            throw ParseError(row_path, "ragged row: expected an array of " + std::to_string(cols) + " entries");
        }
        for (std::size_t c = 0; c < cols; ++c) {
            out(i, c) = parse_scalar(row[c], row_path + "[" + std::to_string(c) + "]");
        }
    }
    return out;
}

Json emit_instance(const SchurInstance& inst) {
    return Json{{"A", emit_matrix(inst.A)},
                {"B", emit_matrix(inst.B)},
                {"C", emit_matrix(inst.C)},
                {"D", emit_matrix(inst.D)}};
}

SchurInstance parse_instance(const Json& j, bool identity_blocks_optional) {
    if (!j.is_object()) {
        throw ParseError("$", "expected an instance object");
    }
    SchurInstance inst;
    inst.B = parse_matrix(require_field(j, "B", "$"), "$.B");
    inst.C = parse_matrix(require_field(j, "C", "$"), "$.C");
    auto square = [&](const char* key, std::size_t size) {
        if (identity_blocks_optional && !j.contains(key)) {
            return Matrix::identity(size);
        }
        return parse_matrix(require_field(j, key, "$"), std::string("$.") + key);
    };
    inst.A = square("A", inst.C.rows());
    inst.D = square("D", inst.C.cols());
    try {
        inst.validate();
    } catch (const ShapeError& e) {
        throw ParseError("$", e.what());
    }
    return inst;
}

Json emit_drazin(const DrazinResult& r) {
    return Json{{"dinv", emit_matrix(r.dinv)}, {"index", r.index}, {"projector", emit_matrix(r.projector)}};
}

Json emit_condition_report(const ConditionReport& r) {
    Json checks = Json::array();
    for (const auto& c : r.checks) {
        checks.push_back(Json{{"name", c.name}, {"residual", emit_matrix(c.residual)}, {"holds", c.holds}});
    }
    return Json{{"formula", std::string(to_token(r.formula))}, {"checks", std::move(checks)}, {"all_hold", r.all_hold}};
}

Json emit_verification_report(const VerificationReport& r) {
    return Json{{"formula", std::string(to_token(r.formula))},
                {"conditions", emit_condition_report(r.conditions)},
                {"formula_value", emit_matrix(r.formula_value)},
                {"oracle_value", emit_matrix(r.oracle_value)},
                {"match", r.match}};
}

}  // namespace drazin
