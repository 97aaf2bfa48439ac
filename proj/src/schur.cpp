#include "drazin/schur.hpp"

#include <algorithm>

namespace drazin {

namespace {

constexpr std::array<FormulaId, 13> kFormulas = {
    FormulaId::SMW_INVERSE,  FormulaId::T_A_FORM1,   FormulaId::T_A_FORM2,          FormulaId::COR_A_STRONG,
    FormulaId::COR_A_PROJEQ, FormulaId::T_B_FORM1,   FormulaId::T_B_FORM2,          FormulaId::T_GAMMA_A,
    FormulaId::COR_GAMMA_A,  FormulaId::T_GAMMA_B,   FormulaId::T_INTERTWINE,       FormulaId::COR_INTERTWINE_INV,
    FormulaId::JACOBSON,
};

struct FormulaInfo {
    std::string_view token;
    std::string_view description;
};

FormulaInfo info(FormulaId f) {
    switch (f) {
        case FormulaId::SMW_INVERSE:
            return {"SMW_INVERSE",
                    "A, D, Z invertible: (A-CD^{-1}B)^{-1} = A^{-1} + A^{-1}C Z^{-1} B A^{-1}"};
        case FormulaId::T_A_FORM1:
            return {"T_A_FORM1",
                    "A^pi C D^d B = 0, K D^pi Z^d H = K D^d Z^pi H: "
                    "S^d = M + sum_{i<k} M^{i+2} S A^i A^pi, M = A^d + K Z^d H"};
        case FormulaId::T_A_FORM2:
            return {"T_A_FORM2",
                    "same hypotheses as T_A_FORM1: S^d = M - sum M^{i+1} A^d C Z^d B A^i A^pi "
                    "+ sum M^{i+1} A^d C (Z^d D^pi - Z^pi D^d) B A^i"};
        case FormulaId::COR_A_STRONG:
            return {"COR_A_STRONG",
                    "A^pi C D^d B = 0, C D^pi Z^d B = 0, C D^d Z^pi B = 0: the T_A_FORM2 expression"};
        case FormulaId::COR_A_PROJEQ:
            return {"COR_A_PROJEQ",
                    "A^pi C D^d B = 0, D^pi = Z^pi: S^d = M - sum_{i<k} M^{i+1} A^d C Z^d B A^i A^pi"};
        case FormulaId::T_B_FORM1:
            return {"T_B_FORM1",
                    "C D^d B A^pi = 0, K Z^pi D^d H = K Z^d D^pi H: "
                    "S^d = M + sum_{i<k} A^i A^pi S M^{i+2}"};
        case FormulaId::T_B_FORM2:
            return {"T_B_FORM2",
                    "same hypotheses as T_B_FORM1: S^d = M - sum A^pi A^i C Z^d B A^d M^{i+1} "
                    "+ sum A^i C (D^pi Z^d - D^d Z^pi) B A^d M^{i+1}"};
        case FormulaId::T_GAMMA_A:
            return {"T_GAMMA_A",
                    "A^pi C D^d B = 0, K G^d H S A^d = 0, K G^pi D^d H = 0 (G = HK, L = I - K G^d H): "
                    "S^d = L A^d L - sum (L A^d)^{i+2} K G^d H S A^i - sum (L A^d)^{i+1} K G^pi D^d B A^i"};
        case FormulaId::COR_GAMMA_A:
            return {"COR_GAMMA_A",
                    "A^pi C D^d B = 0, C G^d Z D^d B = 0, C G^d D^pi B = 0, C G^pi D^d B = 0: "
                    "S^d = L A^d L + sum_{i<k} (L A^d)^{i+2} K G^d B A^i A^pi"};
        case FormulaId::T_GAMMA_B:
            return {"T_GAMMA_B",
                    "C D^d B A^pi = 0, K D^d Z G^d H = 0, K D^pi G^d H = 0, K D^d G^pi H = 0: "
                    "S^d = L A^d L - sum A^i S K G^d H (A^d L)^{i+2} - sum A^i C D^d G^pi H (A^d L)^{i+1}"};
        case FormulaId::T_INTERTWINE:
            return {"T_INTERTWINE",
                    "A^pi C D^d B = 0, D^pi B A^d C = 0, D^d B A A^d = D^d D B A^d: "
                    "S^d = T + sum_{i<k} T^{i+2} S A^i A^pi, T = A^d + A^d C Z^d D^d B A A^d "
                    "- sum_{i<s} (A^d)^{i+2} C D D^d Z^i Z^pi D^d B A A^d, s = ind(Z)"};
        case FormulaId::COR_INTERTWINE_INV:
            return {"COR_INTERTWINE_INV",
                    "A, D invertible, DB = BA: (A-CD^{-1}B)^d = A^{-1} + A^{-1} C Z^d D^{-1} B "
                    "- sum_{i<s} A^{-i-2} C Z^i Z^pi D^{-1} B"};
        case FormulaId::JACOBSON:
            return {"JACOBSON",
                    "no hypotheses: (I-CB)^d = I + C (I-BC)^d B - sum_{i<s} C (I-BC)^i (I-BC)^pi B, "
                    "s = ind(I-BC)"};
    }
    return {"?", "?"};
}

class ConditionBuilder {
public:
    explicit ConditionBuilder(FormulaId f) { report_.formula = f; }

    ConditionBuilder& zero(std::string name, Matrix residual) {
        const bool holds = residual.is_zero();
        report_.checks.push_back({std::move(name), std::move(residual), holds});
        report_.all_hold = report_.all_hold && holds;
        return *this;
    }

    ConditionBuilder& equal(std::string name, const Matrix& lhs, const Matrix& rhs) {
        return zero(std::move(name), lhs - rhs);
    }

    ConditionReport take() { return std::move(report_); }

private:
    ConditionReport report_;
};

}  // namespace

std::span<const FormulaId> all_formulas() { return kFormulas; }

std::string_view to_token(FormulaId f) { return info(f).token; }

std::string_view describe(FormulaId f) { return info(f).description; }

std::optional<FormulaId> formula_from_token(std::string_view token) {
    for (FormulaId f : kFormulas) {
        if (info(f).token == token) {
            return f;
        }
    }
    return std::nullopt;
}

void SchurInstance::validate() const {
    if (!A.is_square() || !D.is_square()) {
        throw ShapeError("instance: A (" + A.shape() + ") and D (" + D.shape() + ") must be square");
    }
    if (B.rows() != D.rows() || B.cols() != A.rows()) {
        throw ShapeError("instance: B is " + B.shape() + ", expected " + std::to_string(D.rows()) + "x" +
                         std::to_string(A.rows()));
    }
    if (C.rows() != A.rows() || C.cols() != D.rows()) {
        throw ShapeError("instance: C is " + C.shape() + ", expected " + std::to_string(A.rows()) + "x" +
                         std::to_string(D.rows()));
    }
}

SchurInstance jacobson_instance(const Matrix& b, const Matrix& c) {
    SchurInstance inst{Matrix::identity(c.rows()), b, c, Matrix::identity(c.cols())};
    inst.validate();
    return inst;
}

DerivedCache derive(const SchurInstance& inst) {
    inst.validate();
    DerivedCache c;
    c.inst = inst;
    c.a = drazin(inst.A);
    c.d = drazin(inst.D);

    const Matrix& Ad = c.a.dinv;
    const Matrix a_ad = inst.A * Ad;
    const Matrix d_dd = inst.D * c.d.dinv;

    c.S = inst.A - inst.C * c.d.dinv * inst.B;
    c.H = inst.B * Ad;
    c.K = Ad * inst.C;
    c.Z = inst.D - c.H * inst.C;
    c.Gamma = c.H * c.K;

    c.z = drazin(c.Z);
    c.gamma = drazin(c.Gamma);

    c.E = a_ad - c.K * c.gamma.dinv * c.H;
    c.S_A_right = c.S * a_ad;
    c.S_A_sym = a_ad * c.S_A_right;
    c.Z_D = d_dd * c.Z * d_dd;
    c.M = Ad + c.K * c.z.dinv * c.H;
    c.z_d = drazin(c.Z_D);
    return c;
}

ConditionReport check_conditions(const DerivedCache& c, FormulaId f) {
    const SchurInstance& in = c.inst;
    const Matrix& Ad = c.a.dinv;
    const Matrix& Api = c.a.projector;
    const Matrix& Dd = c.d.dinv;
    const Matrix& Dpi = c.d.projector;
    const Matrix& Zd = c.z.dinv;
    const Matrix& Zpi = c.z.projector;
    const Matrix& Gd = c.gamma.dinv;
    const Matrix& Gpi = c.gamma.projector;

    ConditionBuilder b(f);
    switch (f) {
        case FormulaId::SMW_INVERSE:
            b.zero("A^pi (A invertible)", Api).zero("D^pi (D invertible)", Dpi).zero("Z^pi (Z invertible)", Zpi);
            break;
        case FormulaId::T_A_FORM1:
        case FormulaId::T_A_FORM2:
            b.zero("A^pi C D^d B", Api * in.C * Dd * in.B)
                .equal("K D^pi Z^d H - K D^d Z^pi H", c.K * Dpi * Zd * c.H, c.K * Dd * Zpi * c.H);
            break;
        case FormulaId::COR_A_STRONG:
            b.zero("A^pi C D^d B", Api * in.C * Dd * in.B)
                .zero("C D^pi Z^d B", in.C * Dpi * Zd * in.B)
                .zero("C D^d Z^pi B", in.C * Dd * Zpi * in.B);
            break;
        case FormulaId::COR_A_PROJEQ:
            b.zero("A^pi C D^d B", Api * in.C * Dd * in.B).equal("D^pi - Z^pi", Dpi, Zpi);
            break;
        case FormulaId::T_B_FORM1:
        case FormulaId::T_B_FORM2:
            b.zero("C D^d B A^pi", in.C * Dd * in.B * Api)
                .equal("K Z^pi D^d H - K Z^d D^pi H", c.K * Zpi * Dd * c.H, c.K * Zd * Dpi * c.H);
            break;
        case FormulaId::T_GAMMA_A:
            b.zero("A^pi C D^d B", Api * in.C * Dd * in.B)
                .zero("K G^d H S A^d", c.K * Gd * c.H * c.S * Ad)
                .zero("K G^pi D^d H", c.K * Gpi * Dd * c.H);
            break;
        case FormulaId::COR_GAMMA_A:
            b.zero("A^pi C D^d B", Api * in.C * Dd * in.B)
                .zero("C G^d Z D^d B", in.C * Gd * c.Z * Dd * in.B)
                .zero("C G^d D^pi B", in.C * Gd * Dpi * in.B)
                .zero("C G^pi D^d B", in.C * Gpi * Dd * in.B);
            break;
        case FormulaId::T_GAMMA_B:
            b.zero("C D^d B A^pi", in.C * Dd * in.B * Api)
                .zero("K D^d Z G^d H", c.K * Dd * c.Z * Gd * c.H)
                .zero("K D^pi G^d H", c.K * Dpi * Gd * c.H)
                .zero("K D^d G^pi H", c.K * Dd * Gpi * c.H);
            break;
        case FormulaId::T_INTERTWINE:
            b.zero("A^pi C D^d B", Api * in.C * Dd * in.B)
                .zero("D^pi B A^d C", Dpi * c.H * in.C)
                .equal("D^d B A A^d - D^d D B A^d", Dd * in.B * in.A * Ad, Dd * in.D * c.H);
            break;
        case FormulaId::COR_INTERTWINE_INV:
            b.equal("DB - BA", in.D * in.B, in.B * in.A)
                .zero("A^pi (A invertible)", Api)
                .zero("D^pi (D invertible)", Dpi);
            break;
        case FormulaId::JACOBSON:
            break;
    }
    return b.take();
}

ConditionReport check_conditions(const SchurInstance& inst, FormulaId f) {
    return check_conditions(derive(inst), f);
}

GroupEquivalence lemma_group_equiv(const DerivedCache& c) {
    const Matrix& Dd = c.d.dinv;
    const Matrix& Dpi = c.d.projector;
    const Matrix& Zd = c.z.dinv;
    const Matrix& Zpi = c.z.projector;
    const Matrix a_ad = c.inst.A * c.a.dinv;

    GroupEquivalence out;
    out.flags[0] = c.K * Dpi * Zd * c.H == c.K * Dd * Zpi * c.H;
    out.flags[1] = c.S_A_sym * c.M == a_ad;
    out.flags[2] = c.M * c.S_A_sym == a_ad;
    out.flags[3] = c.K * Zpi * Dd * c.H == c.K * Zd * Dpi * c.H;

    if (std::all_of(out.flags.begin(), out.flags.end(), [](bool v) { return v; })) {
        const Matrix& s = c.S_A_sym;
        const Matrix& m = c.M;
        if (!(s * m * s == s) || !(m * s * m == m) || !(s * m == m * s)) {
            throw ComputationInvariantError("lemma_group_equiv: M is not the group inverse of S_A");
        }
        out.group_inverse = m;
    }
    return out;
}

GroupEquivalence lemma_group_equiv(const SchurInstance& inst) {
    return lemma_group_equiv(derive(inst));
}

namespace {

// Shared pieces of the Gamma-family formulas: L = I - K G^d H.
Matrix gamma_left(const DerivedCache& c) {
    return Matrix::identity(c.inst.n()) - c.K * c.gamma.dinv * c.H;
}

Matrix eval_jacobson(const SchurInstance& inst) {
    const Matrix& B = inst.B;
    const Matrix& C = inst.C;
    const Matrix w = Matrix::identity(B.rows()) - B * C;
    const DrazinResult wd = drazin(w);
    Matrix out = Matrix::identity(C.rows()) + C * wd.dinv * B;
    PowerSequence w_pow(w);
    for (std::size_t i = 0; i < wd.index; ++i) {
        out -= C * w_pow[i] * wd.projector * B;
    }
    return out;
}

}  // namespace

Matrix eval_formula(const DerivedCache& c, FormulaId f) {
    const SchurInstance& in = c.inst;
    const std::size_t n = in.n();
    const std::size_t k = c.a.index;
    const Matrix& A = in.A;
    const Matrix& Ad = c.a.dinv;
    const Matrix& Api = c.a.projector;
    const Matrix& Dd = c.d.dinv;
    const Matrix& Dpi = c.d.projector;
    const Matrix& Zd = c.z.dinv;
    const Matrix& Zpi = c.z.projector;
    const Matrix& Gd = c.gamma.dinv;
    const Matrix& Gpi = c.gamma.projector;

    PowerSequence a_pow(A);

    switch (f) {
        case FormulaId::SMW_INVERSE:
            return Ad + Ad * in.C * Zd * in.B * Ad;

        case FormulaId::T_A_FORM1: {
            PowerSequence m_pow(c.M);
            Matrix out = c.M;
            for (std::size_t i = 0; i < k; ++i) {
                out += m_pow[i + 2] * c.S * a_pow[i] * Api;
            }
            return out;
        }

        case FormulaId::T_A_FORM2:
        case FormulaId::COR_A_STRONG:
        case FormulaId::COR_A_PROJEQ: {
            PowerSequence m_pow(c.M);
            const Matrix kzb = c.K * Zd * in.B;
            const Matrix mixed = c.K * (Zd * Dpi - Zpi * Dd) * in.B;
            Matrix out = c.M;
            for (std::size_t i = 0; i < k; ++i) {
                out -= m_pow[i + 1] * kzb * a_pow[i] * Api;
                if (f != FormulaId::COR_A_PROJEQ) {
                    out += m_pow[i + 1] * mixed * a_pow[i];
                }
            }
            return out;
        }

        case FormulaId::T_B_FORM1: {
            PowerSequence m_pow(c.M);
            Matrix out = c.M;
            for (std::size_t i = 0; i < k; ++i) {
                out += a_pow[i] * Api * c.S * m_pow[i + 2];
            }
            return out;
        }

        case FormulaId::T_B_FORM2: {
            PowerSequence m_pow(c.M);
            const Matrix czh = in.C * Zd * c.H;
            const Matrix mixed = in.C * (Dpi * Zd - Dd * Zpi) * c.H;
            Matrix out = c.M;
            for (std::size_t i = 0; i < k; ++i) {
                out -= Api * a_pow[i] * czh * m_pow[i + 1];
                out += a_pow[i] * mixed * m_pow[i + 1];
            }
            return out;
        }

        case FormulaId::T_GAMMA_A: {
            const Matrix l = gamma_left(c);
            PowerSequence la_pow(l * Ad);
            const Matrix kgh_s = c.K * Gd * c.H * c.S;
            const Matrix kg_db = c.K * Gpi * Dd * in.B;
            Matrix out = l * Ad * l;
            for (std::size_t i = 0; i < k; ++i) {
                out -= la_pow[i + 2] * kgh_s * a_pow[i];
                out -= la_pow[i + 1] * kg_db * a_pow[i];
            }
            return out;
        }

        case FormulaId::COR_GAMMA_A: {
            const Matrix l = gamma_left(c);
            PowerSequence la_pow(l * Ad);
            const Matrix kgb = c.K * Gd * in.B;
            Matrix out = l * Ad * l;
            for (std::size_t i = 0; i < k; ++i) {
                out += la_pow[i + 2] * kgb * a_pow[i] * Api;
            }
            return out;
        }

        case FormulaId::T_GAMMA_B: {
            const Matrix l = gamma_left(c);
            PowerSequence al_pow(Ad * l);
            const Matrix s_kgh = c.S * c.K * Gd * c.H;
            const Matrix cdg_h = in.C * Dd * Gpi * c.H;
            Matrix out = l * Ad * l;
            for (std::size_t i = 0; i < k; ++i) {
                out -= a_pow[i] * s_kgh * al_pow[i + 2];
                out -= a_pow[i] * cdg_h * al_pow[i + 1];
            }
            return out;
        }

        case FormulaId::T_INTERTWINE: {
            const Matrix tail = Dd * in.B * A * Ad;
            const Matrix c_dd = in.C * in.D * Dd;
            PowerSequence ad_pow(Ad);
            PowerSequence z_pow(c.Z);
            Matrix core = Ad + Ad * in.C * Zd * tail;
            for (std::size_t i = 0; i < c.z.index; ++i) {
                core -= ad_pow[i + 2] * c_dd * z_pow[i] * Zpi * tail;
            }
            PowerSequence core_pow(core);
            Matrix out = core;
            for (std::size_t i = 0; i < k; ++i) {
                out += core_pow[i + 2] * c.S * a_pow[i] * Api;
            }
            return out;
        }

        case FormulaId::COR_INTERTWINE_INV: {
            const Matrix tail = Dd * in.B;
            PowerSequence ad_pow(Ad);
            PowerSequence z_pow(c.Z);
            Matrix out = Ad + Ad * in.C * Zd * tail;
            for (std::size_t i = 0; i < c.z.index; ++i) {
                out -= ad_pow[i + 2] * in.C * z_pow[i] * Zpi * tail;
            }
            return out;
        }

        case FormulaId::JACOBSON:
            return eval_jacobson(in);
    }
    return Matrix(n, n);
}

Matrix eval_formula(const SchurInstance& inst, FormulaId f) {
    if (f == FormulaId::JACOBSON) {
        inst.validate();
        return eval_jacobson(inst);
    }
    return eval_formula(derive(inst), f);
}

Matrix oracle_value(const DerivedCache& c, FormulaId f) {
    if (f == FormulaId::JACOBSON) {
        const Matrix& B = c.inst.B;
        const Matrix& C = c.inst.C;
        return drazin(Matrix::identity(C.rows()) - C * B).dinv;
    }
    return drazin(c.S).dinv;
}

VerificationReport verify(const DerivedCache& c, FormulaId f) {
    VerificationReport r;
    r.formula = f;
    r.conditions = check_conditions(c, f);
    r.formula_value = eval_formula(c, f);
    r.oracle_value = oracle_value(c, f);
    r.match = r.formula_value == r.oracle_value;
    return r;
}

VerificationReport verify(const SchurInstance& inst, FormulaId f) {
    return verify(derive(inst), f);
}

}  // namespace drazin
