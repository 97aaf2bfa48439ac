#include <doctest.h>

#include "drazin/elimination.hpp"
#include "drazin/forge.hpp"
#include "drazin/schur.hpp"
#include "oracle.hpp"

#include <algorithm>

using namespace drazin;

namespace {

GaussianRational q(long num, long den = 1) { return GaussianRational::from_fraction(num, den); }

SchurInstance scalar_instance(long a, long b, long c, long d) { return {{{a}}, {{b}}, {{c}}, {{d}}}; }

bool contains(const std::vector<FormulaId>& v, FormulaId f) { return std::find(v.begin(), v.end(), f) != v.end(); }

/// Instances drawn from every family at small sizes.
std::vector<SchurInstance> sample_instances(std::uint64_t seed, std::size_t per_family) {
    std::vector<SchurInstance> out;
    SplitMix64 rng(seed);
    for (Family fam : all_families()) {
        std::vector<FamilySpec> specs;
        if (fam == Family::REJECTION) {
            for (FormulaId f : {FormulaId::COR_A_STRONG, FormulaId::COR_A_PROJEQ, FormulaId::COR_GAMMA_A,
                                FormulaId::T_B_FORM1, FormulaId::T_INTERTWINE}) {
                specs.push_back({fam, f});
            }
        } else {
            specs.push_back({fam});
        }
        for (const FamilySpec& spec : specs) {
            for (std::size_t t = 0; t < per_family; ++t) {
                GenConfig cfg;
                cfg.seed = rng.next();
                cfg.n = 1 + rng.below(3);
                cfg.m = 1 + rng.below(3);
                if (fam == Family::INTERTWINE || fam == Family::INTERTWINE_SINGULAR) {
                    cfg.m = cfg.n;
                }
                if (fam == Family::ZERO_Z) {
                    cfg.m = std::min(cfg.m, cfg.n);
                }
                try {
                    out.push_back(gen_instance(cfg, spec));
                } catch (const GenerationFailure&) {
                }
            }
        }
    }
    return out;
}

}  // namespace

TEST_CASE("instance validation") {
    CHECK_NOTHROW(scalar_instance(1, 1, 1, 1).validate());
    SchurInstance bad{Matrix::identity(2), Matrix(1, 3), Matrix(2, 1), Matrix::identity(1)};
    CHECK_THROWS_AS(bad.validate(), ShapeError);
    CHECK_THROWS_AS(derive(bad), ShapeError);
}

TEST_CASE("derived quantities, scalar case") {
    // Direct arithmetic on mpq values: S = a - c b / d, Z = d - b c / a, Gamma = (b/a)(c/a).
    const mpq_class a = 2, b = 1, c = 1, d = 1;
    const mpq_class s = a - c * b / d;
    const mpq_class z = d - b * c / a;
    const mpq_class g = (b / a) * (c / a);
    const DerivedCache cache = derive(scalar_instance(2, 1, 1, 1));
    CHECK(cache.S == Matrix{{GaussianRational(s)}});
    CHECK(cache.Z == Matrix{{GaussianRational(z)}});
    CHECK(cache.Gamma == Matrix{{GaussianRational(g)}});
    CHECK(cache.S == Matrix{{1}});
    CHECK(cache.Z == Matrix{{q(1, 2)}});
    CHECK(cache.Gamma == Matrix{{q(1, 4)}});
}

TEST_CASE("derived quantities, structured cases") {
    SplitMix64 rng(2);
    const Matrix b = oracle::random_matrix(rng, 2, 3);
    const Matrix c = oracle::random_matrix(rng, 3, 2);

    const DerivedCache id = derive(jacobson_instance(b, c));
    CHECK(id.S == Matrix::identity(3) - c * b);
    CHECK(id.Z == Matrix::identity(2) - b * c);
    CHECK(id.H == b);
    CHECK(id.K == c);
    CHECK(id.Gamma == b * c);

    GenConfig cfg{7, 3, 2};
    const Matrix a = gen_index_k(cfg, 3, 2);
    const Matrix d = gen_index_k(cfg, 2, 1);
    const DerivedCache zc = derive({a, b, Matrix(3, 2), d});
    CHECK(zc.S == a);
    CHECK(zc.Z == d);
    CHECK(zc.K.is_zero());
    CHECK(zc.Gamma.is_zero());
    CHECK(zc.M == zc.a.dinv);
}

TEST_CASE("condition examples") {
    GenConfig cfg{21, 3, 2};
    const SchurInstance inv = gen_instance(cfg, {Family::ALL_INVERTIBLE});
    for (FormulaId f : {FormulaId::SMW_INVERSE, FormulaId::T_A_FORM1, FormulaId::T_A_FORM2, FormulaId::COR_A_STRONG,
                        FormulaId::COR_A_PROJEQ, FormulaId::T_B_FORM1, FormulaId::T_B_FORM2}) {
        CHECK(check_conditions(inv, f).all_hold);
    }

    SplitMix64 rng(4);
    const Matrix b = oracle::random_matrix(rng, 2, 3);
    const Matrix c = oracle::random_matrix(rng, 3, 2);
    const ConditionReport jac = check_conditions(jacobson_instance(b, c), FormulaId::JACOBSON);
    CHECK(jac.all_hold);
    CHECK(jac.checks.empty());

    // Singular A and D; C = 0 kills every hypothesis that contains C or K.
    const SchurInstance zero_c{Matrix{{1, 0, 0}, {0, 0, 1}, {0, 0, 0}}, Matrix{{1, 2, 0}, {0, 1, 1}}, Matrix(3, 2),
                               Matrix::diagonal({2, 0})};
    for (FormulaId f : all_formulas()) {
        const ConditionReport r = check_conditions(zero_c, f);
        if (f == FormulaId::SMW_INVERSE || f == FormulaId::COR_INTERTWINE_INV || f == FormulaId::T_INTERTWINE) {
            // D^d B A A^d = D^d D B A^d has no C in it.
            CHECK_MESSAGE(!r.all_hold, to_token(f));
        } else {
            CHECK_MESSAGE(r.all_hold, to_token(f));
        }
    }

    const ConditionReport failing = check_conditions(scalar_instance(1, 1, 1, 2), FormulaId::T_GAMMA_A);
    CHECK_FALSE(failing.all_hold);
    CHECK(failing.checks.size() == 3);
    CHECK(failing.checks[1].name == "K G^d H S A^d");
    CHECK_FALSE(failing.checks[1].holds);
    CHECK(failing.checks[1].residual == Matrix{{q(1, 2)}});
}

TEST_CASE("formula tokens") {
    CHECK(all_formulas().size() == 13);
    for (FormulaId f : all_formulas()) {
        CHECK(formula_from_token(to_token(f)) == f);
        CHECK_FALSE(describe(f).empty());
    }
    CHECK_FALSE(formula_from_token("T_A_FORM3").has_value());
}

TEST_CASE("evaluator micro-instances") {
    const SchurInstance smw = scalar_instance(2, 1, 1, 1);
    CHECK(eval_formula(smw, FormulaId::SMW_INVERSE) == Matrix{{1}});
    CHECK(oracle::inverse(derive(smw).S) == Matrix{{1}});
    CHECK(verify(smw, FormulaId::SMW_INVERSE).match);

    const Matrix b{{0, 1}};
    const Matrix c{{1}, {0}};
    const Matrix jac = eval_formula(jacobson_instance(b, c), FormulaId::JACOBSON);
    CHECK(jac == Matrix{{1, 1}, {0, 1}});
    CHECK(oracle::inverse(Matrix{{1, -1}, {0, 1}}) == jac);

    const Matrix a = Matrix::diagonal({1, 2});
    const SchurInstance tw{a, a, Matrix::identity(2), a};
    const DerivedCache cache = derive(tw);
    CHECK(cache.Z == Matrix::diagonal({0, 1}));
    CHECK(cache.z.index == 1);
    CHECK(cache.S == Matrix::diagonal({0, 1}));
    const Matrix expected = Matrix::diagonal({0, 1});
    CHECK(oracle::drazin(cache.S) == expected);
    CHECK(eval_formula(cache, FormulaId::COR_INTERTWINE_INV) == expected);
    CHECK(eval_formula(cache, FormulaId::T_INTERTWINE) == expected);
    CHECK(verify(cache, FormulaId::COR_INTERTWINE_INV).conditions.all_hold);
    CHECK(verify(cache, FormulaId::T_INTERTWINE).conditions.all_hold);
}

TEST_CASE("verification on generated instances") {
    SplitMix64 rng(55);
    for (Family fam : all_families()) {
        if (fam == Family::REJECTION) {
            continue;
        }
        const FamilySpec spec{fam};
        for (int t = 0; t < 8; ++t) {
            GenConfig cfg;
            cfg.seed = rng.next();
            cfg.n = 1 + rng.below(3);
            cfg.m = fam == Family::INTERTWINE || fam == Family::INTERTWINE_SINGULAR ? cfg.n : 1 + rng.below(cfg.n);
            const DerivedCache cache = derive(gen_instance(cfg, spec));
            for (FormulaId f : all_formulas()) {
                const VerificationReport r = verify(cache, f);
                if (contains(guaranteed_formulas(spec), f)) {
                    CHECK_MESSAGE(r.conditions.all_hold, to_token(spec), " ", to_token(f));
                }
                if (r.conditions.all_hold) {
                    CHECK_MESSAGE(r.match, to_token(spec), " ", to_token(f));
                    CHECK(r.oracle_value == oracle::drazin(f == FormulaId::JACOBSON
                                                              ? Matrix::identity(cfg.n) - cache.inst.C * cache.inst.B
                                                              : cache.S));
                }
            }
        }
    }
}

TEST_CASE("form equivalence and S_A coincidence") {
    for (const SchurInstance& inst : sample_instances(91, 6)) {
        const DerivedCache c = derive(inst);
        if (check_conditions(c, FormulaId::T_A_FORM1).all_hold) {
            CHECK(eval_formula(c, FormulaId::T_A_FORM1) == eval_formula(c, FormulaId::T_A_FORM2));
        }
        if (check_conditions(c, FormulaId::T_B_FORM1).all_hold) {
            CHECK(eval_formula(c, FormulaId::T_B_FORM1) == eval_formula(c, FormulaId::T_B_FORM2));
        }
        const Matrix hyp = c.a.projector * inst.C * c.d.dinv * inst.B;
        if (hyp.is_zero()) {
            CHECK(c.S_A_right == c.S_A_sym);
        }
    }
}

TEST_CASE("group inverse characterisation") {
    GenConfig cfg{8, 3, 2};
    const SchurInstance inv = gen_instance(cfg, {Family::ALL_INVERTIBLE});
    const GroupEquivalence g = lemma_group_equiv(inv);
    CHECK(std::all_of(g.flags.begin(), g.flags.end(), [](bool x) { return x; }));
    REQUIRE(g.group_inverse.has_value());
    const Matrix ai = inverse(inv.A);
    CHECK(*g.group_inverse == ai + ai * inv.C * inverse(derive(inv).Z) * inv.B * ai);

    const SchurInstance zc = gen_instance(cfg, {Family::ZERO_C});
    const GroupEquivalence gz = lemma_group_equiv(zc);
    REQUIRE(gz.group_inverse.has_value());
    CHECK(*gz.group_inverse == derive(zc).a.dinv);

    std::size_t true_count = 0;
    std::size_t false_count = 0;
    for (const SchurInstance& inst : sample_instances(92, 6)) {
        const DerivedCache c = derive(inst);
        const GroupEquivalence e = lemma_group_equiv(c);
        CHECK(e.flags[0] == e.flags[1]);
        CHECK(e.flags[1] == e.flags[2]);
        CHECK(e.flags[2] == e.flags[3]);
        CHECK(e.group_inverse.has_value() == e.flags[0]);
        if (e.group_inverse) {
            ++true_count;
            const Matrix& x = *e.group_inverse;
            const Matrix& s = c.S_A_sym;
            CHECK(s * x * s == s);
            CHECK(x * s * x == x);
            CHECK(s * x == x * s);
            CHECK(x == oracle::drazin(s));
        } else {
            ++false_count;
        }
    }
    CHECK(true_count > 0);
    CHECK(false_count > 0);
}

TEST_CASE("Dedekind finiteness in the corner algebra") {
    SplitMix64 rng(13);
    for (int t = 0; t < 60; ++t) {
        const std::size_t n = 2 + rng.below(4);
        const std::size_t r = 1 + rng.below(n - 1);
        const Matrix v = oracle::random_matrix(rng, n, r);
        const Matrix w = oracle::random_matrix(rng, r, n);
        const Matrix p = w * v;
        if (rank(p) < r) {
            continue;
        }
        const Matrix pinv = inverse(p);
        const Matrix e = v * pinv * w;
        REQUIRE(e * e == e);
        const Matrix i_e = Matrix::identity(n) - e;

        // x y = I_r in the r x r model of eMe; the (I-e) terms are annihilated.
        GenConfig cfg;
        cfg.seed = rng.next();
        const Matrix x = gen_invertible(cfg, r);
        const Matrix y = inverse(x);
        const Matrix big_x = v * x * pinv * w + oracle::random_matrix(rng, n, n) * i_e;
        const Matrix big_y = v * y * pinv * w + i_e * oracle::random_matrix(rng, n, n);
        REQUIRE(big_x * e * big_y == e);
        CHECK(e * big_y * e * big_x * e == e);
    }
}

TEST_CASE("reduction hierarchy") {
    std::size_t strong = 0;
    std::size_t projeq = 0;
    std::size_t gamma = 0;
    std::size_t intertwine = 0;
    for (const SchurInstance& inst : sample_instances(93, 6)) {
        const DerivedCache c = derive(inst);
        const bool ta = check_conditions(c, FormulaId::T_A_FORM1).all_hold;
        if (check_conditions(c, FormulaId::COR_A_STRONG).all_hold) {
            ++strong;
            CHECK(ta);
            CHECK(eval_formula(c, FormulaId::COR_A_STRONG) == eval_formula(c, FormulaId::T_A_FORM1));
        }
        if (check_conditions(c, FormulaId::COR_A_PROJEQ).all_hold) {
            ++projeq;
            CHECK(ta);
            CHECK(eval_formula(c, FormulaId::COR_A_PROJEQ) == eval_formula(c, FormulaId::T_A_FORM1));
        }
        if (check_conditions(c, FormulaId::COR_GAMMA_A).all_hold) {
            ++gamma;
            CHECK(check_conditions(c, FormulaId::T_GAMMA_A).all_hold);
            CHECK(eval_formula(c, FormulaId::COR_GAMMA_A) == eval_formula(c, FormulaId::T_GAMMA_A));
        }
        if (check_conditions(c, FormulaId::COR_INTERTWINE_INV).all_hold) {
            ++intertwine;
            CHECK(check_conditions(c, FormulaId::T_INTERTWINE).all_hold);
            CHECK(eval_formula(c, FormulaId::COR_INTERTWINE_INV) == eval_formula(c, FormulaId::T_INTERTWINE));
        }
    }
    CHECK(strong > 0);
    CHECK(projeq > 0);
    CHECK(gamma > 0);
    CHECK(intertwine > 0);

    SplitMix64 rng(94);
    for (int t = 0; t < 30; ++t) {
        const std::size_t n = 1 + rng.below(4);
        const std::size_t m = 1 + rng.below(4);
        const SchurInstance inst = jacobson_instance(oracle::random_matrix(rng, m, n, 2),
                                                     oracle::random_matrix(rng, n, m, 2));
        CHECK(check_conditions(inst, FormulaId::COR_INTERTWINE_INV).all_hold);
        CHECK(eval_formula(inst, FormulaId::JACOBSON) == eval_formula(inst, FormulaId::COR_INTERTWINE_INV));
    }
}

TEST_CASE("all-invertible blocks do not satisfy every hypothesis set") {
    // A, D, Z invertible, yet L = I - K G^d H = 0 and DB != BA.
    const DerivedCache c = derive(scalar_instance(1, 1, 1, 2));
    CHECK(c.a.index == 0);
    CHECK(c.d.index == 0);
    CHECK(c.z.index == 0);
    const Matrix s_inv = oracle::inverse(c.S);
    CHECK(s_inv == Matrix{{2}});
    CHECK(eval_formula(c, FormulaId::SMW_INVERSE) == s_inv);
    CHECK(eval_formula(c, FormulaId::T_A_FORM1) == s_inv);
    CHECK(eval_formula(c, FormulaId::T_GAMMA_A) == Matrix{{0}});
    CHECK_FALSE(check_conditions(c, FormulaId::T_GAMMA_A).all_hold);
    CHECK_FALSE(check_conditions(c, FormulaId::T_INTERTWINE).all_hold);
    CHECK_FALSE(check_conditions(c, FormulaId::COR_INTERTWINE_INV).all_hold);
}

TEST_CASE("zero coupling collapses every evaluator to A^d") {
    SplitMix64 rng(95);
    for (Family fam : {Family::ZERO_C, Family::ZERO_B}) {
        for (int t = 0; t < 15; ++t) {
            GenConfig cfg;
            cfg.seed = rng.next();
            cfg.n = 1 + rng.below(4);
            cfg.m = 1 + rng.below(4);
            cfg.complex_entries = t % 4 == 0;
            const DerivedCache c = derive(gen_instance(cfg, {fam}));
            const Matrix ad = oracle::drazin(c.inst.A);
            for (FormulaId f : all_formulas()) {
                if (f == FormulaId::JACOBSON) {
                    continue;  // reads only B and C
                }
                CHECK_MESSAGE(eval_formula(c, f) == ad, to_token(f));
            }
        }
    }
}

TEST_CASE("complex instances") {
    SplitMix64 rng(96);
    for (int t = 0; t < 10; ++t) {
        GenConfig cfg;
        cfg.seed = rng.next();
        cfg.n = 2;
        cfg.m = 2;
        cfg.complex_entries = true;
        const FamilySpec spec{Family::RANGE_C_ANNIHILATED_B};
        const SchurInstance inst = gen_instance(cfg, spec);
        for (FormulaId f : guaranteed_formulas(spec)) {
            CHECK(verify(inst, f).match);
        }
    }
}
