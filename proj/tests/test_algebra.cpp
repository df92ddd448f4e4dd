// Scalars, the rewriting engine and the built-in presets.

#include "qcalc/expr.hpp"
#include "qcalc/ncalg.hpp"
#include "qcalc/presentations.hpp"
#include "qcalc/qfield.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace qcalc;

namespace {

Scalar q() { return Scalar::q(); }
Scalar lam() { return Scalar::lambda(); }
Scalar frac(long a, long b) { return Scalar(mpq_class(a, b)); }

const Presentation& gl() { return preset(PresetId::glq2); }

Element ex(const std::string& s, const Presentation& p) { return parse_expression(s, p); }
Element nf(const std::string& s, const Presentation& p) { return normalize(ex(s, p), p); }

}  // namespace

// ---- Q(q) ----

TEST(Scalar, LambdaTimesQOverQSquaredMinusOne) {
    // [TRIVIAL]
    Scalar x = lam() * q() / (q() * q() - Scalar(1));
    EXPECT_TRUE(x.is_one());
}

TEST(Scalar, LambdaCommonDenominator) {
    // [TRIVIAL]
    EXPECT_EQ(lam().canonical(), "(q^2 - 1)/(q)");
    EXPECT_EQ(lam().pretty(), "q - q^-1");
}

TEST(Scalar, AlphaTimesQSquaredIsBeta) {
    // [PAPER] beta = 2q^2/(1+q^2)
    Scalar alpha = Scalar(2) / (Scalar(1) + q().pow(2));
    EXPECT_EQ(alpha * q().pow(2), Scalar(2) * q().pow(2) / (Scalar(1) + q().pow(2)));
    EXPECT_EQ((alpha * q().pow(2)).canonical(), "(2 q^2)/(q^2 + 1)");
}

TEST(Scalar, EvalAtOne) {
    EXPECT_EQ(lam().eval_q1(), 0);                                    // [TRIVIAL]
    EXPECT_EQ((Scalar(2) / (Scalar(1) + q().pow(2))).eval_q1(), 1);  // [PAPER] classical normalization
    EXPECT_THROW((Scalar(1) / (q() - Scalar(1))).eval_q1(), PoleAtOne);  // [TRIVIAL]
}

TEST(Scalar, InvertQ) {
    EXPECT_EQ(q().invert_q(), q().pow(-1));  // [TRIVIAL]
    EXPECT_EQ(lam().invert_q(), -lam());     // [TRIVIAL]
    // [PAPER] alpha maps to t = 2/(1+q^-2)
    EXPECT_EQ((Scalar(2) / (Scalar(1) + q().pow(2))).invert_q(), Scalar(2) / (Scalar(1) + q().pow(-2)));
}

TEST(Scalar, DivisionByZeroThrows) { EXPECT_THROW(Scalar(1) / Scalar(0), DivisionByZero); }

TEST(Scalar, FieldAxiomsOnRandomElements) {
    std::mt19937_64 rng(7);
    for (int i = 0; i < 60; ++i) {
        Scalar a = Scalar::random(rng), b = Scalar::random(rng), c = Scalar::random(rng);
        EXPECT_EQ(a + b, b + a);
        EXPECT_EQ(a * b, b * a);
        EXPECT_EQ((a + b) + c, a + (b + c));
        EXPECT_EQ((a * b) * c, a * (b * c));
        EXPECT_EQ(a * (b + c), a * b + a * c);
        EXPECT_TRUE((a - a).is_zero());
        if (!a.is_zero()) {
            EXPECT_TRUE((a / a).is_one());
        }
        EXPECT_EQ(a.invert_q().invert_q(), a);
        EXPECT_EQ((a * b).invert_q(), a.invert_q() * b.invert_q());
    }
}

TEST(Scalar, CanonicalFormIsUnique) {
    // Same value built two ways prints identically.
    Scalar x = (q().pow(2) - Scalar(1)) / (q() - Scalar(1));
    EXPECT_EQ(x, q() + Scalar(1));
    EXPECT_EQ(x.canonical(), (q() + Scalar(1)).canonical());
    EXPECT_EQ((Scalar(-2) / Scalar(-4)).canonical(), frac(1, 2).canonical());
}

// ---- expressions ----

TEST(Expr, DeterminantElement) {
    // [PAPER]
    EXPECT_EQ(ex("a.d - q b.c", gl()), qdet(gl()));
}

TEST(Expr, ZeroAndLambda) {
    EXPECT_TRUE(ex("0", gl()).is_zero());                     // [TRIVIAL]
    EXPECT_EQ(ex("(q - q^-1) b.c", gl()), lam() * ex("b.c", gl()));  // [PAPER]
}

TEST(Expr, UnknownGeneratorAndSyntax) {
    EXPECT_THROW(ex("a.zz", gl()), ParseError);
    EXPECT_THROW(ex("a + (b", gl()), ParseError);
    EXPECT_THROW(ex("a / b", gl()), ParseError);
}

// ---- normalization ----

TEST(Normalize, SingleWordWithoutRedex) {
    // [TRIVIAL]
    EXPECT_EQ(nf("a", gl()), ex("a", gl()));
}

TEST(Normalize, DaUnderGlq2) {
    // [PAPER] ad = da + lambda bc; with the determinant rule the normal form of d.a is D + q^-1 b.c.
    EXPECT_EQ(nf("d.a", gl()), ex("D + q^-1 b.c", gl()));
    EXPECT_TRUE(equal_mod_ideal(ex("d.a", gl()), ex("a.d - (q - q^-1) b.c", gl()), gl()));
}

TEST(Normalize, BaReoriented) {
    // [PAPER] ab = q ba, read as b.a -> q^-1 a.b; with b lowest in precedence the normal word is b.a.
    EXPECT_TRUE(equal_mod_ideal(ex("b.a", gl()), ex("q^-1 a.b", gl()), gl()));
    EXPECT_TRUE(equal_mod_ideal(ex("a.b", gl()), ex("q b.a", gl()), gl()));  // [PAPER]
    EXPECT_FALSE(equal_mod_ideal(ex("a", gl()), ex("b", gl()), gl()));        // [TRIVIAL]
}

TEST(Normalize, UnitRelations) {
    // [TRIVIAL]
    EXPECT_TRUE(equal_mod_ideal(ex("D.Di.b.c.a", gl()), ex("b.c.a", gl()), gl()));
    EXPECT_TRUE(equal_mod_ideal(ex("c.Di.D", gl()), ex("c", gl()), gl()));
}

TEST(Normalize, DeterminantIsCentral) {
    // [PAPER]
    const Presentation& p = gl();
    Element det = qdet(p);
    EXPECT_EQ(normalize(det, p), p.gen("D"));  // [DERIVED] determinant rule fires on a.d
    for (const char* x : {"a", "b", "c", "d"})
        EXPECT_TRUE(normalize(det * p.gen(x) - p.gen(x) * det, p).is_zero()) << x;
}

TEST(Normalize, CubicChainMatchedLeft) {
    // [PAPER]
    const Presentation& p = preset(PresetId::glq2_left);
    EXPECT_EQ(nf("th4t.th3.th2", p), ex("-q^2 th2.th3.th4t", p));
    EXPECT_EQ(nf("th4t.th2.th1t", p), ex("-q^4 th1t.th2.th4t", p));
}

TEST(Normalize, NormalizeIsIdempotentAndLinear) {
    const Presentation& p = preset(PresetId::glq2_left);
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<Sym> g(0, static_cast<Sym>(p.num_generators() - 1));
    for (int i = 0; i < 100; ++i) {
        Word u, v;
        for (int k = 0; k < 3; ++k) u.push_back(g(rng)), v.push_back(g(rng));
        Element x = Element::word(u), y = Element::word(v);
        Element nx = normalize(x, p);
        EXPECT_EQ(normalize(nx, p), nx);
        EXPECT_EQ(normalize(x + Scalar(3) * y, p), nx + Scalar(3) * normalize(y, p));
    }
}

TEST(Normalize, StepBudget) {
    EXPECT_THROW(normalize(ex("d.d.d.a.a.a", gl()), gl(), 2), StepBudgetExceeded);
}

TEST(RandomStrategy, AgreesWithNormalize) {
    const Presentation& p = preset(PresetId::glq2_left);
    Element w = ex("th4t.th3.th2", p);
    for (std::uint64_t s = 0; s < 5; ++s) EXPECT_EQ(random_strategy_normalize(w, p, s), ex("-q^2 th2.th3.th4t", p));  // [PAPER]
    // [TRIVIAL] normal words are fixed by any strategy
    for (const Word& n : normal_words(gl(), 3))
        EXPECT_EQ(random_strategy_normalize(Element::word(n), gl(), 99), Element::word(n));
}

TEST(RandomStrategy, TwoHundredWordsFiveSeeds) {
    // [DERIVED] engine self-consistency corpus
    for (PresetId id : {PresetId::glq2, PresetId::glq2_left, PresetId::glq2_right}) {
        const Presentation& p = preset(id);
        std::uniform_int_distribution<Sym> g(0, static_cast<Sym>(p.num_generators() - 1));
        std::uniform_int_distribution<int> len(1, 4);
        for (std::uint64_t seed = 1; seed <= 5; ++seed) {
            std::mt19937_64 rng(seed);
            for (int i = 0; i < 200; ++i) {
                Word w;
                for (int k = len(rng); k > 0; --k) w.push_back(g(rng));
                Element x = Element::word(w);
                ASSERT_EQ(random_strategy_normalize(x, p, rng()), normalize(x, p)) << p.word_str(w);
            }
        }
    }
}

// ---- confluence and validation ----

TEST(Confluence, EveryPresetIsLocallyConfluent) {
    for (PresetId id : all_presets()) {
        auto r = check_local_confluence(preset(id));
        EXPECT_EQ(r.unresolved(), 0u) << preset_name(id);
        EXPECT_GT(r.pairs.size(), 0u);
    }
}

TEST(Confluence, OverlapDadResolves) {
    // [DERIVED] both branches expanded by hand once
    const Presentation& p = gl();
    EXPECT_EQ(nf("d.a.d", p), normalize(ex("D.d + q^-1 b.c.d", p), p));
    EXPECT_EQ(nf("d.a.d", p), normalize(ex("d.D + q d.b.c", p), p));
}

TEST(Confluence, DroppingBcRuleLeavesUnresolvedPair) {
    // [DERIVED] brute-force two-branch reduction
    Presentation p = gl();
    std::vector<RewriteRule> rules;
    for (const auto& r : p.rules())
        if (p.word_str(r.lhs) != "c.b") rules.push_back(r);
    ASSERT_EQ(rules.size() + 1, p.rules().size());
    p.set_rules(rules);
    auto r = check_local_confluence(p);
    EXPECT_GT(r.unresolved(), 0u);
    for (const auto& pr : r.pairs)
        if (!pr.resolved()) {
            EXPECT_FALSE(pr.residual.is_zero());
        }
}

TEST(Validate, PresetsAreValid) {
    // [DERIVED] comparator orientation check
    for (PresetId id : all_presets()) EXPECT_TRUE(validate_presentation(preset(id)).valid()) << preset_name(id);
}

TEST(Validate, DeterminantRuleOrientation) {
    // [DERIVED] a.d > b.c in deglex with b < c < a < d
    Presentation p("det");
    for (const char* g : {"b", "c", "a", "d", "D"}) p.add_generator(g, Parity::even);
    p.add_rule(parse_word(p, "a.d"), ex("q b.c + D", p));
    EXPECT_TRUE(validate_presentation(p).valid());
}

TEST(Validate, ParityViolation) {
    // [TRIVIAL]
    Presentation p("bad");
    p.add_generator("x", Parity::even);
    p.add_generator("y", Parity::even);
    p.add_generator("f", Parity::odd);
    p.add_rule(parse_word(p, "y.x"), ex("f", p));
    auto v = validate_presentation(p);
    ASSERT_FALSE(v.valid());
    EXPECT_EQ(v.violations.front().kind, "parity");
}

// ---- presets ----

TEST(Presets, RuleSamples) {
    // [PAPER]
    EXPECT_EQ(nf("a.c", gl()), ex("q c.a", gl()));
    const Presentation& sl = preset(PresetId::slq2_left);
    EXPECT_EQ(nf("th1.a", sl), ex("q^-2 a.th1", sl));
    const Presentation& gll = preset(PresetId::glq2_left);
    EXPECT_EQ(nf("th1t.a", gll), ex("a.th1t", gll));
    EXPECT_EQ(nf("th1t.d", gll), ex("d.th1t", gll));
}

TEST(Presets, NamesRoundTrip) {
    for (PresetId id : all_presets()) EXPECT_EQ(parse_preset_id(preset_name(id)), id);
    EXPECT_FALSE(parse_preset_id("nope"));
}

TEST(Presets, SlDeterminantIsOne) {
    // [PAPER]
    const Presentation& sl = preset(PresetId::slq2_left);
    EXPECT_EQ(normalize(qdet(sl), sl), Element(Scalar(1)));
}

TEST(Hopf, EpsilonAntipodeCoproductOnGlq2) {
    EXPECT_TRUE(epsilon_identity_check(gl()).ok());
    EXPECT_TRUE(antipode_check(gl()).ok());
    EXPECT_TRUE(coproduct_check(gl()).ok());
}

TEST(Hopf, AntipodeEntries) {
    // [DERIVED] 2x2 inverse solved in-engine
    const Presentation& p = gl();
    Mat2 S = antipode_matrix(p), T = t_matrix(p);
    EXPECT_EQ(normalize(S[0][0] * T[0][0] + S[0][1] * T[1][0], p), Element(Scalar(1)));
    EXPECT_TRUE(normalize(S[0][0] * T[0][1] + S[0][1] * T[1][1], p).is_zero());
}

TEST(Morphisms, Reductions) {
    // [PAPER]
    for (const auto& [from, to] : reduction_pairs())
        EXPECT_TRUE(reduction_check(preset(from), preset(to), reduction_morphism(from, to)).ok())
            << preset_name(from) << " -> " << preset_name(to);
}

TEST(Morphisms, InterchangeAndClassicalLimit) {
    EXPECT_TRUE(interchange_check().ok());
    for (PresetId id : all_presets()) EXPECT_TRUE(classical_limit_check(preset(id)).ok()) << preset_name(id);
}

TEST(Morphisms, ClassicalLimitOfFormRule) {
    // [TRIVIAL] th2.a -> q^-1 a.th2 becomes th2.a -> a.th2
    const Presentation& sl = preset(PresetId::slq2_left);
    Presentation c = specialize_q1(sl);
    EXPECT_EQ(normalize(ex("th2.a", sl), c), ex("a.th2", c));
}

TEST(Morphisms, InterchangeMapsTh4tRule) {
    // [PAPER] a w4b = q^2 w4b a on the right
    const Presentation& L = preset(PresetId::glq2_left);
    const Presentation& R = preset(PresetId::glq2_right);
    Morphism m = reduction_morphism(PresetId::glq2_left, PresetId::glq2_right);
    EXPECT_TRUE(apply_morphism(ex("th4t.d - q^2 d.th4t", L), m).is_zero());
    EXPECT_TRUE(normalize(ex("a.w4b - q^2 w4b.a", R), R).is_zero());
}
