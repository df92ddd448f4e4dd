#pragma once
// Named verification suites over presets, run concurrently into one report.

#include "qcalc/calculus.hpp"
#include "qcalc/check.hpp"
#include "qcalc/ncalg.hpp"
#include "qcalc/presentations.hpp"
#include "qcalc/report.hpp"
#include "qcalc/rmatrix.hpp"

#include <future>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace qcalc {

struct UnknownSuite : std::invalid_argument {
    explicit UnknownSuite(const std::string& s) : std::invalid_argument("unknown suite '" + s + "'") {}
};

struct SuiteConfig {
    std::optional<std::size_t> max_degree;  // overrides both defaults below
    std::uint64_t seed = 20240601;

    std::size_t corpus_degree() const { return max_degree.value_or(4); }
    std::size_t field_degree() const { return max_degree.value_or(3); }
};

inline const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> v = {
        "confluence",      "rtt",       "ybe",           "hopf",           "delta2",
        "qtrace",          "vector-fields", "reductions", "regression-3.24", "regression-4.4",
        "regression-4.5",  "regression-5.22", "interchange", "classical-limit", "conjugation",
    };
    return v;
}

inline bool is_suite(const std::string& s) {
    for (const auto& n : suite_names())
        if (n == s) return true;
    return false;
}

inline bool has_calculus(PresetId id) { return is_left_calculus(id) || is_right_calculus(id); }

inline bool is_plane(PresetId id) {
    return id == PresetId::qplane_left_b0 || id == PresetId::qplane_left_c0 || id == PresetId::qplane_right_b0 ||
           id == PresetId::qplane_right_c0;
}

// Which suites verify-paper runs on which preset.
inline bool suite_applies(const std::string& suite, PresetId id) {
    if (suite == "confluence" || suite == "classical-limit" || suite == "rtt") return true;
    if (suite == "hopf") return !is_plane(id);
    if (suite == "ybe") return id == PresetId::glq2;
    if (suite == "delta2") return has_calculus(id);
    if (suite == "qtrace") return id == PresetId::glq2_left || id == PresetId::glq2_right;
    if (suite == "vector-fields") return field_algebra(id) != nullptr;
    if (suite == "reductions") {
        for (const auto& [from, to] : reduction_pairs())
            if (from == id) return true;
        return false;
    }
    if (suite == "regression-3.24") return id == PresetId::glq2_left;
    if (suite == "regression-4.4") return id == PresetId::slq2_left;
    if (suite == "regression-4.5") return is_plane(id);
    if (suite == "regression-5.22") return id == PresetId::glq2_right;
    if (suite == "interchange") return id == PresetId::glq2_left || id == PresetId::glq2_right;
    if (suite == "conjugation") return id == PresetId::slq2_right;
    throw UnknownSuite(suite);
}

namespace detail {

inline CheckResult skipped(const std::string& why) { return {"not applicable", "", Status::skipped, why, 0}; }

// Reduce w twice, once starting from each redex, and compare both with expected.
inline CheckResult chain_check(const Presentation& p, const std::string& word, const std::string& expected) {
    Word w = parse_word(p, word);
    Element target = parse_expression(expected, p);
    std::string detail;
    auto redexes = p.all_redexes(w);
    if (redexes.size() < 2) detail = "fewer than two redexes";
    for (const auto& [pos, rule] : redexes) {
        Element r = normalize(p.rewrite_at(w, pos, rule), p);
        if (r != target) detail += "route at " + std::to_string(pos) + " gives " + p.str(r) + "; ";
    }
    return make_check(word + " -> " + expected + " by every route", "3.23", detail.empty(), detail);
}

inline CheckResult strategy_check(const Presentation& p, std::uint64_t seed, std::size_t words, std::size_t max_len) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> len(1, max_len);
    std::uniform_int_distribution<Sym> gen(0, static_cast<Sym>(p.num_generators() - 1));
    Normalizer nf(p);
    std::string detail;
    for (std::size_t i = 0; i < words && detail.empty(); ++i) {
        Word w;
        for (std::size_t k = len(rng); k > 0; --k) w.push_back(gen(rng));
        Element x = Element::word(w);
        Element a = nf(x);
        Element b = random_strategy_normalize(x, p, rng());
        if (a != b) detail = p.word_str(w) + ": canonical " + p.str(a) + " vs random " + p.str(b);
    }
    return make_check(std::to_string(words) + " random words, seed " + std::to_string(seed), "3.23", detail.empty(), detail);
}

// Parameter subalgebra: the preset without its forms.
inline Presentation parameter_part(const Presentation& p) {
    std::set<std::string> forms;
    for (const auto& g : p.generators())
        if (g.parity == Parity::odd) forms.insert(g.name);
    return restrict_presentation(p, forms, p.name() + "-params");
}

}  // namespace detail

inline std::vector<CheckResult> confluence_suite(const Presentation& p, const SuiteConfig& cfg) {
    std::vector<CheckResult> out;
    out.push_back(timed([&] {
        auto v = validate_presentation(p);
        std::string d;
        for (const auto& x : v.violations) d += x.kind + ": " + x.detail + "; ";
        return make_check("rules oriented and well formed", "3.21", v.valid(), d);
    }));
    out.push_back(timed([&] {
        auto c = check_local_confluence(p);
        std::string d;
        for (const auto& pr : c.pairs)
            if (!pr.resolved() && d.size() < 400) d += p.word_str(pr.overlap) + ": " + p.str(pr.residual) + "; ";
        return make_check(std::to_string(c.pairs.size()) + " critical pairs, " + std::to_string(c.unresolved()) +
                              " unresolved",
                          "3.23", c.unresolved() == 0, d);
    }));
    if (p.name() == "glq2-left") {
        out.push_back(timed([&] { return detail::chain_check(p, "th4t.th3.th2", "-q^2 th2.th3.th4t"); }));
        out.push_back(timed([&] { return detail::chain_check(p, "th4t.th2.th1t", "-q^4 th1t.th2.th4t"); }));
    }
    for (std::uint64_t k = 0; k < 5; ++k)
        out.push_back(timed([&] { return detail::strategy_check(p, cfg.seed + k, 200, cfg.corpus_degree()); }));
    return out;
}

inline std::vector<CheckResult> rtt_suite(const Presentation& p) {
    std::vector<CheckResult> out;
    if (!p.has("a") || !p.has("d")) return {detail::skipped("no parameter matrix")};
    out.push_back(timed([&] { return rtt_check(standard_r(), p); }));
    if (auto id = parse_preset_id(p.name()); id && has_calculus(*id))
        out.push_back(timed([&] { return forms_rtt_compat(standard_r(), p, is_left_calculus(*id)); }));
    if (p.has("b") && p.has("c")) {
        out.push_back(timed([&] {
            auto v = rtt_residual(identity_r(), p);
            std::size_t nonzero = 0;
            for (const auto& e : v) nonzero += !e.is_zero();
            return make_check("identity R leaves " + std::to_string(nonzero) + " nonzero commutators", "2.4", nonzero > 0);
        }));
    }
    return out;
}

inline std::vector<CheckResult> ybe_suite() {
    std::vector<CheckResult> out;
    out.push_back(timed([] { return ybe_check(standard_r(), "standard R: residual zero", true); }));
    out.push_back(timed([] { return ybe_check(identity_r(), "identity: residual zero", true); }));
    out.push_back(timed([] { return ybe_check(perturbed_r(), "lambda -> 1: residual nonzero", false); }));
    out.push_back(timed([] {
        auto a = ybe_residual(perturbed_r()), b = ybe_residual(perturbed_r(), true);
        bool ok = true;
        for (int i = 0; i < 8; ++i)
            for (int j = 0; j < 8; ++j) ok = ok && a[i][j] == -b[i][j];
        return make_check("residual antisymmetric under side swap", "2.5", ok);
    }));
    out.push_back(timed([] { return r_inverse_check(); }));
    out.push_back({"R table", "2.6", Status::pass, r_table(standard_r()), 0});
    return out;
}

inline std::vector<CheckResult> hopf_suite(const Presentation& full) {
    if (!full.has("a") || !full.has("b") || !full.has("c") || !full.has("d"))
        return {detail::skipped("needs the full parameter matrix a, b, c, d")};
    Presentation p = detail::parameter_part(full);
    std::vector<CheckResult> out;
    if (p.has("D")) {
        out.push_back(timed([&] {
            Element e = normalize(qdet(p) - p.gen("D"), p);
            return make_check("a.d - q b.c = D", "2.7", e.is_zero(), e.is_zero() ? "" : p.str(e));
        }));
        out.push_back(timed([&] {
            std::string d;
            for (const char* x : {"a", "b", "c", "d"}) {
                Element e = normalize(p.gen("D") * p.gen(x) - p.gen(x) * p.gen("D"), p);
                if (!e.is_zero()) d += std::string(x) + ": " + p.str(e) + "; ";
            }
            return make_check("D central", "2.12", d.empty(), d);
        }));
    } else if (p.has("b") && p.has("c")) {
        out.push_back(timed([&] {
            Element e = normalize(qdet(p) - Element(Scalar(1)), p);
            return make_check("a.d - q b.c = 1", "4.1", e.is_zero(), e.is_zero() ? "" : p.str(e));
        }));
    }
    out.push_back(timed([&] { return epsilon_identity_check(p); }));
    out.push_back(timed([&] { return antipode_check(p); }));
    out.push_back(timed([&] { return coproduct_check(p); }));
    return out;
}

inline std::vector<CheckResult> delta2_suite(PresetId id, const SuiteConfig& cfg) {
    const auto& m = calculus(id);
    const Presentation& p = m.pres();
    std::vector<CheckResult> out;
    out.push_back(timed([&] { return check_nilpotent(m.delta, p, cfg.corpus_degree()); }));
    out.push_back(timed([&] { return relation_compat_check(m.delta, p); }));
    out.push_back(timed([&] { return maurer_cartan_check(m); }));
    out.push_back(timed([&] { return maurer_cartan_roundtrip(m); }));
    out.push_back(timed([&] {
        try {
            const Presentation& d = diff_presentation(id);
            auto c = check_local_confluence(d);
            std::string name = "differential-mode rules derived (" + std::to_string(d.rules().size()) + " rules)";
            if (id == PresetId::slq2_left || id == PresetId::slq2_right)
                return CheckResult{name, m.diff_tag, Status::pass,
                                   "four differentials over three forms: not a complete system, " +
                                       std::to_string(c.unresolved()) + " unresolved critical pairs (comparisons use form mode)",
                                   0};
            return make_check(name + ", " + std::to_string(c.unresolved()) + " unresolved critical pairs", m.diff_tag,
                              c.unresolved() == 0);
        } catch (const ConversionSingular& e) {
            return make_check("differential-mode rules derived", m.diff_tag, false, e.what());
        }
    }));
    return out;
}

inline std::vector<CheckResult> reductions_suite(PresetId id) {
    std::vector<CheckResult> out;
    for (const auto& [from, to] : reduction_pairs())
        if (from == id)
            out.push_back(timed([&, f = from, t = to] {
                return reduction_check(preset(f), preset(t), reduction_morphism(f, t), {},
                                       is_left_calculus(f) ? "4.2" : "5.23");
            }));
    if (out.empty()) return {detail::skipped("no reduction starts at " + preset_name(id))};
    return out;
}

inline std::vector<CheckResult> regression_4_5_for(PresetId id) {
    std::vector<CheckResult> out;
    for (const auto& pp : plane_projections()) {
        if (pp.id != id) continue;
        std::string prefix = "(x=" + pp.x + ", y=" + pp.y + ", column " + (pp.column == 1 ? "I" : "II") + ") ";
        auto r = regression_lines(pp.id, detail::printed_4_5(pp.column), "4.5", {{"x", pp.x}, {"y", pp.y}}, prefix);
        out.insert(out.end(), r.begin(), r.end());
    }
    return out;
}

// One suite on one built-in preset. Inapplicable combinations yield a single skipped check.
inline SuiteReport run_suite(const std::string& suite, PresetId id, const SuiteConfig& cfg = {}) {
    SuiteReport r{suite, preset_name(id), {}};
    const Presentation& p = preset(id);
    if (!is_suite(suite)) throw UnknownSuite(suite);
    if (!suite_applies(suite, id) && suite != "ybe") {
        r.checks = {detail::skipped(suite + " does not apply to " + preset_name(id))};
        return r;
    }
    if (suite == "confluence") r.checks = confluence_suite(p, cfg);
    else if (suite == "rtt") r.checks = rtt_suite(p);
    else if (suite == "ybe") r.checks = ybe_suite();
    else if (suite == "hopf") r.checks = hopf_suite(p);
    else if (suite == "delta2") r.checks = delta2_suite(id, cfg);
    else if (suite == "qtrace") r.checks = {timed([&] { return qtrace_check(calculus(id)); })};
    else if (suite == "vector-fields") r.checks = vector_field_suite(id, cfg.field_degree());
    else if (suite == "reductions") r.checks = reductions_suite(id);
    else if (suite == "regression-3.24") r.checks = regression_3_24();
    else if (suite == "regression-4.4") r.checks = regression_4_4();
    else if (suite == "regression-4.5") r.checks = regression_4_5_for(id);
    else if (suite == "regression-5.22") r.checks = regression_5_22();
    else if (suite == "interchange") r.checks = {timed([] { return interchange_check(); })};
    else if (suite == "classical-limit") r.checks = {timed([&] { return classical_limit_check(p); })};
    else if (suite == "conjugation") r.checks = conjugate_forms_check(p);
    return r;
}

// Suites that make sense for a user presentation read from a file.
inline SuiteReport run_suite(const std::string& suite, const Presentation& p, const SuiteConfig& cfg = {}) {
    if (!is_suite(suite)) throw UnknownSuite(suite);
    SuiteReport r{suite, p.name(), {}};
    if (suite == "confluence") r.checks = confluence_suite(p, cfg);
    else if (suite == "classical-limit") r.checks = {timed([&] { return classical_limit_check(p); })};
    else if (suite == "ybe") r.checks = ybe_suite();
    else if (suite == "rtt") r.checks = rtt_suite(p);
    else if (suite == "hopf") r.checks = hopf_suite(p);
    else r.checks = {detail::skipped(suite + " needs a built-in preset")};
    return r;
}

struct SuiteTask {
    std::string suite;
    std::optional<PresetId> id;
    const Presentation* file = nullptr;
};

// Runs every task concurrently; results keep the task order.
inline Report run_suites(const std::vector<SuiteTask>& tasks, const SuiteConfig& cfg, std::string label) {
    std::vector<std::future<SuiteReport>> futs;
    for (const auto& t : tasks) {
        if (!is_suite(t.suite)) throw UnknownSuite(t.suite);
        futs.push_back(std::async(std::launch::async, [t, cfg] {
            try {
                return t.id ? run_suite(t.suite, *t.id, cfg) : run_suite(t.suite, *t.file, cfg);
            } catch (const std::exception& e) {
                return SuiteReport{t.suite, t.id ? preset_name(*t.id) : t.file->name(),
                                   {{"suite aborted", "", Status::fail, e.what(), 0}}};
            }
        }));
    }
    Report rep{std::move(label), cfg.seed, cfg.max_degree.value_or(0), {}};
    for (auto& f : futs) rep.suites.push_back(f.get());
    return rep;
}

// Every applicable suite on every preset.
inline std::vector<SuiteTask> all_suite_tasks() {
    std::vector<SuiteTask> tasks;
    for (PresetId id : all_presets())
        for (const auto& s : suite_names())
            if (suite_applies(s, id)) tasks.push_back({s, id, nullptr});
    return tasks;
}

// Exit status: 0 pass, 1 failure, 2 mismatches without --allow-mismatch.
inline int exit_code(const Report& r, bool allow_mismatch) {
    if (r.failed()) return 1;
    if (!allow_mismatch && r.count(Status::mismatch) > 0) return 2;
    return 0;
}

}  // namespace qcalc
