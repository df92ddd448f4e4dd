#pragma once
// Built-in presentations, the quantum determinant, Hopf-map checks and morphisms between presets.

#include "qcalc/check.hpp"
#include "qcalc/expr.hpp"
#include "qcalc/ncalg.hpp"

#include <array>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace qcalc {

enum class PresetId {
    glq2,
    glq2_left,
    glq2_right,
    slq2_left,
    slq2_right,
    qplane_left_b0,
    qplane_left_c0,
    qplane_right_b0,
    qplane_right_c0,
};

inline const std::vector<PresetId>& all_presets() {
    static const std::vector<PresetId> ids = {
        PresetId::glq2,           PresetId::glq2_left,      PresetId::glq2_right,
        PresetId::slq2_left,      PresetId::slq2_right,     PresetId::qplane_left_b0,
        PresetId::qplane_left_c0, PresetId::qplane_right_b0, PresetId::qplane_right_c0,
    };
    return ids;
}

inline std::string preset_name(PresetId id) {
    switch (id) {
        case PresetId::glq2: return "glq2";
        case PresetId::glq2_left: return "glq2-left";
        case PresetId::glq2_right: return "glq2-right";
        case PresetId::slq2_left: return "slq2-left";
        case PresetId::slq2_right: return "slq2-right";
        case PresetId::qplane_left_b0: return "qplane-left-b0";
        case PresetId::qplane_left_c0: return "qplane-left-c0";
        case PresetId::qplane_right_b0: return "qplane-right-b0";
        case PresetId::qplane_right_c0: return "qplane-right-c0";
    }
    return "?";
}

inline std::optional<PresetId> parse_preset_id(const std::string& s) {
    for (PresetId id : all_presets())
        if (preset_name(id) == s) return id;
    return std::nullopt;
}

// Dot-separated word, e.g. "a.d".
inline Word parse_word(const Presentation& p, const std::string& dotted) {
    Word w;
    std::size_t start = 0;
    while (start <= dotted.size()) {
        std::size_t end = dotted.find('.', start);
        if (end == std::string::npos) end = dotted.size();
        std::string name = dotted.substr(start, end - start);
        auto b = name.find_first_not_of(" \t"), e = name.find_last_not_of(" \t");
        if (b == std::string::npos) throw std::invalid_argument("empty generator name in '" + dotted + "'");
        w.push_back(p.sym(name.substr(b, e - b + 1)));
        start = end + 1;
    }
    return w;
}

namespace detail {

inline void rule(Presentation& p, const std::string& lhs, const std::string& rhs, const std::string& tag) {
    p.add_rule(parse_word(p, lhs), parse_expression(rhs, p), tag);
}

// Column (left calculus) or row (right calculus) of a matrix parameter: 0 or 1.
inline int column_of(const std::string& x) { return (x == "a" || x == "c") ? 0 : 1; }
inline int row_of(const std::string& x) { return (x == "a" || x == "b") ? 0 : 1; }

inline const std::array<const char*, 4> params = {"b", "c", "a", "d"};

inline void add_param_generators(Presentation& p, bool with_det) {
    for (const char* x : params) p.add_generator(x, Parity::even);
    if (with_det) {
        p.add_generator("D", Parity::even);
        p.add_generator("Di", Parity::even);
    }
}

inline void add_param_rules(Presentation& p, bool with_det) {
    rule(p, "a.b", "q b.a", "2.11");
    rule(p, "a.c", "q c.a", "2.11");
    rule(p, "d.b", "q^-1 b.d", "2.11");
    rule(p, "d.c", "q^-1 c.d", "2.11");
    rule(p, "c.b", "b.c", "2.11");
    const std::string det = with_det ? "D" : "1";
    rule(p, "a.d", det + " + q b.c", with_det ? "2.7" : "4.1");
    rule(p, "d.a", det + " + q^-1 b.c", "2.11");
    if (!with_det) return;
    for (const char* x : params) {
        rule(p, std::string("D.") + x, std::string(x) + ".D", "2.12");
        rule(p, std::string("Di.") + x, std::string(x) + ".Di", "2.12");
    }
    rule(p, "D.Di", "1", "2.12");
    rule(p, "Di.D", "1", "2.12");
}

struct FormSpec {
    const char* name;
    const char* scale[2];  // per column (left) or row (right)
    const char* tag;
};

struct PairSpec {
    const char* lhs;
    const char* rhs;
    const char* tag;
};

// Left forms sit above the parameters and migrate right: f.x -> s x.f.
inline void add_left_forms(Presentation& p, const std::vector<FormSpec>& forms, const std::vector<PairSpec>& pairs) {
    for (const auto& f : forms) p.add_generator(f.name, Parity::odd);
    for (const auto& f : forms) {
        for (const char* x : params) {
            if (!p.has(x)) continue;
            std::string s = f.scale[column_of(x)];
            rule(p, std::string(f.name) + "." + x, s + " " + x + "." + f.name, f.tag);
        }
        for (const char* x : {"D", "Di"})
            if (p.has(x)) rule(p, std::string(f.name) + "." + x, std::string(x) + "." + f.name, "2.25");
    }
    for (const auto& pr : pairs) rule(p, pr.lhs, pr.rhs, pr.tag);
    for (const auto& f : forms) rule(p, std::string(f.name) + "." + f.name, "0", pairs.empty() ? "" : pairs.back().tag);
}

// Right forms sit below the parameters and migrate left: x.f -> s f.x.
inline void add_right_forms(Presentation& p, const std::vector<FormSpec>& forms, const std::vector<PairSpec>& pairs) {
    for (const auto& f : forms) {
        for (const char* x : params) {
            if (!p.has(x)) continue;
            std::string s = f.scale[row_of(x)];
            rule(p, std::string(x) + "." + f.name, s + " " + f.name + "." + x, f.tag);
        }
        for (const char* x : {"D", "Di"})
            if (p.has(x)) rule(p, std::string(x) + "." + f.name, std::string(f.name) + "." + x, "2.25");
    }
    for (const auto& pr : pairs) rule(p, pr.lhs, pr.rhs, pr.tag);
    for (const auto& f : forms) rule(p, std::string(f.name) + "." + f.name, "0", pairs.empty() ? "" : pairs.back().tag);
}

// A presentation with the right forms declared first (lowest precedence).
inline Presentation with_low_forms(const std::string& name, const std::vector<FormSpec>& forms, bool with_det) {
    Presentation p(name);
    for (const auto& f : forms) p.add_generator(f.name, Parity::odd);
    add_param_generators(p, with_det);
    add_param_rules(p, with_det);
    return p;
}

inline Presentation build_glq2() {
    Presentation p("glq2");
    add_param_generators(p, true);
    add_param_rules(p, true);
    p.metadata() = {"2.7", "2.11", "2.12"};
    return p;
}

inline Presentation build_glq2_left() {
    Presentation p("glq2-left");
    add_param_generators(p, true);
    add_param_rules(p, true);
    add_left_forms(p,
                   {{"th1t", {"1", "1"}, "3.22"},
                    {"th2", {"q^-1", "q"}, "3.22"},
                    {"th3", {"q^-1", "q"}, "3.22"},
                    {"th4t", {"q^-2", "q^2"}, "3.22"}},
                   {{"th2.th1t", "-th1t.th2", "3.23"},
                    {"th3.th1t", "-th1t.th3", "3.23"},
                    {"th4t.th1t", "-th1t.th4t", "3.23"},
                    {"th4t.th2", "-q^4 th2.th4t", "3.23"},
                    {"th4t.th3", "-q^-4 th3.th4t", "3.23"},
                    {"th3.th2", "-q^2 th2.th3", "3.23"}});
    p.metadata() = {"2.11", "3.21", "3.22", "3.23"};
    return p;
}

inline Presentation build_slq2_left() {
    Presentation p("slq2-left");
    add_param_generators(p, false);
    add_param_rules(p, false);
    add_left_forms(p,
                   {{"th1", {"q^-2", "q^2"}, "4.1"}, {"th2", {"q^-1", "q"}, "4.1"}, {"th3", {"q^-1", "q"}, "4.1"}},
                   {{"th2.th1", "-q^-4 th1.th2", "4.2"},
                    {"th3.th1", "-q^4 th1.th3", "4.2"},
                    {"th3.th2", "-q^2 th2.th3", "4.2"}});
    p.metadata() = {"4.1", "4.2"};
    return p;
}

inline Presentation build_glq2_right() {
    std::vector<FormSpec> forms = {{"w1b", {"1", "1"}, "5.20"},
                                   {"w2", {"q", "q^-1"}, "5.20"},
                                   {"w3", {"q", "q^-1"}, "5.20"},
                                   {"w4b", {"q^2", "q^-2"}, "5.20"}};
    Presentation p = with_low_forms("glq2-right", forms, true);
    add_right_forms(p, forms,
                    {{"w2.w1b", "-w1b.w2", "5.21"},
                     {"w3.w1b", "-w1b.w3", "5.21"},
                     {"w4b.w1b", "-w1b.w4b", "5.21"},
                     {"w4b.w2", "-q^-4 w2.w4b", "5.21"},
                     {"w4b.w3", "-q^4 w3.w4b", "5.21"},
                     {"w3.w2", "-q^-2 w2.w3", "5.21"}});
    p.metadata() = {"2.11", "5.17", "5.20", "5.21"};
    return p;
}

inline Presentation build_slq2_right() {
    std::vector<FormSpec> forms = {{"w1", {"q^2", "q^-2"}, "5.23"}, {"w2", {"q", "q^-1"}, "5.20"}, {"w3", {"q", "q^-1"}, "5.20"}};
    Presentation p = with_low_forms("slq2-right", forms, false);
    add_right_forms(p, forms,
                    {{"w2.w1", "-q^4 w1.w2", "5.21"}, {"w3.w1", "-q^-4 w1.w3", "5.21"}, {"w3.w2", "-q^-2 w2.w3", "5.21"}});
    p.metadata() = {"5.20", "5.21", "5.23"};
    return p;
}

}  // namespace detail

// Drop generators: rules whose LHS mentions one disappear, RHS terms mentioning one vanish.
inline Presentation restrict_presentation(const Presentation& src, const std::set<std::string>& drop, std::string name) {
    Presentation dst(std::move(name), src.order());
    std::vector<std::optional<Sym>> remap(src.num_generators());
    for (Sym s = 0; s < src.num_generators(); ++s) {
        const auto& g = src.generator(s);
        if (!drop.count(g.name)) remap[s] = dst.add_generator(g.name, g.parity);
    }
    auto map_word = [&](const Word& w) -> std::optional<Word> {
        Word r;
        for (Sym s : w) {
            if (!remap[s]) return std::nullopt;
            r.push_back(*remap[s]);
        }
        return r;
    };
    for (const auto& r : src.rules()) {
        auto lhs = map_word(r.lhs);
        if (!lhs) continue;
        Element rhs;
        for (const auto& [w, c] : r.rhs)
            if (auto m = map_word(w)) rhs.add(*m, c);
        dst.add_rule(*lhs, rhs, r.tag);
    }
    dst.metadata() = src.metadata();
    return dst;
}

inline Presentation build_preset(PresetId id) {
    switch (id) {
        case PresetId::glq2: return detail::build_glq2();
        case PresetId::glq2_left: return detail::build_glq2_left();
        case PresetId::glq2_right: return detail::build_glq2_right();
        case PresetId::slq2_left: return detail::build_slq2_left();
        case PresetId::slq2_right: return detail::build_slq2_right();
        case PresetId::qplane_left_b0: {
            auto p = restrict_presentation(detail::build_slq2_left(), {"b", "th2"}, "qplane-left-b0");
            p.metadata() = {"4.5"};
            return p;
        }
        case PresetId::qplane_left_c0: {
            auto p = restrict_presentation(detail::build_slq2_left(), {"c", "th3"}, "qplane-left-c0");
            p.metadata() = {"4.5"};
            return p;
        }
        case PresetId::qplane_right_b0: {
            auto p = restrict_presentation(detail::build_slq2_right(), {"b", "w2"}, "qplane-right-b0");
            p.metadata() = {"4.5"};
            return p;
        }
        case PresetId::qplane_right_c0: {
            auto p = restrict_presentation(detail::build_slq2_right(), {"c", "w3"}, "qplane-right-c0");
            p.metadata() = {"4.5"};
            return p;
        }
    }
    throw std::invalid_argument("unknown preset");
}

// Presets are built once and shared read-only.
inline const Presentation& preset(PresetId id) {
    static const std::vector<Presentation> cache = [] {
        std::vector<Presentation> v;
        for (PresetId i : all_presets()) v.push_back(build_preset(i));
        return v;
    }();
    return cache.at(static_cast<std::size_t>(id));
}

inline const Presentation& preset(const std::string& id) {
    auto p = parse_preset_id(id);
    if (!p) throw std::invalid_argument("unknown preset '" + id + "'");
    return preset(*p);
}

inline bool is_left_calculus(PresetId id) {
    return id == PresetId::glq2_left || id == PresetId::slq2_left || id == PresetId::qplane_left_b0 ||
           id == PresetId::qplane_left_c0;
}
inline bool is_right_calculus(PresetId id) {
    return id == PresetId::glq2_right || id == PresetId::slq2_right || id == PresetId::qplane_right_b0 ||
           id == PresetId::qplane_right_c0;
}

// Parameter matrix entry (row r, column c, 0-based); zero if killed in this preset.
inline Element t_entry(const Presentation& p, int r, int c) {
    static const char* names[2][2] = {{"a", "b"}, {"c", "d"}};
    const char* n = names[r][c];
    return p.has(n) ? p.gen(n) : Element{};
}

inline Element qdet(const Presentation& p) {
    return t_entry(p, 0, 0) * t_entry(p, 1, 1) - Scalar::q() * (t_entry(p, 0, 1) * t_entry(p, 1, 0));
}

// Bilinear substitution of generators by elements (free product), optionally mapping scalars.
inline Element substitute(const Element& x, const std::vector<Element>& images,
                          const std::function<Scalar(const Scalar&)>& scalars = {}) {
    Element out;
    for (const auto& [w, c] : x) {
        Element t(scalars ? scalars(c) : c);
        for (Sym s : w) {
            t = t * images.at(s);
            if (t.is_zero()) break;
        }
        out += t;
    }
    return out;
}

// Substitution that reverses the order of every word (anti-homomorphism).
inline Element substitute_reversed(const Element& x, const std::vector<Element>& images) {
    Element out;
    for (const auto& [w, c] : x) {
        Element t(c);
        for (auto it = w.rbegin(); it != w.rend(); ++it) t = t * images.at(*it);
        out += t;
    }
    return out;
}

inline Element relation(const RewriteRule& r) { return Element::word(r.lhs) - r.rhs; }

enum class ScalarMap { identity, invert_q, q_to_1 };

struct Morphism {
    const Presentation* src = nullptr;
    const Presentation* dst = nullptr;
    std::vector<Element> images;  // indexed by source generator
    ScalarMap scalars = ScalarMap::identity;
};

// Generators default to the same-named generator of dst; overrides are expressions in dst.
inline Morphism make_morphism(const Presentation& src, const Presentation& dst,
                              const std::map<std::string, std::string>& overrides = {},
                              ScalarMap sm = ScalarMap::identity) {
    Morphism m{&src, &dst, {}, sm};
    for (const auto& g : src.generators()) {
        auto it = overrides.find(g.name);
        if (it != overrides.end())
            m.images.push_back(parse_expression(it->second, dst));
        else if (dst.has(g.name))
            m.images.push_back(dst.gen(g.name));
        else
            throw std::invalid_argument("morphism has no image for generator '" + g.name + "'");
    }
    return m;
}

inline Scalar map_scalar(const Scalar& s, ScalarMap m) {
    switch (m) {
        case ScalarMap::identity: return s;
        case ScalarMap::invert_q: return s.invert_q();
        case ScalarMap::q_to_1: return Scalar(s.eval_q1());
    }
    return s;
}

// Image before normalization.
inline Element map_free(const Element& x, const Morphism& m) {
    return substitute(x, m.images, [&](const Scalar& s) { return map_scalar(s, m.scalars); });
}

inline Element apply_morphism(const Element& x, const Morphism& m) { return normalize(map_free(x, m), *m.dst); }

// Every source rule, read as the relation LHS - RHS, must vanish in the target.
inline CheckResult reduction_check(const Presentation& src, const Presentation& dst, const Morphism& m,
                                   std::string name = {}, std::string ref = "4.2") {
    Normalizer nf(dst);
    std::string bad;
    std::size_t failures = 0;
    for (const auto& r : src.rules()) {
        Element e = nf(map_free(relation(r), m));
        if (!e.is_zero()) {
            if (failures++ < 3) bad += src.word_str(r.lhs) + " -> " + dst.str(e) + "; ";
        }
    }
    if (name.empty()) name = src.name() + " -> " + dst.name();
    return make_check(std::move(name), std::move(ref), failures == 0,
                      failures ? std::to_string(failures) + " relations survive: " + bad : "");
}

// The standard morphisms between presets.
inline Morphism reduction_morphism(PresetId from, PresetId to) {
    const Presentation& s = preset(from);
    const Presentation& d = preset(to);
    using M = std::map<std::string, std::string>;
    if (from == PresetId::glq2_left && to == PresetId::slq2_left)
        return make_morphism(s, d, {{"D", "1"}, {"Di", "1"}, {"th1t", "0"}, {"th4t", "(th1 - (-q^2 th1))/(1 + q^2)"}});
    if (from == PresetId::glq2_right && to == PresetId::slq2_right)
        return make_morphism(s, d, {{"D", "1"}, {"Di", "1"}, {"w1b", "0"}, {"w4b", "w1"}});
    if (from == PresetId::slq2_left && to == PresetId::qplane_left_c0) return make_morphism(s, d, M{{"c", "0"}, {"th3", "0"}});
    if (from == PresetId::slq2_left && to == PresetId::qplane_left_b0) return make_morphism(s, d, M{{"b", "0"}, {"th2", "0"}});
    if (from == PresetId::slq2_right && to == PresetId::qplane_right_c0) return make_morphism(s, d, M{{"c", "0"}, {"w3", "0"}});
    if (from == PresetId::slq2_right && to == PresetId::qplane_right_b0) return make_morphism(s, d, M{{"b", "0"}, {"w2", "0"}});
    if (from == PresetId::glq2_left && to == PresetId::glq2_right)
        return make_morphism(s, d, {{"a", "d"}, {"d", "a"}, {"th1t", "w1b"}, {"th2", "w2"}, {"th3", "w3"}, {"th4t", "w4b"}},
                             ScalarMap::invert_q);
    if (from == PresetId::glq2_right && to == PresetId::glq2_left)
        return make_morphism(s, d, {{"a", "d"}, {"d", "a"}, {"w1b", "th1t"}, {"w2", "th2"}, {"w3", "th3"}, {"w4b", "th4t"}},
                             ScalarMap::invert_q);
    throw std::invalid_argument("no standard morphism " + preset_name(from) + " -> " + preset_name(to));
}

inline const std::vector<std::pair<PresetId, PresetId>>& reduction_pairs() {
    static const std::vector<std::pair<PresetId, PresetId>> v = {
        {PresetId::glq2_left, PresetId::slq2_left},        {PresetId::slq2_left, PresetId::qplane_left_c0},
        {PresetId::slq2_left, PresetId::qplane_left_b0},   {PresetId::glq2_right, PresetId::slq2_right},
        {PresetId::slq2_right, PresetId::qplane_right_c0}, {PresetId::slq2_right, PresetId::qplane_right_b0},
    };
    return v;
}

// Interchange a<->d, q<->1/q, left forms <-> right forms: each mapped left rule is
// a scalar multiple of a right rule's relation and vanishes modulo the right ideal.
inline CheckResult interchange_check() {
    const Presentation& L = preset(PresetId::glq2_left);
    const Presentation& R = preset(PresetId::glq2_right);
    Morphism m = reduction_morphism(PresetId::glq2_left, PresetId::glq2_right);
    Morphism back = reduction_morphism(PresetId::glq2_right, PresetId::glq2_left);
    Normalizer nf(R);
    std::size_t unmatched = 0, surviving = 0, not_involutive = 0;
    std::string detail;
    for (const auto& r : L.rules()) {
        Element rel = relation(r);
        Element img = map_free(rel, m);
        if (!nf(img).is_zero()) {
            ++surviving;
            detail += "survives: " + L.word_str(r.lhs) + "; ";
        }
        bool matched = false;
        for (const auto& rr : R.rules()) {
            Scalar c = img.coeff(rr.lhs);
            if (!c.is_zero() && img == c * relation(rr)) {
                matched = true;
                break;
            }
        }
        if (!matched) {
            ++unmatched;
            detail += "no matching right rule for " + L.word_str(r.lhs) + "; ";
        }
        if (map_free(img, back) != rel) {
            ++not_involutive;
            detail += "not involutive on " + L.word_str(r.lhs) + "; ";
        }
    }
    return make_check("interchange glq2-left -> glq2-right", "5.21", unmatched + surviving + not_involutive == 0, detail);
}

// The same presentation with every coefficient evaluated at q = 1.
inline Presentation specialize_q1(const Presentation& p) {
    Presentation r = p;
    r.set_name(p.name() + "@q=1");
    std::vector<RewriteRule> rules = p.rules();
    for (auto& rule : rules) rule.rhs = rule.rhs.map_scalars([](const Scalar& s) { return Scalar(s.eval_q1()); });
    r.set_rules(std::move(rules));
    return r;
}

// At q = 1 every rule's LHS pair x.y must (anti)commute modulo the specialized ideal.
inline CheckResult classical_limit_check(const Presentation& p) {
    Presentation c = specialize_q1(p);
    Normalizer nf(c);
    std::string detail;
    std::size_t bad = 0;
    for (const auto& r : p.rules()) {
        Element comm;
        if (r.lhs.size() == 2) {
            Word rev{r.lhs[1], r.lhs[0]};
            Scalar sign = (p.is_odd(r.lhs[0]) && p.is_odd(r.lhs[1])) ? Scalar(1) : Scalar(-1);
            comm = Element::word(r.lhs) + sign * Element::word(rev);
        } else {
            Word rev(r.lhs.rbegin(), r.lhs.rend());
            comm = Element::word(r.lhs) - Element::word(rev);
        }
        Element e = nf(comm);
        if (!e.is_zero()) {
            ++bad;
            detail += p.word_str(r.lhs) + " -> " + c.str(e) + "; ";
        }
    }
    return make_check("classical limit " + p.name(), "6", bad == 0, detail);
}

// (i, j) entries of A.B for 2x2 matrices of elements (free product).
using Mat2 = std::array<std::array<Element, 2>, 2>;

inline Mat2 matmul(const Mat2& A, const Mat2& B) {
    Mat2 C;
    for (int i = 0; i < 2; ++i)
        for (int k = 0; k < 2; ++k) C[i][k] = A[i][0] * B[0][k] + A[i][1] * B[1][k];
    return C;
}

inline Mat2 t_matrix(const Presentation& p) {
    return {{{t_entry(p, 0, 0), t_entry(p, 0, 1)}, {t_entry(p, 1, 0), t_entry(p, 1, 1)}}};
}

inline Mat2 transpose(const Mat2& A) { return {{{A[0][0], A[1][0]}, {A[0][1], A[1][1]}}}; }

// Entrywise comparison of A against expected (both normalized in p).
inline CheckResult compare_matrix(const std::string& name, const std::string& ref, const Mat2& A, const Mat2& expected,
                                  const Presentation& p) {
    Normalizer nf(p);
    std::string detail;
    bool ok = true;
    for (int i = 0; i < 2; ++i)
        for (int k = 0; k < 2; ++k) {
            Element e = nf(A[i][k] - expected[i][k]);
            if (!e.is_zero()) {
                ok = false;
                detail += "(" + std::to_string(i + 1) + "," + std::to_string(k + 1) + "): " + p.str(e) + "; ";
            }
        }
    return make_check(name, ref, ok, detail);
}

inline Mat2 epsilon_q() { return {{{Element{}, Element(Scalar(1))}, {Element(-Scalar::q()), Element{}}}}; }

// T^t eps T = eps D and T eps T^t = eps D, transpose reading of the superscript.
inline CheckResult epsilon_identity_check(const Presentation& p) {
    Mat2 T = t_matrix(p), eps = epsilon_q();
    Element det = normalize(qdet(p), p);
    Mat2 expected;
    for (int i = 0; i < 2; ++i)
        for (int k = 0; k < 2; ++k) expected[i][k] = eps[i][k] * det;
    auto a = compare_matrix("T^t eps T", "2.8", matmul(matmul(transpose(T), eps), T), expected, p);
    auto b = compare_matrix("T eps T^t", "2.8", matmul(matmul(T, eps), transpose(T)), expected, p);
    return all_of("epsilon identity", "2.8", {a, b});
}

// Antipode images on the parameter matrix: S(T) = D^-1 [[d, -q^-1 b], [-q c, a]].
inline Mat2 antipode_matrix(const Presentation& p) {
    Element Di = p.has("Di") ? p.gen("Di") : Element(Scalar(1));
    Mat2 T = t_matrix(p);
    return {{{T[1][1] * Di, Scalar(-1) / Scalar::q() * (T[0][1] * Di)},
             {-Scalar::q() * (T[1][0] * Di), T[0][0] * Di}}};
}

inline Mat2 identity_matrix() { return {{{Element(Scalar(1)), Element{}}, {Element{}, Element(Scalar(1))}}}; }

inline CheckResult antipode_check(const Presentation& p) {
    Mat2 T = t_matrix(p), S = antipode_matrix(p);
    auto a = compare_matrix("S(T) T = 1", "2.3", matmul(S, T), identity_matrix(), p);
    auto b = compare_matrix("T S(T) = 1", "2.3", matmul(T, S), identity_matrix(), p);
    // S reverses products, so it must send every relation into the ideal.
    std::vector<Element> images(p.num_generators());
    for (Sym s = 0; s < p.num_generators(); ++s) {
        const std::string& n = p.generator(s).name;
        if (n == "a") images[s] = S[0][0];
        else if (n == "b") images[s] = S[0][1];
        else if (n == "c") images[s] = S[1][0];
        else if (n == "d") images[s] = S[1][1];
        else if (n == "D") images[s] = p.gen("Di");
        else if (n == "Di") images[s] = p.gen("D");
        else images[s] = Element::gen(s);
    }
    Normalizer nf(p);
    std::string detail;
    for (const auto& r : p.rules()) {
        Element e = nf(substitute_reversed(relation(r), images));
        if (!e.is_zero()) detail += "S(" + p.word_str(r.lhs) + " relation) = " + p.str(e) + "; ";
    }
    auto c = make_check("S anti-homomorphism", "2.3", detail.empty(), detail);
    return all_of("antipode", "2.3", {a, b, c});
}

// Two commuting copies of p's generators: names suffixed 1 and 2, second leg above the first.
inline Presentation tensor_square(const Presentation& p) {
    Presentation t(p.name() + "⊗" + p.name());
    for (int leg = 1; leg <= 2; ++leg)
        for (const auto& g : p.generators()) t.add_generator(g.name + std::to_string(leg), g.parity);
    std::size_t n = p.num_generators();
    for (int leg = 0; leg < 2; ++leg)
        for (const auto& r : p.rules()) {
            Word lhs;
            for (Sym s : r.lhs) lhs.push_back(static_cast<Sym>(s + leg * n));
            Element rhs;
            for (const auto& [w, c] : r.rhs) {
                Word x;
                for (Sym s : w) x.push_back(static_cast<Sym>(s + leg * n));
                rhs.add(x, c);
            }
            t.add_rule(lhs, rhs, r.tag);
        }
    for (Sym y = 0; y < n; ++y)
        for (Sym x = 0; x < n; ++x) {
            Scalar sign = (p.is_odd(x) && p.is_odd(y)) ? Scalar(-1) : Scalar(1);
            t.add_rule(Word{static_cast<Sym>(y + n), x}, Element::word(Word{x, static_cast<Sym>(y + n)}, sign), "2.1");
        }
    return t;
}

// Coproduct on the relations of glq2, D -> D D, plus the counit.
inline CheckResult coproduct_check(const Presentation& p) {
    Presentation t = tensor_square(p);
    auto leg = [&](const std::string& n, int l) { return t.gen(n + std::to_string(l)); };
    std::vector<Element> delta(p.num_generators()), counit(p.num_generators());
    std::map<std::string, std::pair<int, int>> pos = {{"a", {0, 0}}, {"b", {0, 1}}, {"c", {1, 0}}, {"d", {1, 1}}};
    static const char* names[2][2] = {{"a", "b"}, {"c", "d"}};
    for (Sym s = 0; s < p.num_generators(); ++s) {
        const std::string& n = p.generator(s).name;
        if (auto it = pos.find(n); it != pos.end()) {
            auto [i, k] = it->second;
            delta[s] = leg(names[i][0], 1) * leg(names[0][k], 2) + leg(names[i][1], 1) * leg(names[1][k], 2);
            counit[s] = Element(Scalar(i == k ? 1 : 0));
        } else {
            delta[s] = leg(n, 1) * leg(n, 2);
            counit[s] = Element(Scalar(1));
        }
    }
    Normalizer nf(t);
    std::string bad_delta, bad_counit;
    for (const auto& r : p.rules()) {
        Element e = nf(substitute(relation(r), delta));
        if (!e.is_zero()) bad_delta += p.word_str(r.lhs) + " -> " + t.str(e) + "; ";
        Element u = substitute(relation(r), counit);
        if (!u.is_zero()) bad_counit += p.word_str(r.lhs) + "; ";
    }
    Element det1 = qdet(p);
    Element dd = nf(substitute(det1, delta) - substitute(det1, [&] {
                        std::vector<Element> l1(p.num_generators());
                        for (Sym s = 0; s < p.num_generators(); ++s) l1[s] = leg(p.generator(s).name, 1);
                        return l1;
                    }()) * substitute(det1, [&] {
                        std::vector<Element> l2(p.num_generators());
                        for (Sym s = 0; s < p.num_generators(); ++s) l2[s] = leg(p.generator(s).name, 2);
                        return l2;
                    }()));
    return all_of("hopf coproduct", "2.1",
                  {make_check("coproduct on relations", "2.1", bad_delta.empty(), bad_delta),
                   make_check("coproduct of qdet", "2.9", dd.is_zero(), dd.is_zero() ? "" : t.str(dd)),
                   make_check("counit on relations", "2.2", bad_counit.empty(), bad_counit)});
}

}  // namespace qcalc
