#pragma once
// Exterior derivatives, Maurer-Cartan forms, the quantum trace, differential-mode rules and vector fields.

#include "qcalc/check.hpp"
#include "qcalc/expr.hpp"
#include "qcalc/ncalg.hpp"
#include "qcalc/presentations.hpp"

#include <array>
#include <map>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace qcalc {

enum class Side { left, right };

inline const char* side_name(Side s) { return s == Side::left ? "left" : "right"; }

struct ConversionSingular : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DecompositionFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Differential of every generator of one presentation.
struct DiffStructure {
    Side side = Side::left;
    std::vector<Element> images;  // indexed by generator
    // Parameters whose differentials become generators in differential mode.
    std::vector<std::string> primitives;
    // Form generator -> expression in parameters and primitive differentials ("d" + name).
    std::map<std::string, std::string> form_to_diff;
};

inline std::size_t form_degree(const Word& w, const Presentation& p) { return p.odd_count(w); }

// Graded derivation before normalization.
// Left: delta(fg) = f delta g + (-1)^{deg g} delta f g.  Right: delta(fg) = delta f g + (-1)^{deg f} f delta g.
inline Element delta_free(const Element& x, const DiffStructure& d, const Presentation& p) {
    Element out;
    for (const auto& [w, c] : x) {
        for (Sym s : w)
            if (s >= d.images.size()) throw UnknownGenerator(s < p.num_generators() ? p.generator(s).name : "#" + std::to_string(s));
        for (std::size_t i = 0; i < w.size(); ++i) {
            std::size_t odd = 0;
            if (d.side == Side::left)
                for (std::size_t j = i + 1; j < w.size(); ++j) odd += p.is_odd(w[j]);
            else
                for (std::size_t j = 0; j < i; ++j) odd += p.is_odd(w[j]);
            Element t = Element::word(Word(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(i))) * d.images[w[i]] *
                        Element::word(Word(w.begin() + static_cast<std::ptrdiff_t>(i) + 1, w.end()));
            out.add(t, odd % 2 ? -c : c);
        }
    }
    return out;
}

inline Element apply_delta(const Element& x, const DiffStructure& d, Normalizer& nf) {
    return nf(delta_free(x, d, nf.presentation()));
}

inline Element apply_delta(const Element& x, const DiffStructure& d, const Presentation& p) {
    Normalizer nf(p);
    return apply_delta(x, d, nf);
}

// A calculus preset with its Maurer-Cartan matrix and form basis.
struct CalculusModel {
    PresetId id{};
    const Presentation* p = nullptr;
    Side side = Side::left;
    DiffStructure delta;
    std::array<Element, 4> theta;  // entries (1,1), (1,2), (2,1), (2,2)
    std::vector<int> basis;        // matrix entry of each basis 1-form
    // Form generator -> coordinates over the basis.
    std::map<Sym, std::vector<Scalar>> coords;
    Element trace;  // zero in the unimodular presets
    std::string diff_tag;

    const Presentation& pres() const { return *p; }
};

namespace detail {

inline Scalar sc(long n) { return Scalar(n); }
inline Scalar half() { return Scalar(mpq_class(1, 2)); }

inline std::vector<Scalar> unit(std::size_t n, std::size_t k) {
    std::vector<Scalar> v(n);
    v[k] = Scalar(1);
    return v;
}

// Differential-mode expression of each Maurer-Cartan entry, for the unimodular and plane presets.
inline std::map<int, std::string> sl_conversion(PresetId id) {
    switch (id) {
        case PresetId::slq2_left: return {{0, "d.da - q^-1 b.dc"}, {1, "d.db - q^-1 b.dd"}, {2, "a.dc - q c.da"}};
        case PresetId::qplane_left_c0: return {{0, "-q^-2 a.dd"}, {1, "d.db - q^-1 b.dd"}};
        case PresetId::qplane_left_b0: return {{0, "d.da"}, {2, "a.dc - q c.da"}};
        case PresetId::slq2_right: return {{0, "da.d - q db.c"}, {1, "db.a - q^-1 da.b"}, {2, "dc.d - q dd.c"}};
        case PresetId::qplane_right_c0: return {{0, "da.d"}, {1, "db.a - q^-1 da.b"}};
        case PresetId::qplane_right_b0: return {{0, "-q^2 dd.a"}, {2, "dc.d - q dd.c"}};
        default: return {};
    }
}

inline std::vector<std::string> primitives_of(PresetId id) {
    switch (id) {
        case PresetId::qplane_left_c0: return {"b", "d"};
        case PresetId::qplane_left_b0: return {"a", "c"};
        case PresetId::qplane_right_c0: return {"a", "b"};
        case PresetId::qplane_right_b0: return {"c", "d"};
        default: return {"a", "b", "c", "d"};
    }
}

inline std::string diff_tag_of(PresetId id) {
    switch (id) {
        case PresetId::glq2_left: return "3.24";
        case PresetId::slq2_left: return "4.4";
        case PresetId::glq2_right: return "5.22";
        case PresetId::slq2_right: return "5.23";
        default: return "4.5";
    }
}

inline std::string combine(const std::vector<std::pair<Scalar, std::string>>& parts) {
    std::string s;
    for (const auto& [c, e] : parts) {
        if (c.is_zero()) continue;
        if (!s.empty()) s += " + ";
        s += "(" + c.canonical() + ")*(" + e + ")";
    }
    return s.empty() ? "0" : s;
}

inline CalculusModel build_model(PresetId id) {
    if (!is_left_calculus(id) && !is_right_calculus(id))
        throw std::invalid_argument("preset '" + preset_name(id) + "' carries no calculus");
    CalculusModel m;
    m.id = id;
    m.p = &preset(id);
    const Presentation& p = *m.p;
    m.side = is_left_calculus(id) ? Side::left : Side::right;
    m.delta.side = m.side;
    m.delta.primitives = primitives_of(id);
    m.diff_tag = diff_tag_of(id);
    auto f = [&](const char* n) { return p.has(n) ? p.gen(n) : Element{}; };
    const Scalar q = Scalar::q(), one(1), s = one + q * q;
    const bool left = m.side == Side::left;

    if (id == PresetId::glq2_left || id == PresetId::glq2_right) {
        m.basis = {0, 1, 2, 3};
        std::vector<std::string> conv;
        if (left) {
            // th1t = beta th1 + alpha th4, th4t = (th1 - th4)/(1+q^2).
            Scalar alpha = sc(2) / s, beta = sc(2) * q * q / s, k = one / s;
            m.theta = {half() * f("th1t") + f("th4t"), f("th2"), f("th3"), half() * f("th1t") - (q * q) * f("th4t")};
            m.coords[p.sym("th1t")] = {beta, {}, {}, alpha};
            m.coords[p.sym("th2")] = unit(4, 1);
            m.coords[p.sym("th3")] = unit(4, 2);
            m.coords[p.sym("th4t")] = {k, {}, {}, -k};
            m.trace = f("th1t");
            conv = {"Di.(d.da - q^-1 b.dc)", "Di.(d.db - q^-1 b.dd)", "Di.(a.dc - q c.da)", "Di.(a.dd - q c.db)"};
        } else {
            // w1b = u w1 + t w4, w4b = k (w1 - w4).
            Scalar u = sc(2) / s, t = sc(2) * q * q / s, k = q * q / s;
            m.theta = {half() * f("w1b") + f("w4b"), f("w2"), f("w3"), half() * f("w1b") - q.pow(-2) * f("w4b")};
            m.coords[p.sym("w1b")] = {u, {}, {}, t};
            m.coords[p.sym("w2")] = unit(4, 1);
            m.coords[p.sym("w3")] = unit(4, 2);
            m.coords[p.sym("w4b")] = {k, {}, {}, -k};
            m.trace = f("w1b");
            conv = {"(da.d - q db.c).Di", "(db.a - q^-1 da.b).Di", "(dc.d - q dd.c).Di", "(dd.a - q^-1 dc.b).Di"};
        }
        for (const auto& [g, c] : m.coords) {
            std::vector<std::pair<Scalar, std::string>> parts;
            for (std::size_t k = 0; k < 4; ++k) parts.emplace_back(c[k], conv[k]);
            m.delta.form_to_diff[p.generator(g).name] = combine(parts);
        }
    } else {
        std::array<const char*, 3> names = left ? std::array<const char*, 3>{"th1", "th2", "th3"}
                                                : std::array<const char*, 3>{"w1", "w2", "w3"};
        Scalar s4 = left ? -(q * q) : -q.pow(-2);
        m.theta = {f(names[0]), f(names[1]), f(names[2]), s4 * f(names[0])};
        for (int e = 0; e < 3; ++e)
            if (p.has(names[e])) m.basis.push_back(e);
        auto conv = sl_conversion(id);
        for (std::size_t k = 0; k < m.basis.size(); ++k) {
            Sym g = p.sym(names[m.basis[k]]);
            m.coords[g] = unit(m.basis.size(), k);
            m.delta.form_to_diff[p.generator(g).name] = conv.at(m.basis[k]);
        }
    }

    // Parameters: left delta T = T theta, right delta T = omega T.
    m.delta.images.assign(p.num_generators(), Element{});
    Mat2 T = t_matrix(p);
    Mat2 Th{{{m.theta[0], m.theta[1]}, {m.theta[2], m.theta[3]}}};
    Mat2 dT = left ? matmul(T, Th) : matmul(Th, T);
    Mat2 ThTh = matmul(Th, Th);
    Normalizer nf(p);
    static const char* pnames[2][2] = {{"a", "b"}, {"c", "d"}};
    for (int i = 0; i < 2; ++i)
        for (int k = 0; k < 2; ++k)
            if (p.has(pnames[i][k])) m.delta.images[p.sym(pnames[i][k])] = nf(dT[i][k]);
    // Forms: delta theta = theta.theta.
    for (const auto& [g, c] : m.coords) {
        Element img;
        for (std::size_t k = 0; k < m.basis.size(); ++k) img.add(ThTh[m.basis[k] / 2][m.basis[k] % 2], c[k]);
        m.delta.images[g] = nf(img);
    }
    if (p.has("D")) {
        Element dD = apply_delta(qdet(p), m.delta, nf);
        m.delta.images[p.sym("D")] = dD;
        m.delta.images[p.sym("Di")] = nf(-(p.gen("Di") * dD * p.gen("Di")));
    }
    return m;
}

}  // namespace detail

inline const CalculusModel& calculus(PresetId id) {
    static const std::map<PresetId, CalculusModel> cache = [] {
        std::map<PresetId, CalculusModel> c;
        for (PresetId i : all_presets())
            if (is_left_calculus(i) || is_right_calculus(i)) c.emplace(i, detail::build_model(i));
        return c;
    }();
    auto it = cache.find(id);
    if (it == cache.end()) throw std::invalid_argument("preset '" + preset_name(id) + "' carries no calculus");
    return it->second;
}

// delta(delta w) = 0 for every normal word of degree <= max_degree, forms included.
inline CheckResult check_nilpotent(const DiffStructure& d, const Presentation& p, std::size_t max_degree) {
    Normalizer nf(p);
    std::unordered_map<Word, Element, WordHash> once;
    auto delta_word = [&](const Word& w) -> const Element& {
        auto it = once.find(w);
        if (it != once.end()) return it->second;
        return once.emplace(w, apply_delta(Element::word(w), d, nf)).first->second;
    };
    std::size_t checked = 0, bad = 0;
    std::string detail;
    for (const Word& w : normal_words(p, max_degree)) {
        if (w.empty()) continue;
        Element dd;
        Element first = delta_word(w);
        for (const auto& [u, c] : first) dd.add(delta_word(u), c);
        ++checked;
        if (!dd.is_zero() && bad++ < 3) detail += "delta^2(" + p.word_str(w) + ") = " + p.str(dd) + "; ";
    }
    auto r = make_check("delta^2 = 0 on " + std::to_string(checked) + " words of degree <= " + std::to_string(max_degree),
                        d.side == Side::left ? "2.15" : "2.20", bad == 0, detail);
    return r;
}

// delta of every defining relation lies in the ideal.
inline CheckResult relation_compat_check(const DiffStructure& d, const Presentation& p) {
    Normalizer nf(p);
    std::string detail;
    for (const auto& r : p.rules()) {
        Element e = apply_delta(relation(r), d, nf);
        if (!e.is_zero()) detail += "delta(" + p.word_str(r.lhs) + " relation) = " + p.str(e) + "; ";
    }
    return make_check("delta annihilates every relation", d.side == Side::left ? "2.14" : "2.20", detail.empty(), detail);
}

// delta theta = theta.theta entrywise.
inline CheckResult maurer_cartan_check(const CalculusModel& m) {
    const Presentation& p = m.pres();
    Mat2 Th{{{m.theta[0], m.theta[1]}, {m.theta[2], m.theta[3]}}};
    Mat2 lhs;
    for (int i = 0; i < 2; ++i)
        for (int k = 0; k < 2; ++k) lhs[i][k] = delta_free(Th[i][k], m.delta, p);
    return compare_matrix("delta theta = theta.theta", m.side == Side::left ? "2.16" : "2.21", lhs, matmul(Th, Th), p);
}

// S(T) delta T reproduces theta (left); delta T S(T) reproduces omega (right).
inline CheckResult maurer_cartan_roundtrip(const CalculusModel& m) {
    const Presentation& p = m.pres();
    Mat2 T = t_matrix(p), S = antipode_matrix(p), dT;
    for (int i = 0; i < 2; ++i)
        for (int k = 0; k < 2; ++k) dT[i][k] = delta_free(T[i][k], m.delta, p);
    Mat2 Th{{{m.theta[0], m.theta[1]}, {m.theta[2], m.theta[3]}}};
    if (m.side == Side::left) return compare_matrix("S(T) delta T = theta", "2.17", matmul(S, dT), Th, p);
    return compare_matrix("delta T S(T) = omega", "2.22", matmul(dT, S), Th, p);
}

// Derived relations delta x . y (left) or y . delta x (right) in a migration-ordered presentation.
inline Presentation derive_diff_rules(const Presentation& p, const DiffStructure& d, const std::string& tag = {}) {
    Presentation base(p.name() + "-diff", d.side == Side::left ? OrderKind::migration : OrderKind::migration_left);
    std::vector<std::optional<Sym>> to_base(p.num_generators());
    for (Sym s = 0; s < p.num_generators(); ++s)
        if (!p.is_odd(s)) to_base[s] = base.add_generator(p.generator(s).name, Parity::even);
    std::map<std::string, Sym> dsym;
    for (const auto& x : d.primitives) dsym[x] = base.add_generator("d" + x, Parity::odd);
    for (const auto& r : p.rules()) {
        bool even = true;
        for (Sym s : r.lhs) even = even && to_base[s].has_value();
        for (const auto& [w, c] : r.rhs)
            for (Sym s : w) even = even && to_base[s].has_value();
        if (!even) continue;
        Word lhs;
        for (Sym s : r.lhs) lhs.push_back(*to_base[s]);
        Element rhs;
        for (const auto& [w, c] : r.rhs) {
            Word v;
            for (Sym s : w) v.push_back(*to_base[s]);
            rhs.add(v, c);
        }
        base.add_rule(lhs, rhs, r.tag);
    }

    // Forms expressed through differentials, and the way back.
    std::vector<Element> to_diff(p.num_generators());
    for (Sym s = 0; s < p.num_generators(); ++s) {
        if (to_base[s]) {
            to_diff[s] = Element::gen(*to_base[s]);
            continue;
        }
        auto it = d.form_to_diff.find(p.generator(s).name);
        if (it == d.form_to_diff.end())
            throw ConversionSingular("no differential expression for form '" + p.generator(s).name + "'");
        to_diff[s] = parse_expression(it->second, base);
    }
    std::vector<Element> to_forms(base.num_generators());
    for (Sym s = 0; s < p.num_generators(); ++s)
        if (to_base[s]) to_forms[*to_base[s]] = Element::gen(s);
    for (const auto& [x, ds] : dsym) to_forms[ds] = d.images.at(p.sym(x));

    Normalizer nf(p), nb(base);
    for (Sym s = 0; s < p.num_generators(); ++s) {
        if (to_base[s]) continue;
        Element back = nf(substitute(to_diff[s], to_forms));
        if (back != Element::gen(s))
            throw ConversionSingular("form '" + p.generator(s).name + "' is not recovered from its differential expression: " +
                                     p.str(back));
    }

    Presentation out = base;
    for (const auto& [x, ds] : dsym) {
        const Element& img = d.images.at(p.sym(x));
        for (Sym y = 0; y < p.num_generators(); ++y) {
            if (!to_base[y]) continue;
            Element form = nf(d.side == Side::left ? img * Element::gen(y) : Element::gen(y) * img);
            Element rhs = nb(substitute(form, to_diff));
            Word lhs = d.side == Side::left ? Word{ds, *to_base[y]} : Word{*to_base[y], ds};
            out.add_rule(lhs, rhs, tag);
        }
    }
    return out;
}

inline const Presentation& diff_presentation(PresetId id) {
    static const std::map<PresetId, Presentation> cache = [] {
        std::map<PresetId, Presentation> c;
        for (PresetId i : all_presets())
            if (is_left_calculus(i) || is_right_calculus(i)) {
                const auto& m = calculus(i);
                c.emplace(i, derive_diff_rules(m.pres(), m.delta, m.diff_tag));
            }
        return c;
    }();
    return cache.at(id);
}

// ---- quantum trace ----

inline CheckResult qtrace_check(const CalculusModel& m) {
    if (m.id != PresetId::glq2_left && m.id != PresetId::glq2_right)
        return {"quantum trace", "3.6", Status::skipped, "only defined for glq2-left and glq2-right", 0};
    const Presentation& p = m.pres();
    Normalizer nf(p);
    const Scalar q = Scalar::q(), one(1);
    const Element& t1 = m.theta[0];
    const Element& t4 = m.theta[3];
    Element det = qdet(p);
    Element dD = apply_delta(det, m.delta, nf);
    Element printed2 = (Scalar(2) / (q + q.inverse())) * ((m.side == Side::left ? q : q.inverse()) * t1 +
                                                           (m.side == Side::left ? q.inverse() : q) * t4);
    std::vector<CheckResult> parts;
    auto zero = [&](const std::string& name, const std::string& ref, const Element& e) {
        Element r = nf(e);
        parts.push_back(make_check(name, ref, r.is_zero(), r.is_zero() ? "" : p.str(r)));
    };
    if (m.side == Side::left) {
        Scalar alpha = Scalar(2) / (one + q * q);
        parts.push_back(make_check("2q^2/(1+q^2) = (2/(q+1/q)) q", "3.6",
                                   alpha * q * q == Scalar(2) / (q + q.inverse()) * q));
        Element printed1 = alpha * ((q * q) * t1 + t4);
        zero("alpha(q^2 th1 + th4) = (2/(q+1/q))(q th1 + q^-1 th4)", "3.6", printed1 - printed2);
        zero("delta D_q - D_q Tr", "3.6", dD - det * printed2);
    } else {
        Scalar t = Scalar(2) / (one + q.pow(-2));
        Element printed1 = t * (q.pow(-2) * t1 + t4);
        zero("t(q^-2 w1 + w4) = (2/(q+1/q))(q^-1 w1 + q w4)", "5.11", printed1 - printed2);
        zero("delta D_q - Tr D_q", "5.11", dD - printed1 * det);
    }
    zero("Tr = " + p.str(m.trace), m.side == Side::left ? "3.22" : "5.19", printed2 - m.trace);
    std::string central;
    for (const char* x : {"a", "b", "c", "d", "D", "Di"}) {
        Element e = nf(m.trace * p.gen(x) - p.gen(x) * m.trace);
        if (!e.is_zero()) central += std::string(x) + ": " + p.str(e) + "; ";
    }
    parts.push_back(make_check("Tr central among parameters", m.side == Side::left ? "3.24" : "5.22", central.empty(), central));
    auto r = all_of("quantum trace " + preset_name(m.id), m.side == Side::left ? "3.6" : "5.11", parts);
    return r;
}

// ---- printed differential relations ----

namespace detail {

inline const std::vector<std::string>& printed_3_24() {
    static const std::vector<std::string> v = {
        "da*a = q^-2*a*da + (q^2-1)/(2*q^2)*a^2*Tr",
        "dc*c = q^-2*c*dc + (q^2-1)/(2*q^2)*c^2*Tr",
        "da*c = q^-1*c*da + (q^2-1)/(2*q^2)*a*c*Tr",
        "dc*a = q^-1*a*dc + (q^-2-1)*c*da + (q^2-1)/(2*q^2)*c*a*Tr",
        "db*b = q^2*b*db + (1-q^2)/2*b^2*Tr",
        "dd*d = q^2*d*dd + (1-q^2)/2*d^2*Tr",
        "db*d = q*d*db + (q^2-1)*b*dd + (1-q^2)/2*b*d*Tr",
        "dd*b = q*b*dd + (1-q^2)/2*d*b*Tr",
        "da*b = q*b*da + (q^2-1)/q^2*Di*a*b*(q*c*db - a*dd) + (q^2-1)/(2*q^2)*a*b*Tr",
        "da*d = d*da + (q-1/q)*b*dc + (q^2-1)*Di*a*d*(d*da - 1/q*b*dc) - (q^2-1)/2*a*d*Tr",
        "dc*b = b*dc + (q^2-1)*Di*c*b*(d*da - 1/q*b*dc) - (q^2-1)/2*c*b*Tr",
        "dc*d = q*d*dc + (q^2-1)*Di*c*d*(d*da - 1/q*b*dc) - (q^2-1)/2*c*d*Tr",
        "db*a = q^-1*a*db + (q^2-1)/q^2*Di*b*a*(q*c*db - a*dd) + (q^2-1)/(2*q^2)*b*a*Tr",
        "db*c = c*db + (q^2-1)*Di*b*c*(d*da - 1/q*b*dc) - (q^2-1)/2*b*c*Tr",
        "dd*a = a*dd - (q-1/q)*c*db + (q^2-1)*Di*d*a*(d*da - 1/q*b*dc) - (q^2-1)/2*d*a*Tr",
        "dd*c = q^-1*c*dd + (q^2-1)*Di*d*c*(d*da - 1/q*b*dc) - (q^2-1)/2*d*c*Tr",
    };
    return v;
}

inline const std::vector<std::string>& printed_4_4() {
    static const std::vector<std::string> v = {
        "da*a = q^-2*a*da",
        "dc*c = q^-2*c*dc",
        "da*c = q^-1*c*da",
        "dc*a = q^-1*a*dc + (q^-2-1)*c*da",
        "db*b = q^2*b*db",
        "dd*d = q^2*d*dd",
        "db*d = q*d*db + (q^2-1)*b*dd",
        "dd*b = q*b*dd",
        "da*b = q*b*da + (q^2-1)*a*b*d*da + (1/q-q)*a*b^2*dc",
        "da*d = q^2*d*da + q*(q^2-1)*b*c*d*da + (1-q^2)*b^2*c*dc",
        "dc*b = b*dc + (q^2-1)*b*c*d*da + (1/q-q)*b^2*c*dc",
        "dc*d = q*d*dc + (q^2-1)*c*d^2*da + (1/q-q)*c*d*b*dc",
        "db*a = q^-1*a*db + (q^2-1)*b*a*d*da + (1-q^2)*b^2*a*dc",
        "db*c = c*db + (q^2-1)*b*c*d*da + (1/q-q)*b^2*c*dc",
        "dd*a = q^-2*a*dd + q^-2*(1/q-q)*b*c*a*dd + (1-q^-2)*b*c^2*db",
        "dd*c = q^-1*c*dd + (q^-2-1)*d*c*a*dd + (q-1/q)*d*c^2*db",
    };
    return v;
}

inline const std::vector<std::string>& printed_5_22() {
    static const std::vector<std::string> v = {
        "a*da = q^2*da*a + (1-q^2)/2*Tr*a^2",
        "b*db = q^2*db*b + (1-q^2)/2*Tr*b^2",
        "c*dc = q^-2*db*b + (1-q^-2)/2*Tr*c^2",
        "d*da = q^-2*dd*d + (1-q^-2)/2*Tr*d^2",
        "b*da = q*da*b + (1-q^2)/2*Tr*b*a",
        "a*db = q*db*a + (q^2-1)*da*b + (1-q^2)/2*Tr*a*b",
        "d*dc = 1/q*dc*d + (q^-2-1)*dd*c + (1-q^-2)/2*Tr*d*c",
        "c*dd = 1/q*dd*c + (1-q^-2)/2*Tr*c*d",
        "a*dc = q*dc*a + (q-1/q)*Di*(db*c - 1/q*da*d)*a*c + (1-q^-2)/2*Tr*a*c",
        "c*da = 1/q*da*c + (q-1/q)*Di*(db*c - 1/q*da*d)*c*a + (1-q^-2)/2*Tr*c*a",
        "a*dd = dd*a + (q-1/q)*Di*(db*c - 1/q*da*d)*a*d + (1-q^-2)/2*Tr*a*d",
        "d*da = da*d + (q-1/q)*Di*(db*c - 1/q*da*d)*d*a + (1-q^-2)/2*Tr*d*a",
        "b*dc = dc*b + (q-1/q)*Di*(db*c - 1/q*da*d)*b*c + (1-q^-2)/2*Tr*b*c",
        "c*db = db*c + (q-1/q)*Di*(db*c - 1/q*da*d)*c*b + (1-q^-2)/2*Tr*c*b",
        "b*dd = dd*b + (q-1/q)*Di*(db*c - 1/q*da*d)*b*d + (1-q^-2)/2*Tr*b*d",
        "d*db = db*d + (q-1/q)*Di*(db*c - 1/q*da*d)*d*b + (1-q^-2)/2*Tr*d*b",
    };
    return v;
}

// The two printed columns of the quantum-plane calculus.
inline const std::vector<std::string>& printed_4_5(int column) {
    static const std::vector<std::string> one = {
        "x*y = q*y*x", "dx*x = q^-2*x*dx", "dy*y = q^2*y*dy", "dx*y = q*y*dx + (q^2-1)*x*dy", "dy*x = q*x*dy",
    };
    static const std::vector<std::string> two = {
        "x*y = q*y*x", "dx*x = q^-2*x*dx", "dy*y = q^-2*y*dy", "dx*y = q^-1*y*dx", "dy*x = q^-1*x*dy + (q^-2-1)*y*dx",
    };
    return column == 1 ? one : two;
}

inline std::pair<std::string, std::string> split_relation(const std::string& text) {
    auto eq = text.find('=');
    if (eq == std::string::npos || text.find('=', eq + 1) != std::string::npos)
        throw ParseError(1, text.size(), "expected exactly one '='");
    return {text.substr(0, eq), text.substr(eq + 1)};
}

}  // namespace detail

// Compares one printed "lhs = rhs" line with the calculus.
// The line is read in form mode (dx -> delta x, Tr -> trace) and must vanish there.
// On mismatch the derived differential-mode normal form of the LHS is attached as the correction.
// alias maps plane coordinates to parameters, e.g. x -> b.
inline CheckResult compare_printed(const CalculusModel& m, const Presentation& diff, const std::string& line,
                                   const std::string& name, const std::string& ref,
                                   const std::map<std::string, std::string>& alias = {}) {
    const Presentation& p = m.pres();
    SymbolTable forms, diffs;
    for (const char* x : {"a", "b", "c", "d"}) {
        if (!p.has(x)) continue;
        forms["d" + std::string(x)] = m.delta.images[p.sym(x)];
    }
    forms["Tr"] = m.trace;
    for (const auto& [from, to] : alias) {
        forms[from] = p.gen(to);
        forms["d" + from] = m.delta.images[p.sym(to)];
        diffs[from] = diff.gen(to);
        if (diff.has("d" + to)) diffs["d" + from] = diff.gen("d" + to);
    }
    auto [lhs, rhs] = detail::split_relation(line);
    Element res = normalize(parse_expression(lhs, p, &forms) - parse_expression(rhs, p, &forms), p);
    if (res.is_zero()) return {name, ref, Status::pass, "CONFIRMED: " + line, 0};
    std::string correction;
    try {
        Element l = parse_expression(lhs, diff, &diffs);
        Element nl = normalize(l, diff);
        correction = diff.str(nl);
        // Already a normal word: show the derived rule for the swapped product instead.
        if (nl == l && l.size() == 1 && l.begin()->first.size() == 2) {
            Word w = l.begin()->first;
            Word rev{w[1], w[0]};
            correction += " (normal word); derived " + diff.word_str(rev) + " = " +
                          diff.str(normalize(Element::word(rev), diff));
        }
    } catch (const std::exception& e) {
        correction = std::string("(not expressible: ") + e.what() + ")";
    }
    return {name, ref, Status::mismatch,
            "MISMATCH: printed " + line + "; derived " + detail::trim(lhs) + " = " + correction +
                "; printed minus derived in forms = " + p.str(res),
            0};
}

inline std::vector<CheckResult> regression_lines(PresetId id, const std::vector<std::string>& lines,
                                                 const std::string& ref,
                                                 const std::map<std::string, std::string>& alias = {},
                                                 const std::string& prefix = {}) {
    const auto& m = calculus(id);
    const auto& diff = diff_presentation(id);
    std::vector<CheckResult> out;
    for (std::size_t i = 0; i < lines.size(); ++i) {
        std::string name = prefix + "line " + std::to_string(i + 1) + ": " + detail::trim(detail::split_relation(lines[i]).first);
        out.push_back(timed([&] { return compare_printed(m, diff, lines[i], name, ref, alias); }));
    }
    return out;
}

inline std::vector<CheckResult> regression_3_24() { return regression_lines(PresetId::glq2_left, detail::printed_3_24(), "3.24"); }
inline std::vector<CheckResult> regression_4_4() { return regression_lines(PresetId::slq2_left, detail::printed_4_4(), "4.4"); }
inline std::vector<CheckResult> regression_5_22() { return regression_lines(PresetId::glq2_right, detail::printed_5_22(), "5.22"); }

struct PlaneProjection {
    PresetId id;
    std::string x, y;
    int column;
};

// Left: c=0 carries column I, b=0 column II. Right (rows instead of columns): c=0 column II, b=0 column I.
inline const std::vector<PlaneProjection>& plane_projections() {
    static const std::vector<PlaneProjection> v = {
        {PresetId::qplane_left_c0, "b", "d", 1},
        {PresetId::qplane_left_b0, "a", "c", 2},
        {PresetId::qplane_right_c0, "a", "b", 2},
        {PresetId::qplane_right_b0, "c", "d", 1},
    };
    return v;
}

inline std::vector<CheckResult> regression_4_5() {
    std::vector<CheckResult> out;
    for (const auto& pp : plane_projections()) {
        std::string prefix = preset_name(pp.id) + " (x=" + pp.x + ", y=" + pp.y + ", column " +
                             (pp.column == 1 ? "I" : "II") + ") ";
        auto r = regression_lines(pp.id, detail::printed_4_5(pp.column), "4.5", {{"x", pp.x}, {"y", pp.y}}, prefix);
        out.insert(out.end(), r.begin(), r.end());
    }
    return out;
}

// ---- vector fields ----

// Coefficients of delta f over the form basis: left delta f = sum_k (f grad_k) theta^k, right sum_k omega^k (grad_k f).
inline std::vector<Element> vector_field_components(const Element& f, const CalculusModel& m, Normalizer& nf) {
    const Presentation& p = m.pres();
    std::vector<Element> comps(m.basis.size());
    Element df = apply_delta(f, m.delta, nf);
    for (const auto& [w, c] : df) {
        std::size_t pos = m.side == Side::left ? w.size() - 1 : 0;
        if (w.empty() || p.odd_count(w) != 1 || !p.is_odd(w[pos]))
            throw DecompositionFailure("form not in boundary position in " + p.word_str(w));
        Word rest = m.side == Side::left ? Word(w.begin(), w.end() - 1) : Word(w.begin() + 1, w.end());
        const auto& co = m.coords.at(w[pos]);
        for (std::size_t k = 0; k < co.size(); ++k) comps[k].add(rest, c * co[k]);
    }
    return comps;
}

// Sum of components against the basis forms; equals delta f.
inline Element recombine(const std::vector<Element>& comps, const CalculusModel& m, Normalizer& nf) {
    Element out;
    for (std::size_t k = 0; k < comps.size(); ++k) {
        const Element& th = m.theta[m.basis[k]];
        out += m.side == Side::left ? comps[k] * th : th * comps[k];
    }
    return nf(out);
}

// Memo of components per normal word.
struct VectorFieldTable {
    explicit VectorFieldTable(const CalculusModel& m) : m_(&m), nf_(m.pres()) {}

    const std::vector<Element>& row(const Word& w) {
        auto it = rows_.find(w);
        if (it != rows_.end()) return it->second;
        return rows_.emplace(w, vector_field_components(Element::word(w), *m_, nf_)).first->second;
    }

    // Field k (0-based) applied to f.
    Element apply(std::size_t k, const Element& f) {
        Element out;
        for (const auto& [w, c] : f) out.add(row(w).at(k), c);
        return out;
    }

    Normalizer& normalizer() { return nf_; }

private:
    const CalculusModel* m_;
    Normalizer nf_;
    std::unordered_map<Word, std::vector<Element>, WordHash> rows_;
};

// For a product of fields grad_i grad_j: which one acts on f first.
enum class Composition {
    left_first,   // f grad_i grad_j = (f grad_i) grad_j
    right_first,  // grad_i grad_j f = grad_i (grad_j f)
};

inline const char* composition_name(Composition c) {
    return c == Composition::left_first ? "(f.n_i).n_j (leftmost field acts first)"
                                        : "n_i.(n_j.f) (rightmost field acts first)";
}

struct FieldRelation {
    std::string text;  // over generators n1..nK and the aliases
    std::string ref;
};

struct FieldAlgebra {
    PresetId id;
    std::vector<FieldRelation> relations;
    std::map<std::string, std::string> aliases;  // e.g. h1 -> n1 - q^2 n4
    Composition frozen;
};

inline const std::vector<FieldAlgebra>& field_algebras() {
    static const std::vector<FieldAlgebra> v = {
        {PresetId::slq2_left,
         {{"q^2 n1.n3 - q^-2 n3.n1 = (1+q^2) n3", "4.3"},
          {"q^2 n2.n1 - q^-2 n1.n2 = (1+q^2) n2", "4.3"},
          {"n3.n2 - q^2 n2.n3 = n1", "4.3"}},
         {},
         Composition::left_first},
        {PresetId::glq2_left,
         {{"n3.n2 - q^2 n2.n3 = h1", "3.25"},
          {"q^2 n2.h1 - q^-2 h1.n2 = (1+q^2) n2", "3.25"},
          {"q^2 h1.n3 - q^-2 n3.h1 = (1+q^2) n3", "3.25"},
          {"h4.h1 - h1.h4 = 0", "3.25"},
          {"h4.n2 - n2.h4 = 0", "3.25"},
          {"h4.n3 - n3.h4 = 0", "3.25"}},
         {{"h1", "n1 - q^2 n4"}, {"h4", "n1 + n4"}},
         Composition::left_first},
        {PresetId::glq2_right,
         {{"q^-2 n2.h1 - q^2 h1.n2 = (1+q^-2) n2", "5.14"},
          {"q^-2 h1.n3 - q^2 n3.h1 = (1+q^-2) n3", "5.14"},
          {"n3.n2 - q^-2 n2.n3 = h1", "5.14"},
          {"h4.h1 - h1.h4 = 0", "5.15"},
          {"h4.n2 - n2.h4 = 0", "5.15"},
          {"h4.n3 - n3.h4 = 0", "5.15"},
          {"n4.n2 - n2.n4 = q^2 (t-1)(q^2+1) h1.n2 + q^2 (t + q^-2 t - 1) n2", "5.18"},
          {"n3.n4 - n4.n3 = q^2 (t-1)(q^2+1) n3.h1 + q^2 (t + q^-2 t - 1) n3", "5.18"}},
         {{"h1", "n1 - q^-2 n4"}, {"h4", "n1 + n4"}, {"t", "2/(1+q^-2)"}},
         Composition::right_first},
    };
    return v;
}

inline const FieldAlgebra* field_algebra(PresetId id) {
    for (const auto& a : field_algebras())
        if (a.id == id) return &a;
    return nullptr;
}

// Free algebra on the field symbols n1..nK.
inline Presentation field_presentation(std::size_t k) {
    Presentation f("fields");
    for (std::size_t i = 1; i <= k; ++i) f.add_generator("n" + std::to_string(i), Parity::even);
    return f;
}

// Every relation on every normal parameter monomial of degree <= max_degree.
inline std::vector<CheckResult> check_vector_algebra(const CalculusModel& m, const std::vector<FieldRelation>& rels,
                                                     const std::map<std::string, std::string>& aliases,
                                                     std::size_t max_degree, Composition order) {
    const Presentation& p = m.pres();
    Presentation fields = field_presentation(m.basis.size());
    SymbolTable syms;
    for (const auto& [k, v] : aliases) syms[k] = parse_expression(v, fields, &syms);
    auto corpus = normal_words(p, max_degree, [&](Sym s) { return !p.is_odd(s); });
    VectorFieldTable table(m);
    std::vector<CheckResult> out;
    for (const auto& rel : rels) {
        out.push_back(timed([&] {
            auto [l, r] = detail::split_relation(rel.text);
            Element op = parse_expression(l, fields, &syms) - parse_expression(r, fields, &syms);
            std::size_t bad = 0;
            std::string detail;
            for (const Word& f : corpus) {
                Element total;
                for (const auto& [w, c] : op) {
                    Element x = Element::word(f);
                    if (order == Composition::left_first)
                        for (Sym s : w) x = table.apply(s, x);
                    else
                        for (auto it = w.rbegin(); it != w.rend(); ++it) x = table.apply(*it, x);
                    total.add(x, c);
                }
                total = table.normalizer()(total);
                if (!total.is_zero() && bad++ < 2) detail += "f = " + p.word_str(f) + ": " + p.str(total) + "; ";
            }
            return make_check(rel.text + " on " + std::to_string(corpus.size()) + " monomials", rel.ref, bad == 0,
                              bad ? std::to_string(bad) + " failing monomials; " + detail : "");
        }));
    }
    return out;
}

// Both composition orders; the frozen one must pass everywhere, the record says whether the other fails.
inline std::vector<CheckResult> vector_field_suite(PresetId id, std::size_t max_degree = 3) {
    const FieldAlgebra* a = field_algebra(id);
    if (!a) return {{"vector fields", "3.25", Status::skipped, "no printed field algebra for " + preset_name(id), 0}};
    const auto& m = calculus(id);
    auto frozen = check_vector_algebra(m, a->relations, a->aliases, max_degree, a->frozen);
    Composition other = a->frozen == Composition::left_first ? Composition::right_first : Composition::left_first;
    auto alt = check_vector_algebra(m, a->relations, a->aliases, max_degree, other);
    std::size_t alt_fail = 0;
    for (const auto& c : alt) alt_fail += !c.ok();
    bool frozen_ok = true;
    for (const auto& c : frozen) frozen_ok = frozen_ok && c.ok();
    std::string record = std::string("frozen: ") + composition_name(a->frozen) + "; other order " +
                         composition_name(other) + " fails " + std::to_string(alt_fail) + " of " +
                         std::to_string(alt.size()) + " relations";
    std::vector<CheckResult> out = {make_check("composition order", a->relations.front().ref, frozen_ok, record)};
    out.front().residual = record;
    out.insert(out.end(), frozen.begin(), frozen.end());

    // Recombination identity over the same corpus.
    out.push_back(timed([&] {
        VectorFieldTable table(m);
        const Presentation& p = m.pres();
        std::size_t bad = 0;
        auto corpus = normal_words(p, max_degree, [&](Sym s) { return !p.is_odd(s); });
        for (const Word& f : corpus) {
            Element back = recombine(table.row(f), m, table.normalizer());
            if (back != apply_delta(Element::word(f), m.delta, table.normalizer())) ++bad;
        }
        return make_check("recombination of components gives delta f", m.side == Side::left ? "3.18" : "5.12", bad == 0,
                          bad ? std::to_string(bad) + " monomials differ" : "");
    }));
    return out;
}

// ---- conjugation theta = S(T) omega T ----

struct ConjugationSample {
    std::string form;  // th1 or th2
    std::string param;
    std::string lead;  // printed coefficient of param.form
    std::string tail;  // printed remaining terms
};

inline const std::vector<ConjugationSample>& conjugation_samples() {
    static const std::vector<ConjugationSample> v = {
        {"th1", "b", "q^-2",
         "- (q^4-1)/q^4 b^2 a c d th1 - (q^2-1)/q^3 b^2 a d^2 th3 + (q^2-1)/q^4 b^2 a c^2 th2"},
        {"th1", "c", "q^2",
         "q^2 (q^4-1) d c^2 b a th1 + q^2 (q^2-1) d c^2 b^2 th3 - q (q^2-1) d c^2 a^2 th2"},
        {"th2", "b", "q^-3",
         "- (q^4-1)/q^5 b^3 c d th1 - (q^2-1)/q^4 b^3 d^2 th3 + (q^2-1)/q^5 b^3 c^2 th2"},
        {"th2", "c", "q", "(q^4-1) c d^2 b a th1 + (q^2-1) c d^2 b^2 th3 - (q^2-1)/q c d^2 a^2 th2"},
    };
    return v;
}

// Left forms built from the right ones in slq2-right.
inline SymbolTable conjugated_forms(const Presentation& p) {
    const Scalar q = Scalar::q();
    Mat2 T = t_matrix(p), S = antipode_matrix(p);
    Mat2 Om{{{p.gen("w1"), p.gen("w2")}, {p.gen("w3"), -q.pow(-2) * p.gen("w1")}}};
    Mat2 th = matmul(matmul(S, Om), T);
    return {{"th1", th[0][0]}, {"th2", th[0][1]}, {"th3", th[1][0]}, {"th4", th[1][1]}};
}

inline std::vector<CheckResult> conjugate_forms_check(const Presentation& p,
                                                      const std::vector<ConjugationSample>& samples = conjugation_samples()) {
    Normalizer nf(p);
    SymbolTable th = conjugated_forms(p);
    std::vector<CheckResult> out;
    {
        Element e = nf(th["th4"] + Scalar::q().pow(2) * th["th1"]);
        out.push_back(make_check("th4 + q^2 th1 = 0", "4.1", e.is_zero(), e.is_zero() ? "" : p.str(e)));
    }
    for (const auto& s : samples) {
        std::string rel = s.form + "*" + s.param + " = " + s.lead + " " + s.param + " " + s.form + " " +
                          (s.tail.empty() || s.tail[0] == '-' ? "" : "+ ") + s.tail;
        // Leading coefficient: solve form.param - tail = lambda param.form.
        out.push_back(timed([&] {
            Element x = nf(parse_expression(s.form + "*" + s.param, p, &th) - parse_expression(s.tail, p, &th));
            Element y = nf(parse_expression(s.param + "*" + s.form, p, &th));
            Scalar printed = parse_scalar(s.lead);
            if (y.is_zero()) return make_check(s.form + " " + s.param + " leading term", "5", false, "param.form vanishes");
            const auto& [w, c] = *y.begin();
            Scalar lambda = x.coeff(w) / c;
            Element rest = nf(x - lambda * y);
            bool ok = rest.is_zero() && lambda == printed;
            std::string detail = "lambda = " + lambda.pretty() + ", printed " + printed.pretty();
            if (!rest.is_zero()) detail += "; not proportional: " + p.str(rest);
            auto r = make_check(s.form + " " + s.param + " leading term", "5", ok, detail);
            return r;
        }));
        out.push_back(timed([&] {
            auto [l, r] = detail::split_relation(rel);
            Element e = nf(parse_expression(l, p, &th) - parse_expression(r, p, &th));
            if (e.is_zero()) return CheckResult{s.form + " " + s.param + " full relation", "5", Status::pass, "CONFIRMED: " + rel, 0};
            Element lhs = nf(parse_expression(l, p, &th));
            return CheckResult{s.form + " " + s.param + " full relation", "5", Status::mismatch,
                               "MISMATCH: printed " + rel + "; derived " + l + " = " + p.str(lhs), 0};
        }));
    }
    return out;
}

}  // namespace qcalc
