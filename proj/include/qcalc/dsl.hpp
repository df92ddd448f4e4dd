#pragma once
// Line-oriented text format for presentations.
//
//   # comment
//   name <id>
//   extends <preset-id>
//   order deglex | migration | migration-left
//   gen <name> parity even|odd          (in increasing precedence)
//   rule <w1.w2...> -> <expr> [@tag]
//
// Generators are appended after those of an extended preset.

#include "qcalc/expr.hpp"
#include "qcalc/ncalg.hpp"
#include "qcalc/presentations.hpp"

#include <cctype>
#include <sstream>
#include <string>
#include <vector>

namespace qcalc {

struct Diagnostic {
    std::size_t line = 0, col = 0;
    std::string kind;  // syntax | unknown-generator | orientation | parity | lhs-length | duplicate-lhs | ...
    std::string message;
};

struct DslError : std::runtime_error {
    explicit DslError(std::vector<Diagnostic> d) : std::runtime_error(render(d)), diagnostics(std::move(d)) {}
    std::vector<Diagnostic> diagnostics;

    const Diagnostic& first() const { return diagnostics.front(); }

private:
    static std::string render(const std::vector<Diagnostic>& d) {
        std::string s;
        for (const auto& x : d) {
            if (!s.empty()) s += "\n";
            s += std::to_string(x.line) + ":" + std::to_string(x.col) + ": " + x.kind + ": " + x.message;
        }
        return s;
    }
};

namespace detail {

inline bool is_ident(const std::string& s) {
    if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
    for (char c : s)
        if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) return false;
    return true;
}

[[noreturn]] inline void dsl_fail(std::size_t line, std::size_t col, const std::string& kind, const std::string& msg) {
    throw DslError({{line, col, kind, msg}});
}

// Splits on blanks, remembering the 1-based column of each token.
inline std::vector<std::pair<std::string, std::size_t>> tokens(const std::string& s) {
    std::vector<std::pair<std::string, std::size_t>> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
        std::size_t b = i;
        while (i < s.size() && !std::isspace(static_cast<unsigned char>(s[i]))) ++i;
        if (b < i) out.emplace_back(s.substr(b, i - b), b + 1);
    }
    return out;
}

}  // namespace detail

inline Presentation parse_presentation(const std::string& text) {
    Presentation p("user");
    std::vector<std::size_t> rule_line, rule_col;
    std::size_t inherited_rules = 0;
    bool seen_gen = false, seen_rule = false;
    std::istringstream in(text);
    std::string raw;
    std::size_t ln = 0;
    while (std::getline(in, raw)) {
        ++ln;
        std::string line = raw.substr(0, raw.find('#'));
        auto tok = detail::tokens(line);
        if (tok.empty()) continue;
        const std::string& kw = tok[0].first;
        if (kw == "name") {
            if (tok.size() != 2) detail::dsl_fail(ln, tok[0].second, "syntax", "expected 'name <id>'");
            p.set_name(tok[1].first);
        } else if (kw == "extends") {
            if (tok.size() != 2) detail::dsl_fail(ln, tok[0].second, "syntax", "expected 'extends <preset-id>'");
            if (seen_gen || seen_rule) detail::dsl_fail(ln, tok[0].second, "syntax", "'extends' must precede gen and rule lines");
            auto id = parse_preset_id(tok[1].first);
            if (!id) detail::dsl_fail(ln, tok[1].second, "unknown-preset", "unknown preset '" + tok[1].first + "'");
            std::string keep = p.name();
            p = preset(*id);
            p.set_name(keep);
            inherited_rules = p.rules().size();
            rule_line.assign(inherited_rules, ln);
            rule_col.assign(inherited_rules, tok[0].second);
        } else if (kw == "order") {
            if (tok.size() != 2) detail::dsl_fail(ln, tok[0].second, "syntax", "expected 'order <kind>'");
            auto k = parse_order(tok[1].first);
            if (!k) detail::dsl_fail(ln, tok[1].second, "syntax", "unknown order '" + tok[1].first + "'");
            p.set_order(*k);
        } else if (kw == "gen") {
            if (tok.size() != 4 || tok[2].first != "parity")
                detail::dsl_fail(ln, tok[0].second, "syntax", "expected 'gen <name> parity even|odd'");
            const std::string& name = tok[1].first;
            if (!detail::is_ident(name)) detail::dsl_fail(ln, tok[1].second, "syntax", "invalid generator name '" + name + "'");
            if (name == "q") detail::dsl_fail(ln, tok[1].second, "syntax", "'q' is reserved for the deformation parameter");
            if (p.has(name)) detail::dsl_fail(ln, tok[1].second, "duplicate-generator", "generator '" + name + "' already declared");
            Parity par;
            if (tok[3].first == "even") par = Parity::even;
            else if (tok[3].first == "odd") par = Parity::odd;
            else detail::dsl_fail(ln, tok[3].second, "syntax", "parity must be even or odd");
            if (seen_rule) detail::dsl_fail(ln, tok[0].second, "syntax", "generators must be declared before rules");
            p.add_generator(name, par);
            seen_gen = true;
        } else if (kw == "rule") {
            seen_rule = true;
            std::size_t body = line.find("rule") + 4;
            std::size_t arrow = line.find("->", body);
            if (arrow == std::string::npos) detail::dsl_fail(ln, tok[0].second, "syntax", "expected '->'");
            std::string lhs = line.substr(body, arrow - body);
            std::size_t rhs_start = arrow + 2;
            std::size_t at = line.find('@', rhs_start);
            std::string rhs = line.substr(rhs_start, at == std::string::npos ? std::string::npos : at - rhs_start);
            std::string tag = at == std::string::npos ? std::string{} : detail::trim(line.substr(at + 1));
            // Left-hand side: dot-separated generator names.
            Word w;
            std::size_t pos = body;
            std::size_t lhs_col = 0;
            while (pos <= arrow) {
                std::size_t end = line.find('.', pos);
                if (end == std::string::npos || end > arrow) end = arrow;
                std::string piece = line.substr(pos, end - pos);
                auto b = piece.find_first_not_of(" \t"), e = piece.find_last_not_of(" \t");
                if (b == std::string::npos) detail::dsl_fail(ln, pos + 1, "syntax", "empty generator name in left-hand side");
                std::string name = piece.substr(b, e - b + 1);
                if (!lhs_col) lhs_col = pos + b + 1;
                auto s = p.find(name);
                if (!s) detail::dsl_fail(ln, pos + b + 1, "unknown-generator", "unknown generator '" + name + "'");
                w.push_back(*s);
                pos = end + 1;
            }
            if (detail::trim(lhs).empty()) detail::dsl_fail(ln, body + 1, "syntax", "empty left-hand side");
            if (detail::trim(rhs).empty()) detail::dsl_fail(ln, rhs_start + 1, "syntax", "empty right-hand side");
            Element e;
            try {
                e = parse_expression(rhs, p, nullptr, ln);
            } catch (const ParseError& err) {
                std::string kind = err.message.rfind("unknown generator", 0) == 0 ? "unknown-generator" : "syntax";
                detail::dsl_fail(ln, rhs_start + err.col, kind, err.message);
            }
            p.add_rule(w, e, tag);
            rule_line.push_back(ln);
            rule_col.push_back(lhs_col);
        } else {
            detail::dsl_fail(ln, tok[0].second, "syntax", "unknown keyword '" + kw + "'");
        }
    }
    auto rep = validate_presentation(p);
    if (!rep.valid()) {
        std::vector<Diagnostic> d;
        for (const auto& v : rep.violations)
            d.push_back({rule_line.at(v.rule), rule_col.at(v.rule), v.kind, v.detail});
        throw DslError(std::move(d));
    }
    return p;
}

// Text that parse_presentation reads back to the same generators, order and rules.
inline std::string serialize_presentation(const Presentation& p) {
    std::string s = "# exported by qcalc\nname " + p.name() + "\norder " + order_name(p.order()) + "\n";
    for (const auto& g : p.generators())
        s += "gen " + g.name + " parity " + (g.parity == Parity::odd ? "odd" : "even") + "\n";
    for (const auto& r : p.rules()) {
        s += "rule " + p.word_str(r.lhs) + " -> " + p.str(r.rhs);
        if (!r.tag.empty()) s += " @" + r.tag;
        s += "\n";
    }
    return s;
}

}  // namespace qcalc
