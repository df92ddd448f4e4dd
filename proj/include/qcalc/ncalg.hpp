#pragma once
// Graded free algebra over Q(q) and the word-rewriting engine.

#include "qcalc/qfield.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace qcalc {

enum class Parity : std::uint8_t { even, odd };

struct Generator {
    std::string name;
    Parity parity = Parity::even;
};

using Sym = std::uint16_t;
using Word = std::vector<Sym>;

struct WordHash {
    std::size_t operator()(const Word& w) const noexcept {
        std::size_t h = w.size();
        for (Sym s : w) h = h * 1000003u ^ s;
        return h;
    }
};

inline Word concat(const Word& a, const Word& b) {
    Word r;
    r.reserve(a.size() + b.size());
    r.insert(r.end(), a.begin(), a.end());
    r.insert(r.end(), b.begin(), b.end());
    return r;
}

// Finite linear combination of words; zero coefficients never stored.
class Element {
public:
    using Terms = std::map<Word, Scalar>;

    Element() = default;
    Element(const Scalar& s) { add(Word{}, s); }  // NOLINT(google-explicit-constructor)
    static Element word(Word w, const Scalar& c = Scalar(1)) {
        Element e;
        e.add(std::move(w), c);
        return e;
    }
    static Element gen(Sym s) { return word(Word{s}); }

    void add(const Word& w, const Scalar& c) {
        if (c.is_zero()) return;
        auto it = terms_.find(w);
        if (it == terms_.end()) {
            terms_.emplace(w, c);
            return;
        }
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
    void add(const Element& e, const Scalar& c = Scalar(1)) {
        if (c.is_zero()) return;
        for (const auto& [w, v] : e.terms_) add(w, c.is_one() ? v : v * c);
    }

    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }
    const Terms& terms() const { return terms_; }
    auto begin() const { return terms_.begin(); }
    auto end() const { return terms_.end(); }
    Scalar coeff(const Word& w) const {
        auto it = terms_.find(w);
        return it == terms_.end() ? Scalar{} : it->second;
    }
    // Scalar part if the element is a multiple of the unit word.
    std::optional<Scalar> as_scalar() const {
        if (is_zero()) return Scalar{};
        if (terms_.size() == 1 && terms_.begin()->first.empty()) return terms_.begin()->second;
        return std::nullopt;
    }

    friend bool operator==(const Element& a, const Element& b) { return a.terms_ == b.terms_; }
    friend bool operator!=(const Element& a, const Element& b) { return !(a == b); }

    friend Element operator+(Element a, const Element& b) {
        a.add(b);
        return a;
    }
    friend Element operator-(Element a, const Element& b) {
        a.add(b, Scalar(-1));
        return a;
    }
    Element operator-() const { return Element{} - *this; }
    friend Element operator*(const Scalar& s, const Element& e) {
        Element r;
        r.add(e, s);
        return r;
    }
    Element& operator+=(const Element& b) {
        add(b);
        return *this;
    }
    Element& operator-=(const Element& b) {
        add(b, Scalar(-1));
        return *this;
    }

    // Free (unnormalized) product: bilinear extension of word concatenation.
    friend Element operator*(const Element& a, const Element& b) {
        Element r;
        for (const auto& [u, x] : a.terms_)
            for (const auto& [v, y] : b.terms_) r.add(concat(u, v), x * y);
        return r;
    }

    // Apply f to every coefficient.
    Element map_scalars(const std::function<Scalar(const Scalar&)>& f) const {
        Element r;
        for (const auto& [w, c] : terms_) r.add(w, f(c));
        return r;
    }

private:
    Terms terms_;
};

struct RewriteRule {
    Word lhs;
    Element rhs;
    std::string tag;
};

enum class OrderKind : std::uint8_t {
    deglex,
    migration,       // odd generators migrate to the right
    migration_left,  // mirrored: odd generators migrate to the left
};

inline const char* order_name(OrderKind k) {
    switch (k) {
        case OrderKind::deglex: return "deglex";
        case OrderKind::migration: return "migration";
        case OrderKind::migration_left: return "migration-left";
    }
    return "?";
}

inline std::optional<OrderKind> parse_order(const std::string& s) {
    if (s == "deglex") return OrderKind::deglex;
    if (s == "migration") return OrderKind::migration;
    if (s == "migration-left") return OrderKind::migration_left;
    return std::nullopt;
}

struct UnknownGenerator : std::invalid_argument {
    explicit UnknownGenerator(const std::string& n) : std::invalid_argument("unknown generator '" + n + "'") {}
};

struct StepBudgetExceeded : std::runtime_error {
    explicit StepBudgetExceeded(std::size_t n)
        : std::runtime_error("rewrite step budget of " + std::to_string(n) + " exceeded") {}
};

// Generators in precedence order (index = precedence), an order kind, and rules.
class Presentation {
public:
    Presentation() = default;
    explicit Presentation(std::string name, OrderKind order = OrderKind::deglex)
        : name_(std::move(name)), order_(order) {}

    const std::string& name() const { return name_; }
    void set_name(std::string n) { name_ = std::move(n); }
    OrderKind order() const { return order_; }
    void set_order(OrderKind k) { order_ = k; }
    std::vector<std::string>& metadata() { return metadata_; }
    const std::vector<std::string>& metadata() const { return metadata_; }

    Sym add_generator(const std::string& name, Parity parity) {
        if (index_.count(name)) throw std::invalid_argument("duplicate generator '" + name + "'");
        Sym s = static_cast<Sym>(gens_.size());
        gens_.push_back({name, parity});
        index_[name] = s;
        reindex();
        return s;
    }
    const std::vector<Generator>& generators() const { return gens_; }
    std::size_t num_generators() const { return gens_.size(); }
    const Generator& generator(Sym s) const { return gens_.at(s); }
    bool has(const std::string& name) const { return index_.count(name) != 0; }
    Sym sym(const std::string& name) const {
        auto it = index_.find(name);
        if (it == index_.end()) throw UnknownGenerator(name);
        return it->second;
    }
    std::optional<Sym> find(const std::string& name) const {
        auto it = index_.find(name);
        if (it == index_.end()) return std::nullopt;
        return it->second;
    }
    bool is_odd(Sym s) const { return gens_[s].parity == Parity::odd; }

    Word word(std::initializer_list<const char*> names) const {
        Word w;
        for (const char* n : names) w.push_back(sym(n));
        return w;
    }
    Element gen(const std::string& name) const { return Element::gen(sym(name)); }

    void add_rule(Word lhs, Element rhs, std::string tag = {}) {
        rules_.push_back({std::move(lhs), std::move(rhs), std::move(tag)});
        reindex();
    }
    const std::vector<RewriteRule>& rules() const { return rules_; }
    void set_rules(std::vector<RewriteRule> rules) {
        rules_ = std::move(rules);
        reindex();
    }

    // Parity of a word: number of odd letters mod 2.
    bool odd(const Word& w) const {
        bool p = false;
        for (Sym s : w) p ^= is_odd(s);
        return p;
    }
    std::size_t odd_count(const Word& w) const {
        std::size_t n = 0;
        for (Sym s : w) n += is_odd(s);
        return n;
    }

    // -1, 0, 1 for u < v, u == v, u > v under the termination order.
    int compare(const Word& u, const Word& v) const {
        if (order_ != OrderKind::deglex) {
            auto ku = migration_key(u), kv = migration_key(v);
            if (ku != kv) return ku < kv ? -1 : 1;
        }
        if (u.size() != v.size()) return u.size() < v.size() ? -1 : 1;
        for (std::size_t i = 0; i < u.size(); ++i)
            if (u[i] != v[i]) return u[i] < v[i] ? -1 : 1;
        return 0;
    }

    std::size_t migration_key(const Word& w) const {
        std::size_t key = 0, evens = 0;
        if (order_ == OrderKind::migration) {
            for (std::size_t i = w.size(); i-- > 0;) {
                if (is_odd(w[i]))
                    key += evens;
                else
                    ++evens;
            }
        } else {
            for (Sym s : w) {
                if (is_odd(s))
                    key += evens;
                else
                    ++evens;
            }
        }
        return key;
    }

    std::size_t max_lhs() const {
        std::size_t m = 0;
        for (const auto& r : rules_) m = std::max(m, r.lhs.size());
        return m;
    }

    // Leftmost, then shortest, redex: (position, rule index).
    std::optional<std::pair<std::size_t, std::size_t>> find_redex(const Word& w) const {
        for (std::size_t i = 0; i + 1 < w.size(); ++i) {
            int r = pair_table_[w[i] * gens_.size() + w[i + 1]];
            if (r >= 0) return std::make_pair(i, static_cast<std::size_t>(r));
            for (std::size_t len = 3; len <= max_len_ && i + len <= w.size(); ++len) {
                Word sub(w.begin() + static_cast<std::ptrdiff_t>(i), w.begin() + static_cast<std::ptrdiff_t>(i + len));
                auto it = long_rules_.find(sub);
                if (it != long_rules_.end()) return std::make_pair(i, it->second);
            }
        }
        return std::nullopt;
    }

    // True if w is the LHS of some rule.
    bool is_lhs(const Word& w) const {
        if (w.size() == 2) return pair_table_[w[0] * gens_.size() + w[1]] >= 0;
        return w.size() > 2 && long_rules_.count(w) != 0;
    }

    // Every redex in w.
    std::vector<std::pair<std::size_t, std::size_t>> all_redexes(const Word& w) const {
        std::vector<std::pair<std::size_t, std::size_t>> out;
        for (std::size_t i = 0; i + 1 < w.size(); ++i) {
            int r = pair_table_[w[i] * gens_.size() + w[i + 1]];
            if (r >= 0) out.emplace_back(i, static_cast<std::size_t>(r));
            for (std::size_t len = 3; len <= max_len_ && i + len <= w.size(); ++len) {
                Word sub(w.begin() + static_cast<std::ptrdiff_t>(i), w.begin() + static_cast<std::ptrdiff_t>(i + len));
                auto it = long_rules_.find(sub);
                if (it != long_rules_.end()) out.emplace_back(i, it->second);
            }
        }
        return out;
    }

    // Replace the redex at position i by the rule's RHS.
    Element rewrite_at(const Word& w, std::size_t i, std::size_t rule) const {
        const RewriteRule& r = rules_[rule];
        Element out;
        for (const auto& [u, c] : r.rhs) {
            Word x;
            x.reserve(w.size() - r.lhs.size() + u.size());
            x.insert(x.end(), w.begin(), w.begin() + static_cast<std::ptrdiff_t>(i));
            x.insert(x.end(), u.begin(), u.end());
            x.insert(x.end(), w.begin() + static_cast<std::ptrdiff_t>(i + r.lhs.size()), w.end());
            out.add(x, c);
        }
        return out;
    }

    std::string word_str(const Word& w) const {
        if (w.empty()) return "1";
        std::string s;
        for (std::size_t i = 0; i < w.size(); ++i) {
            if (i) s += '.';
            s += gens_[w[i]].name;
        }
        return s;
    }

    // "a.d - (q - q^-1) b.c", largest words first.
    std::string str(const Element& e) const {
        if (e.is_zero()) return "0";
        std::vector<std::pair<Word, Scalar>> terms(e.begin(), e.end());
        std::stable_sort(terms.begin(), terms.end(),
                         [&](const auto& x, const auto& y) { return compare(x.first, y.first) > 0; });
        std::string out;
        for (const auto& [w, c] : terms) {
            std::string cs = c.pretty();
            bool neg = false;
            Scalar mag = c;
            std::string ms = cs;
            if (!cs.empty() && cs[0] == '-') {
                std::string alt = (-c).pretty();
                if (alt.find(' ') == std::string::npos || (-c).num().is_monomial()) {
                    neg = true;
                    mag = -c;
                    ms = alt;
                }
            }
            if (out.empty())
                out += neg ? "-" : "";
            else
                out += neg ? " - " : " + ";
            bool atomic = ms.find(' ') == std::string::npos;
            if (w.empty()) {
                out += atomic ? ms : "(" + ms + ")";
            } else {
                if (!mag.is_one()) out += (atomic ? ms : "(" + ms + ")") + " ";
                out += word_str(w);
            }
        }
        return out;
    }

private:
    // Rule lookup tables; rebuilt on every mutation so const use is thread-safe.
    void reindex() {
        pair_table_.assign(gens_.size() * gens_.size(), -1);
        long_rules_.clear();
        max_len_ = 0;
        for (std::size_t k = rules_.size(); k-- > 0;) {
            const Word& l = rules_[k].lhs;
            if (std::any_of(l.begin(), l.end(), [&](Sym x) { return x >= gens_.size(); })) continue;
            if (l.size() == 2)
                pair_table_[l[0] * gens_.size() + l[1]] = static_cast<int>(k);
            else if (l.size() > 2)
                long_rules_[l] = k;
            max_len_ = std::max(max_len_, l.size());
        }
    }

    std::string name_;
    OrderKind order_ = OrderKind::deglex;
    std::vector<Generator> gens_;
    std::unordered_map<std::string, Sym> index_;
    std::vector<RewriteRule> rules_;
    std::vector<std::string> metadata_;

    std::vector<int> pair_table_;
    std::unordered_map<Word, std::size_t, WordHash> long_rules_;
    std::size_t max_len_ = 0;
};

inline constexpr std::size_t default_step_budget = 1'000'000;

// Leftmost-innermost normalizer with a memo of word normal forms.
// Not shared between threads; build one per task.
class Normalizer {
public:
    explicit Normalizer(const Presentation& p, std::size_t budget = default_step_budget) : p_(&p), budget_(budget) {}

    const Presentation& presentation() const { return *p_; }

    Element operator()(const Element& x) {
        Element out;
        for (const auto& [w, c] : x) out.add(word(w), c);
        return out;
    }

    const Element& word(const Word& w) {
        auto it = memo_.find(w);
        if (it != memo_.end()) return it->second;
        return memo_.emplace(w, reduce(w)).first->second;
    }

    std::size_t steps() const { return steps_; }

private:
    struct Greater {
        const Presentation* p;
        bool operator()(const Word& a, const Word& b) const { return p->compare(a, b) > 0; }
    };

    Element reduce(const Word& w) {
        // Largest word first: every contribution to a word is collected before it is rewritten.
        std::map<Word, Scalar, Greater> todo(Greater{p_});
        todo.emplace(w, Scalar(1));
        Element out;
        std::size_t local = 0;
        while (!todo.empty()) {
            auto node = todo.extract(todo.begin());
            const Word& u = node.key();
            const Scalar& c = node.mapped();
            if (c.is_zero()) continue;
            if (u != w) {
                auto m = memo_.find(u);
                if (m != memo_.end()) {
                    out.add(m->second, c);
                    continue;
                }
            }
            auto redex = p_->find_redex(u);
            if (!redex) {
                out.add(u, c);
                continue;
            }
            if (++local > budget_) throw StepBudgetExceeded(budget_);
            ++steps_;
            for (const auto& [v, k] : p_->rewrite_at(u, redex->first, redex->second)) {
                auto [pos, fresh] = todo.try_emplace(v, c * k);
                if (!fresh) pos->second += c * k;
            }
        }
        return out;
    }

    const Presentation* p_;
    std::size_t budget_;
    std::size_t steps_ = 0;
    std::unordered_map<Word, Element, WordHash> memo_;
};

inline Element normalize(const Element& x, const Presentation& p, std::size_t budget = default_step_budget) {
    Normalizer n(p, budget);
    return n(x);
}

inline Element mul(const Element& x, const Element& y, const Presentation& p) { return normalize(x * y, p); }

inline bool equal_mod_ideal(const Element& x, const Element& y, const Presentation& p) {
    return normalize(x - y, p).is_zero();
}

// Rewrites with randomly chosen word, position and rule until no redex is left.
inline Element random_strategy_normalize(const Element& x, const Presentation& p, std::uint64_t seed,
                                         std::size_t budget = default_step_budget) {
    std::mt19937_64 rng(seed);
    std::map<Word, Scalar> todo(x.begin(), x.end());
    Element out;
    std::size_t steps = 0;
    while (!todo.empty()) {
        std::uniform_int_distribution<std::size_t> pick(0, todo.size() - 1);
        auto it = std::next(todo.begin(), static_cast<std::ptrdiff_t>(pick(rng)));
        Word u = it->first;
        Scalar c = it->second;
        todo.erase(it);
        if (c.is_zero()) continue;
        auto redexes = p.all_redexes(u);
        if (redexes.empty()) {
            out.add(u, c);
            continue;
        }
        if (++steps > budget) throw StepBudgetExceeded(budget);
        std::uniform_int_distribution<std::size_t> which(0, redexes.size() - 1);
        auto [pos, rule] = redexes[which(rng)];
        for (const auto& [v, k] : p.rewrite_at(u, pos, rule)) {
            todo[v] += c * k;
        }
    }
    return out;
}

struct Violation {
    std::size_t rule = 0;
    std::string kind;  // orientation | parity | unknown-generator | lhs-length | duplicate-lhs
    std::string detail;
};

struct ValidationReport {
    std::vector<Violation> violations;
    bool valid() const { return violations.empty(); }
};

inline ValidationReport validate_presentation(const Presentation& p) {
    ValidationReport rep;
    std::unordered_map<Word, std::size_t, WordHash> seen;
    auto known = [&](const Word& w) {
        return std::all_of(w.begin(), w.end(), [&](Sym s) { return s < p.num_generators(); });
    };
    for (std::size_t k = 0; k < p.rules().size(); ++k) {
        const auto& r = p.rules()[k];
        if (!known(r.lhs)) {
            rep.violations.push_back({k, "unknown-generator", "lhs refers to an undeclared generator"});
            continue;
        }
        std::string l = p.word_str(r.lhs);
        if (r.lhs.size() < 2) rep.violations.push_back({k, "lhs-length", l + " has length < 2"});
        auto [it, fresh] = seen.emplace(r.lhs, k);
        if (!fresh) rep.violations.push_back({k, "duplicate-lhs", l + " already used by rule " + std::to_string(it->second)});
        for (const auto& [w, c] : r.rhs) {
            if (!known(w)) {
                rep.violations.push_back({k, "unknown-generator", "rhs refers to an undeclared generator"});
                continue;
            }
            if (p.odd(w) != p.odd(r.lhs))
                rep.violations.push_back({k, "parity", l + " -> " + p.word_str(w) + " changes parity"});
            if (p.compare(r.lhs, w) <= 0)
                rep.violations.push_back({k, "orientation", l + " is not greater than " + p.word_str(w)});
        }
    }
    return rep;
}

struct CriticalPair {
    Word overlap;
    std::size_t rule1 = 0, rule2 = 0;
    Element branch1, branch2;  // normal forms of the two reductions
    Element residual;          // branch1 - branch2
    bool resolved() const { return residual.is_zero(); }
};

struct ConfluenceReport {
    std::vector<CriticalPair> pairs;
    std::size_t unresolved() const {
        return static_cast<std::size_t>(
            std::count_if(pairs.begin(), pairs.end(), [](const CriticalPair& c) { return !c.resolved(); }));
    }
};

// All overlaps and inclusions of rule left-hand sides, each reduced both ways.
inline ConfluenceReport check_local_confluence(const Presentation& p) {
    ConfluenceReport rep;
    Normalizer nf(p);
    const auto& rules = p.rules();
    auto settle = [&](Word w, std::size_t i, std::size_t j, const Element& x, const Element& y) {
        CriticalPair cp;
        cp.overlap = std::move(w);
        cp.rule1 = i;
        cp.rule2 = j;
        cp.branch1 = nf(x);
        cp.branch2 = nf(y);
        cp.residual = cp.branch1 - cp.branch2;
        rep.pairs.push_back(std::move(cp));
    };
    for (std::size_t i = 0; i < rules.size(); ++i) {
        const Word& l1 = rules[i].lhs;
        for (std::size_t j = 0; j < rules.size(); ++j) {
            const Word& l2 = rules[j].lhs;
            // proper overlaps: suffix of l1 equals prefix of l2
            for (std::size_t k = 1; k < std::min(l1.size(), l2.size()); ++k) {
                if (!std::equal(l1.end() - static_cast<std::ptrdiff_t>(k), l1.end(), l2.begin())) continue;
                Word tail(l2.begin() + static_cast<std::ptrdiff_t>(k), l2.end());
                Word head(l1.begin(), l1.end() - static_cast<std::ptrdiff_t>(k));
                Word w = concat(l1, tail);
                settle(w, i, j, rules[i].rhs * Element::word(tail), Element::word(head) * rules[j].rhs);
            }
            // inclusions: l2 occurs inside l1
            if (i == j || l2.size() > l1.size()) continue;
            for (std::size_t pos = 0; pos + l2.size() <= l1.size(); ++pos) {
                if (!std::equal(l2.begin(), l2.end(), l1.begin() + static_cast<std::ptrdiff_t>(pos))) continue;
                settle(l1, i, j, rules[i].rhs, p.rewrite_at(l1, pos, j));
            }
        }
    }
    return rep;
}

// Irreducible words of length <= max_len over the allowed generators, by increasing length.
inline std::vector<Word> normal_words(const Presentation& p, std::size_t max_len,
                                      const std::function<bool(Sym)>& allowed = {}) {
    std::vector<Word> out{Word{}};
    std::size_t lo = 0, ml = p.max_lhs();
    for (std::size_t len = 1; len <= max_len; ++len) {
        std::size_t hi = out.size();
        for (std::size_t i = lo; i < hi; ++i) {
            for (Sym s = 0; s < p.num_generators(); ++s) {
                if (allowed && !allowed(s)) continue;
                Word w = out[i];
                w.push_back(s);
                bool reducible = false;
                for (std::size_t k = 2; k <= std::min(ml, w.size()) && !reducible; ++k)
                    reducible = p.is_lhs(Word(w.end() - static_cast<std::ptrdiff_t>(k), w.end()));
                if (!reducible) out.push_back(std::move(w));
            }
        }
        lo = hi;
    }
    return out;
}

}  // namespace qcalc
