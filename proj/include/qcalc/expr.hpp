#pragma once
// Expression syntax shared by the DSL, the CLI and the built-in relation tables.
//
//   expr  := ['+'|'-'] term (('+'|'-') term)*
//   term  := power (('*' | '.' | '/' | <juxtaposition>) power)*
//   power := atom ['^' ['-'] integer]
//   atom  := integer | 'q' | generator | '(' expr ')'
//
// Products are free (unnormalized); division and negative powers need a scalar operand.

#include "qcalc/ncalg.hpp"

#include <cctype>
#include <map>
#include <stdexcept>
#include <string>

namespace qcalc {

struct ParseError : std::runtime_error {
    ParseError(std::size_t line, std::size_t col, const std::string& msg)
        : std::runtime_error(std::to_string(line) + ":" + std::to_string(col) + ": " + msg), line(line), col(col), message(msg) {}
    std::size_t line, col;
    std::string message;
};

using SymbolTable = std::map<std::string, Element>;

namespace detail {

inline std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r"), e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
}

class ExprParser {
public:
    ExprParser(const std::string& text, const Presentation* p, const SymbolTable* extra, std::size_t line)
        : s_(text), p_(p), extra_(extra), line_(line) {}

    Element parse_all() {
        Element e = expr();
        skip_ws();
        if (pos_ < s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
        return e;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(line_, pos_ + 1, msg); }

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    char peek() {
        skip_ws();
        return pos_ < s_.size() ? s_[pos_] : '\0';
    }
    bool starts_atom() {
        char c = peek();
        return c == '(' || std::isalnum(static_cast<unsigned char>(c)) || c == '_';
    }

    Element expr() {
        Element acc;
        bool first = true;
        for (;;) {
            char c = peek();
            Scalar sign(1);
            if (c == '+' || c == '-') {
                ++pos_;
                if (c == '-') sign = Scalar(-1);
            } else if (!first) {
                break;
            }
            acc.add(term(), sign);
            first = false;
        }
        return acc;
    }

    Element term() {
        Element acc = power();
        for (;;) {
            char c = peek();
            if (c == '*' || c == '.') {
                ++pos_;
                acc = acc * power();
            } else if (c == '/') {
                ++pos_;
                std::size_t at = pos_;
                Element d = power();
                auto s = d.as_scalar();
                if (!s) {
                    pos_ = at;
                    fail("division by a non-scalar");
                }
                if (s->is_zero()) {
                    pos_ = at;
                    fail("division by zero");
                }
                acc = acc.map_scalars([&](const Scalar& x) { return x / *s; });
            } else if (starts_atom()) {
                acc = acc * power();
            } else {
                return acc;
            }
        }
    }

    long integer() {
        skip_ws();
        std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (start == pos_) fail("expected integer");
        return std::stol(s_.substr(start, pos_ - start));
    }

    Element power() {
        Element base = atom();
        if (peek() != '^') return base;
        ++pos_;
        bool neg = false;
        if (peek() == '-') {
            neg = true;
            ++pos_;
        }
        long k = integer();
        if (neg) k = -k;
        if (auto s = base.as_scalar()) {
            if (s->is_zero() && k < 0) fail("division by zero");
            return Element(s->pow(k));
        }
        if (k < 0) fail("negative power of a non-scalar");
        Element r(Scalar(1));
        for (long i = 0; i < k; ++i) r = r * base;
        return r;
    }

    Element atom() {
        char c = peek();
        if (c == '(') {
            ++pos_;
            Element e = expr();
            if (peek() != ')') fail("expected ')'");
            ++pos_;
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            return Element(Scalar(mpq_class(mpz_class(s_.substr(start, pos_ - start)))));
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos_;
            while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
            std::string name = s_.substr(start, pos_ - start);
            if (extra_) {
                auto it = extra_->find(name);
                if (it != extra_->end()) return it->second;
            }
            if (p_) {
                if (auto sym = p_->find(name)) return Element::gen(*sym);
            }
            if (name == "q") return Element(Scalar::q());
            pos_ = start;
            fail("unknown generator '" + name + "'");
        }
        if (c == '\0') fail("unexpected end of input");
        fail("unexpected '" + std::string(1, c) + "'");
    }

    const std::string& s_;
    const Presentation* p_;
    const SymbolTable* extra_;
    std::size_t line_;
    std::size_t pos_ = 0;
};

}  // namespace detail

inline Element parse_expression(const std::string& text, const Presentation& p, const SymbolTable* extra = nullptr,
                                std::size_t line = 1) {
    return detail::ExprParser(text, &p, extra, line).parse_all();
}

inline Scalar parse_scalar(const std::string& text) {
    Element e = detail::ExprParser(text, nullptr, nullptr, 1).parse_all();
    return *e.as_scalar();
}

}  // namespace qcalc
