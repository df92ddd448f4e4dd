#pragma once
// Exact arithmetic in Q(q): quotients of integer polynomials in one variable.

#include <gmpxx.h>

#include <algorithm>
#include <cstddef>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qcalc {

struct DivisionByZero : std::domain_error {
    DivisionByZero() : std::domain_error("division by zero in Q(q)") {}
};

struct PoleAtOne : std::domain_error {
    PoleAtOne() : std::domain_error("pole at q = 1") {}
};

// Dense integer polynomial, coefficient i belongs to q^i. No trailing zeros.
class Poly {
public:
    Poly() = default;
    explicit Poly(mpz_class c) {
        if (c != 0) c_.push_back(std::move(c));
    }
    static Poly monomial(mpz_class c, std::size_t k) {
        Poly p;
        if (c == 0) return p;
        p.c_.assign(k + 1, 0);
        p.c_[k] = std::move(c);
        return p;
    }

    bool is_zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    std::size_t size() const { return c_.size(); }
    const mpz_class& operator[](std::size_t i) const { return c_[i]; }
    const mpz_class& lead() const { return c_.back(); }
    const std::vector<mpz_class>& coeffs() const { return c_; }

    // index of the lowest nonzero coefficient
    std::size_t valuation() const {
        std::size_t i = 0;
        while (i < c_.size() && c_[i] == 0) ++i;
        return i;
    }
    bool is_monomial() const { return !c_.empty() && valuation() + 1 == c_.size(); }
    bool is_one() const { return c_.size() == 1 && c_[0] == 1; }

    friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }

    friend Poly operator+(const Poly& a, const Poly& b) {
        Poly r;
        r.c_.resize(std::max(a.size(), b.size()));
        for (std::size_t i = 0; i < r.c_.size(); ++i) {
            if (i < a.size()) r.c_[i] += a.c_[i];
            if (i < b.size()) r.c_[i] += b.c_[i];
        }
        r.trim();
        return r;
    }
    Poly operator-() const {
        Poly r = *this;
        for (auto& x : r.c_) x = -x;
        return r;
    }
    friend Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }
    friend Poly operator*(const Poly& a, const Poly& b) {
        Poly r;
        if (a.is_zero() || b.is_zero()) return r;
        r.c_.assign(a.size() + b.size() - 1, 0);
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (a.c_[i] == 0) continue;
            for (std::size_t j = 0; j < b.size(); ++j) r.c_[i + j] += a.c_[i] * b.c_[j];
        }
        r.trim();
        return r;
    }
    Poly scaled(const mpz_class& k) const {
        if (k == 0) return Poly{};
        Poly r = *this;
        for (auto& x : r.c_) x *= k;
        return r;
    }
    Poly shifted(std::size_t k) const {
        if (is_zero() || k == 0) return *this;
        Poly r;
        r.c_.assign(k, 0);
        r.c_.insert(r.c_.end(), c_.begin(), c_.end());
        return r;
    }
    // divide by q^k, caller guarantees k <= valuation()
    Poly unshifted(std::size_t k) const {
        Poly r;
        r.c_.assign(c_.begin() + static_cast<std::ptrdiff_t>(k), c_.end());
        return r;
    }
    Poly reversed() const {
        Poly r;
        r.c_.assign(c_.rbegin(), c_.rend());
        r.trim();
        return r;
    }

    mpz_class content() const {
        mpz_class g = 0;
        for (const auto& x : c_) {
            mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
            if (g == 1) break;
        }
        return g;
    }
    Poly exact_div(const mpz_class& k) const {
        Poly r = *this;
        for (auto& x : r.c_) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), k.get_mpz_t());
        return r;
    }
    Poly primitive() const {
        if (is_zero()) return *this;
        mpz_class g = content();
        if (lead() < 0) g = -g;
        return g == 1 ? *this : exact_div(g);
    }

    // Exact quotient over Z; b must divide *this.
    Poly exact_div(const Poly& b) const {
        if (b.is_zero()) throw DivisionByZero{};
        Poly rem = *this, quo;
        if (rem.degree() < b.degree()) return quo;
        quo.c_.assign(static_cast<std::size_t>(rem.degree() - b.degree() + 1), 0);
        while (!rem.is_zero() && rem.degree() >= b.degree()) {
            std::size_t k = static_cast<std::size_t>(rem.degree() - b.degree());
            mpz_class t;
            mpz_divexact(t.get_mpz_t(), rem.lead().get_mpz_t(), b.lead().get_mpz_t());
            quo.c_[k] = t;
            for (std::size_t j = 0; j < b.size(); ++j) rem.c_[j + k] -= t * b.c_[j];
            rem.trim();
        }
        quo.trim();
        return quo;
    }

    // pseudo-remainder of a by b
    static Poly prem(Poly a, const Poly& b) {
        const mpz_class& lb = b.lead();
        while (!a.is_zero() && a.degree() >= b.degree()) {
            std::size_t k = static_cast<std::size_t>(a.degree() - b.degree());
            mpz_class la = a.lead();
            for (auto& x : a.c_) x *= lb;
            for (std::size_t j = 0; j < b.size(); ++j) a.c_[j + k] -= la * b.c_[j];
            a.trim();
        }
        return a;
    }

    // Primitive gcd with positive leading coefficient (a gcd over Q, up to units).
    static Poly gcd(const Poly& a, const Poly& b) {
        if (a.is_zero()) return b.primitive();
        if (b.is_zero()) return a.primitive();
        if (a.is_monomial() || b.is_monomial()) {
            std::size_t k = std::min(a.valuation(), b.valuation());
            return monomial(1, k);
        }
        std::size_t k = std::min(a.valuation(), b.valuation());
        Poly x = a.unshifted(a.valuation()).primitive();
        Poly y = b.unshifted(b.valuation()).primitive();
        if (x.degree() < y.degree()) std::swap(x, y);
        while (!y.is_zero()) {
            Poly r = prem(x, y);
            x = std::move(y);
            y = r.primitive();
        }
        return x.primitive().shifted(k);
    }

    mpq_class eval(const mpq_class& v) const {
        mpq_class r = 0;
        for (std::size_t i = c_.size(); i-- > 0;) r = r * v + mpq_class(c_[i]);
        return r;
    }

    // Laurent-style text for num / (c q^k); empty string means zero.
    std::string str(const mpz_class& divisor = 1, long shift = 0) const;

private:
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }
    std::vector<mpz_class> c_;
};

namespace detail {

inline std::string rational_text(const mpq_class& v) { return v.get_str(); }

inline std::string q_power(long e) {
    if (e == 0) return "";
    if (e == 1) return "q";
    return "q^" + std::to_string(e);
}

}  // namespace detail

inline std::string Poly::str(const mpz_class& divisor, long shift) const {
    std::string out;
    for (std::size_t i = c_.size(); i-- > 0;) {
        if (c_[i] == 0) continue;
        mpq_class v(c_[i], divisor);
        v.canonicalize();
        long e = static_cast<long>(i) - shift;
        bool neg = v < 0;
        if (neg) v = -v;
        if (out.empty())
            out += neg ? "-" : "";
        else
            out += neg ? " - " : " + ";
        std::string qp = detail::q_power(e);
        if (qp.empty())
            out += detail::rational_text(v);
        else if (v == 1)
            out += qp;
        else
            out += detail::rational_text(v) + " " + qp;
    }
    return out;
}

class Scalar {
public:
    Scalar() : num_(), den_(mpz_class(1)) {}
    Scalar(long v) : num_(mpz_class(v)), den_(mpz_class(1)) {}  // NOLINT(google-explicit-constructor)
    explicit Scalar(const mpq_class& v) : num_(v.get_num()), den_(v.get_den()) {}
    Scalar(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
        if (den_.is_zero()) throw DivisionByZero{};
        canonicalize();
    }

    static Scalar q() { return Scalar(Poly::monomial(1, 1), Poly(mpz_class(1))); }
    static Scalar q_pow(long k) {
        if (k >= 0) return Scalar(Poly::monomial(1, static_cast<std::size_t>(k)), Poly(mpz_class(1)));
        return Scalar(Poly(mpz_class(1)), Poly::monomial(1, static_cast<std::size_t>(-k)));
    }
    static Scalar lambda() { return q() - q_pow(-1); }

    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const { return num_.is_one() && den_.is_one(); }

    friend bool operator==(const Scalar& a, const Scalar& b) { return a.num_ == b.num_ && a.den_ == b.den_; }
    friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

    friend Scalar operator+(const Scalar& a, const Scalar& b) {
        if (a.is_zero()) return b;
        if (b.is_zero()) return a;
        if (a.den_ == b.den_) return Scalar(a.num_ + b.num_, a.den_);
        return Scalar(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    Scalar operator-() const {
        Scalar r = *this;
        r.num_ = -r.num_;
        return r;
    }
    friend Scalar operator-(const Scalar& a, const Scalar& b) { return a + (-b); }
    friend Scalar operator*(const Scalar& a, const Scalar& b) {
        if (a.is_zero() || b.is_zero()) return Scalar{};
        if (a.den_.is_one() && b.den_.is_one()) return raw(a.num_ * b.num_, a.den_);
        Poly g1 = Poly::gcd(a.num_, b.den_), g2 = Poly::gcd(b.num_, a.den_);
        Poly n = a.num_.exact_div(g1) * b.num_.exact_div(g2);
        Poly d = a.den_.exact_div(g2) * b.den_.exact_div(g1);
        return Scalar(std::move(n), std::move(d));
    }
    Scalar inverse() const {
        if (is_zero()) throw DivisionByZero{};
        return Scalar(den_, num_);
    }
    friend Scalar operator/(const Scalar& a, const Scalar& b) { return a * b.inverse(); }
    Scalar& operator+=(const Scalar& b) { return *this = *this + b; }
    Scalar& operator-=(const Scalar& b) { return *this = *this - b; }
    Scalar& operator*=(const Scalar& b) { return *this = *this * b; }
    Scalar& operator/=(const Scalar& b) { return *this = *this / b; }

    Scalar pow(long k) const {
        if (k < 0) return inverse().pow(-k);
        Scalar r(1), base = *this;
        while (k) {
            if (k & 1) r *= base;
            base *= base;
            k >>= 1;
        }
        return r;
    }

    // Value at q = 1.
    mpq_class eval_q1() const {
        mpq_class d = den_.eval(1);
        if (d == 0) throw PoleAtOne{};
        mpq_class r = num_.eval(1) / d;
        r.canonicalize();
        return r;
    }

    // Substitute q -> 1/q.
    Scalar invert_q() const {
        if (is_zero()) return *this;
        long n = num_.degree(), m = den_.degree();
        Poly rn = num_.reversed(), rd = den_.reversed();
        if (m >= n)
            rn = rn.shifted(static_cast<std::size_t>(m - n));
        else
            rd = rd.shifted(static_cast<std::size_t>(n - m));
        return Scalar(std::move(rn), std::move(rd));
    }

    // Canonical serialization "(numerator)/(denominator)".
    std::string canonical() const {
        std::string n = num_.is_zero() ? "0" : num_.str();
        return "(" + n + ")/(" + den_.str() + ")";
    }

    // Human form: Laurent polynomial when the denominator is c q^k.
    std::string pretty() const {
        if (is_zero()) return "0";
        if (den_.is_monomial()) return num_.str(den_.lead(), static_cast<long>(den_.valuation()));
        std::string n = num_.str(), d = den_.str();
        bool nt = num_.is_monomial(), dt = den_.is_monomial();
        return (nt ? n : "(" + n + ")") + "/" + (dt ? d : "(" + d + ")");
    }

    // Random element with small integer coefficients, for property tests.
    template <class Rng>
    static Scalar random(Rng& rng, int max_deg = 3, int max_coef = 5) {
        std::uniform_int_distribution<int> deg(0, max_deg), coef(-max_coef, max_coef);
        auto poly = [&] {
            int d = deg(rng);
            Poly p;
            for (int i = 0; i <= d; ++i) p = p + Poly::monomial(coef(rng), static_cast<std::size_t>(i));
            return p;
        };
        Poly n = poly(), d = poly();
        while (d.is_zero()) d = poly();
        return Scalar(std::move(n), std::move(d));
    }

private:
    static Scalar raw(Poly n, Poly d) {
        Scalar s;
        s.num_ = std::move(n);
        s.den_ = std::move(d);
        return s;
    }

    void canonicalize() {
        if (num_.is_zero()) {
            den_ = Poly(mpz_class(1));
            return;
        }
        if (!den_.is_one()) {
            Poly g = Poly::gcd(num_, den_);
            if (!g.is_one()) {
                num_ = num_.exact_div(g);
                den_ = den_.exact_div(g);
            }
        }
        mpz_class c = gcd(num_.content(), den_.content());
        if (den_.lead() < 0) c = -c;
        if (c != 1) {
            num_ = num_.exact_div(c);
            den_ = den_.exact_div(c);
        }
    }

    Poly num_, den_;
};

inline Scalar operator*(long a, const Scalar& b) { return Scalar(a) * b; }

enum class ArithOp { add, sub, mul, div };

inline Scalar scalar_arith(ArithOp op, const Scalar& x, const Scalar& y) {
    switch (op) {
        case ArithOp::add: return x + y;
        case ArithOp::sub: return x - y;
        case ArithOp::mul: return x * y;
        case ArithOp::div: return x / y;
    }
    return {};
}

inline mpq_class eval_q1(const Scalar& x) { return x.eval_q1(); }
inline Scalar invert_q(const Scalar& x) { return x.invert_q(); }

}  // namespace qcalc
