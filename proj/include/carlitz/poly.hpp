#pragma once

// Exact multivariate polynomials in theta, t_1..t_s over F_q2, and rational
// functions num/den.  These are the coefficient objects of mu-polynomials and
// of the Carlitz action; they expand to series only at evaluation time.

#include <cctype>
#include <sstream>

#include "carlitz/laurent.hpp"

namespace carlitz {

class MPoly {
public:
    // key layout: [theta_deg, t1_deg, .., ts_deg]
    using Key = std::vector<int>;

    MPoly() = default;
    MPoly(const Field* F, int s) : F_(F), s_(s) {}

    static MPoly constant(const Field* F, int s, uint16_t c) {
        MPoly r(F, s);
        if (c != 0) r.m_[Key(static_cast<size_t>(s) + 1, 0)] = c;
        return r;
    }
    static MPoly one(const Field* F, int s) { return constant(F, s, 1); }
    static MPoly theta(const Field* F, int s, int deg = 1) {
        MPoly r(F, s);
        Key k(static_cast<size_t>(s) + 1, 0);
        k[0] = deg;
        r.m_[k] = 1;
        return r;
    }
    static MPoly tvar(const Field* F, int s, int var, int deg = 1) {  // var: 1..s
        if (var < 1 || var > s) throw Error("tvar: index out of range");
        MPoly r(F, s);
        Key k(static_cast<size_t>(s) + 1, 0);
        k[static_cast<size_t>(var)] = deg;
        r.m_[k] = 1;
        return r;
    }

    const Field* field() const { return F_; }
    int vars() const { return s_; }
    const std::map<Key, uint16_t>& monomials() const { return m_; }
    bool is_zero() const { return m_.empty(); }

    bool uses_t() const {
        for (auto& [k, c] : m_)
            for (size_t i = 1; i < k.size(); ++i)
                if (k[i] != 0) return true;
        return false;
    }

    int theta_degree() const {
        int d = -1;
        for (auto& [k, c] : m_) d = std::max(d, k[0]);
        return d;
    }

    int t_degree() const {  // max over all t exponents
        int d = 0;
        for (auto& [k, c] : m_)
            for (size_t i = 1; i < k.size(); ++i) d = std::max(d, k[i]);
        return d;
    }

    // monic in theta: the theta-leading coefficient (a t-polynomial) is 1
    bool monic_in_theta() const {
        int d = theta_degree();
        if (d < 0) return false;
        int count = 0;
        bool ok = false;
        for (auto& [k, c] : m_)
            if (k[0] == d) {
                ++count;
                bool tfree = true;
                for (size_t i = 1; i < k.size(); ++i) tfree = tfree && k[i] == 0;
                ok = tfree && c == 1;
            }
        return count == 1 && ok;
    }

    void set(const Key& k, uint16_t c) {
        if (c == 0) m_.erase(k);
        else m_[k] = c;
    }
    uint16_t coeff(const Key& k) const {
        auto it = m_.find(k);
        return it == m_.end() ? 0 : it->second;
    }

    friend MPoly operator+(const MPoly& a, const MPoly& b) {
        MPoly r = a;
        for (auto& [k, c] : b.m_) r.set(k, a.F_->add(r.coeff(k), c));
        return r;
    }
    MPoly operator-() const {
        MPoly r(F_, s_);
        for (auto& [k, c] : m_) r.m_[k] = F_->neg(c);
        return r;
    }
    friend MPoly operator-(const MPoly& a, const MPoly& b) { return a + (-b); }

    friend MPoly operator*(const MPoly& a, const MPoly& b) {
        MPoly r(a.F_, a.s_);
        for (auto& [ka, ca] : a.m_)
            for (auto& [kb, cb] : b.m_) {
                Key k(ka.size());
                for (size_t i = 0; i < k.size(); ++i) k[i] = ka[i] + kb[i];
                r.set(k, a.F_->add(r.coeff(k), a.F_->mul(ca, cb)));
            }
        return r;
    }

    MPoly scaled(uint16_t c) const {
        MPoly r(F_, s_);
        if (c == 0) return r;
        for (auto& [k, x] : m_) r.m_[k] = F_->mul(x, c);
        return r;
    }

    MPoly pow(long long n) const {
        if (n < 0) throw Error("MPoly::pow: negative exponent");
        MPoly r = one(F_, s_), base = *this;
        while (n) {
            if (n & 1) r = r * base;
            base = base * base;
            n >>= 1;
        }
        return r;
    }

    friend bool operator==(const MPoly& a, const MPoly& b) { return a.m_ == b.m_; }
    friend bool operator!=(const MPoly& a, const MPoly& b) { return !(a == b); }

    // mu on K_s: theta -> theta^p, t fixed, coefficients to the p-th power
    MPoly mu_twist(long long m = 1) const {
        if (m < 0) throw Error("MPoly::mu_twist: use tau_inverse for roots");
        long long scale = 1;
        for (long long i = 0; i < m; ++i) scale *= F_->p();
        MPoly r(F_, s_);
        for (auto& [k, c] : m_) {
            Key kk = k;
            kk[0] = static_cast<int>(k[0] * scale);
            r.m_[kk] = F_->frobenius(c, m);
        }
        return r;
    }
    MPoly tau_twist() const { return mu_twist(F_->e()); }

    // exact tau^{-1}: requires all theta exponents divisible by q
    MPoly tau_inverse() const {
        MPoly r(F_, s_);
        for (auto& [k, c] : m_) {
            if (k[0] % F_->q() != 0)
                throw DomainError("tau_inverse: theta-degree not divisible by q");
            Key kk = k;
            kk[0] = k[0] / F_->q();
            r.m_[kk] = F_->frobenius(c, -F_->e());
        }
        return r;
    }

    // substitute theta := theta^m (coefficient spreading)
    MPoly theta_power_subst(long long m) const {
        MPoly r(F_, s_);
        for (auto& [k, c] : m_) {
            Key kk = k;
            kk[0] = static_cast<int>(k[0] * m);
            r.set(kk, F_->add(r.coeff(kk), c));
        }
        return r;
    }

    // theta-only polynomial as dense coefficient vector (c[k] * theta^k)
    std::vector<uint16_t> theta_coeffs() const {
        if (uses_t()) throw Error("theta_coeffs: polynomial uses t-variables");
        std::vector<uint16_t> c(static_cast<size_t>(std::max(theta_degree(), 0)) + 1, 0);
        for (auto& [k, x] : m_) c[static_cast<size_t>(k[0])] = x;
        return c;
    }

    static MPoly from_theta_coeffs(const Field* F, int s, const std::vector<uint16_t>& c) {
        MPoly r(F, s);
        for (size_t k = 0; k < c.size(); ++k)
            if (c[k] != 0) {
                Key key(static_cast<size_t>(s) + 1, 0);
                key[0] = static_cast<int>(k);
                r.m_[key] = c[k];
            }
        return r;
    }

    std::string str() const {
        if (m_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (auto it = m_.rbegin(); it != m_.rend(); ++it) {
            auto& [k, c] = *it;
            if (!first) os << " + ";
            first = false;
            std::string cs = F_->to_string(c);
            bool unit = (cs == "1");
            bool any = false;
            std::ostringstream mono;
            if (k[0] > 0) {
                mono << "theta";
                if (k[0] > 1) mono << "^" << k[0];
                any = true;
            }
            for (size_t i = 1; i < k.size(); ++i)
                if (k[i] > 0) {
                    if (any) mono << "*";
                    mono << "t";
                    if (s_ > 1) mono << i;
                    if (k[i] > 1) mono << "^" << k[i];
                    any = true;
                }
            if (!any) os << cs;
            else {
                if (!unit) {
                    if (cs.find('+') != std::string::npos) cs = "(" + cs + ")";
                    os << cs << "*";
                }
                os << mono.str();
            }
        }
        return os.str();
    }

private:
    const Field* F_ = nullptr;
    int s_ = 0;
    std::map<Key, uint16_t> m_;
};

// --- theta-only helpers for rational normalization --------------------------

namespace detail {

inline std::vector<uint16_t> uni_trim(std::vector<uint16_t> a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
    return a;
}

inline std::vector<uint16_t> uni_mod(const Field* F, std::vector<uint16_t> a,
                                     const std::vector<uint16_t>& b) {
    a = uni_trim(a);
    auto bb = uni_trim(b);
    uint16_t lead_inv = F->inv(bb.back());
    while (a.size() >= bb.size() && !a.empty()) {
        uint16_t f = F->mul(a.back(), lead_inv);
        size_t shift = a.size() - bb.size();
        for (size_t i = 0; i < bb.size(); ++i)
            a[shift + i] = F->sub(a[shift + i], F->mul(f, bb[i]));
        a = uni_trim(a);
    }
    return a;
}

inline std::vector<uint16_t> uni_div(const Field* F, std::vector<uint16_t> a,
                                     const std::vector<uint16_t>& b) {
    a = uni_trim(a);
    auto bb = uni_trim(b);
    if (a.size() < bb.size()) return {};
    std::vector<uint16_t> qout(a.size() - bb.size() + 1, 0);
    uint16_t lead_inv = F->inv(bb.back());
    while (a.size() >= bb.size() && !a.empty()) {
        uint16_t f = F->mul(a.back(), lead_inv);
        size_t shift = a.size() - bb.size();
        qout[shift] = f;
        for (size_t i = 0; i < bb.size(); ++i)
            a[shift + i] = F->sub(a[shift + i], F->mul(f, bb[i]));
        a = uni_trim(a);
    }
    return qout;
}

inline std::vector<uint16_t> uni_gcd(const Field* F, std::vector<uint16_t> a,
                                     std::vector<uint16_t> b) {
    a = uni_trim(std::move(a));
    b = uni_trim(std::move(b));
    while (!b.empty()) {
        auto r = uni_mod(F, a, b);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty()) {
        uint16_t li = F->inv(a.back());
        for (auto& c : a) c = F->mul(c, li);
    }
    return a;
}

}  // namespace detail

// num/den with den nonzero.  theta-only pairs are fully reduced (monic gcd
// divided out); multivariate pairs are normalized so the lexicographically
// largest denominator monomial has coefficient 1, and compared by
// cross-multiplication.
class RationalFunction {
public:
    RationalFunction() = default;
    RationalFunction(MPoly num, MPoly den) : num_(std::move(num)), den_(std::move(den)) {
        if (den_.is_zero()) throw DomainError("rational function with zero denominator");
        normalize();
    }
    explicit RationalFunction(const MPoly& num)
        : RationalFunction(num, MPoly::one(num.field(), num.vars())) {}

    static RationalFunction constant(const Field* F, int s, uint16_t c) {
        return RationalFunction(MPoly::constant(F, s, c));
    }

    const MPoly& num() const { return num_; }
    const MPoly& den() const { return den_; }
    const Field* field() const { return num_.field(); }
    int vars() const { return num_.vars(); }
    bool is_zero() const { return num_.is_zero(); }
    bool is_polynomial() const {
        return den_ == MPoly::one(den_.field(), den_.vars());
    }

    friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
        return RationalFunction(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) {
        return RationalFunction(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
    }
    friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
        return RationalFunction(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) {
        if (b.is_zero()) throw DomainError("rational division by zero");
        return RationalFunction(a.num_ * b.den_, a.den_ * b.num_);
    }
    RationalFunction operator-() const { return RationalFunction(-num_, den_); }

    friend bool operator==(const RationalFunction& a, const RationalFunction& b) {
        return a.num_ * b.den_ == b.num_ * a.den_;
    }
    friend bool operator!=(const RationalFunction& a, const RationalFunction& b) {
        return !(a == b);
    }

    RationalFunction mu_twist(long long m = 1) const {
        RationalFunction r;
        r.num_ = num_.mu_twist(m);
        r.den_ = den_.mu_twist(m);
        return r;
    }
    RationalFunction tau_inverse() const {
        RationalFunction r;
        r.num_ = num_.tau_inverse();
        r.den_ = den_.tau_inverse();
        return r;
    }

    std::string str() const {
        if (is_polynomial()) return num_.str();
        return "(" + num_.str() + ")/(" + den_.str() + ")";
    }

private:
    void normalize() {
        const Field* F = num_.field();
        if (num_.is_zero()) {
            den_ = MPoly::one(F, den_.vars());
            return;
        }
        if (!num_.uses_t() && !den_.uses_t()) {
            auto n = num_.theta_coeffs(), d = den_.theta_coeffs();
            auto g = detail::uni_gcd(F, n, d);
            if (g.size() > 1) {
                n = detail::uni_div(F, n, g);
                d = detail::uni_div(F, d, g);
            }
            uint16_t li = F->inv(detail::uni_trim(d).back());
            for (auto& c : n) c = F->mul(c, li);
            for (auto& c : d) c = F->mul(c, li);
            num_ = MPoly::from_theta_coeffs(F, num_.vars(), n);
            den_ = MPoly::from_theta_coeffs(F, den_.vars(), d);
            return;
        }
        uint16_t lead = den_.monomials().rbegin()->second;
        if (lead != 1) {
            uint16_t li = F->inv(lead);
            num_ = num_.scaled(li);
            den_ = den_.scaled(li);
        }
    }

    MPoly num_, den_;
};

// --- tiny expression parser --------------------------------------------------
//
// Accepts sums of products of powers of "theta", "t" (= t1), "t1".."t9" and
// integer literals, with parentheses and unary minus: "theta^2+2*theta+1",
// "(t-theta)^2", "t1*t2-theta^3".

class PolyParser {
public:
    PolyParser(const Field* F, int s, std::string src)
        : F_(F), s_(s), src_(std::move(src)) {}

    MPoly parse() {
        MPoly r = expr();
        skip_ws();
        if (pos_ != src_.size()) throw Error("parse error at '" + src_.substr(pos_) + "'");
        return r;
    }

private:
    void skip_ws() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    }
    bool eat(char c) {
        skip_ws();
        if (pos_ < src_.size() && src_[pos_] == c) { ++pos_; return true; }
        return false;
    }

    MPoly expr() {
        MPoly r = eat('-') ? -term() : term();
        for (;;) {
            if (eat('+')) r = r + term();
            else if (eat('-')) r = r - term();
            else return r;
        }
    }
    MPoly term() {
        MPoly r = factor();
        while (eat('*')) r = r * factor();
        return r;
    }
    MPoly factor() {
        MPoly b = base();
        if (eat('^')) {
            long long n = integer();
            return b.pow(n);
        }
        return b;
    }
    long long integer() {
        skip_ws();
        size_t start = pos_;
        if (pos_ < src_.size() && src_[pos_] == '-') ++pos_;
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
        if (pos_ == start) throw Error("parse error: expected integer");
        return std::stoll(src_.substr(start, pos_ - start));
    }
    MPoly base() {
        skip_ws();
        if (eat('(')) {
            MPoly r = expr();
            if (!eat(')')) throw Error("parse error: expected ')'");
            return r;
        }
        if (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
            long long n = integer();
            return MPoly::constant(F_, s_, F_->from_int(n));
        }
        if (src_.compare(pos_, 5, "theta") == 0) {
            pos_ += 5;
            return MPoly::theta(F_, s_);
        }
        if (pos_ < src_.size() && src_[pos_] == 't') {
            ++pos_;
            int var = 1;
            if (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
                var = src_[pos_] - '0';
                ++pos_;
            }
            return MPoly::tvar(F_, s_, var);
        }
        throw Error("parse error at '" + src_.substr(pos_) + "'");
    }

    const Field* F_;
    int s_;
    std::string src_;
    size_t pos_ = 0;
};

inline MPoly parse_poly(const Field* F, int s, const std::string& src) {
    return PolyParser(F, s, src).parse();
}

}  // namespace carlitz
