#pragma once

// Truncated generalized Laurent series sum c_j theta^{-j} with exponents j in
// the lattice (1/(q-1))Z and coefficients in F_q2.
//
// Exponents and precision are stored as integers in lattice units: the stored
// value E represents j = E/(q-1), so theta itself has stored exponent -(q-1)
// and v_inf(theta) = -1.  Precision N is a hard contract: every term with
// exponent strictly below N is exact, nothing above it is stored.  Terms are
// sorted maps at the API boundary; multiplication and inversion run on dense
// windows.

#include <cstdlib>
#include <map>
#include <optional>
#include <sstream>

#include "carlitz/field.hpp"

namespace carlitz {

using Exp = long long;

// "Exact" precision sentinel; saturating arithmetic keeps it stable.
inline constexpr Exp kExact = std::numeric_limits<Exp>::max() / 4;

inline Exp padd(Exp a, Exp b) {
    if (a >= kExact || b >= kExact) return kExact;
    return a + b;
}

inline Exp pmin(Exp a, Exp b) { return a < b ? a : b; }

inline Exp ceil_div(Exp a, Exp b) {  // b > 0
    Exp d = a / b;
    if (a % b != 0 && a > 0) ++d;
    return d;
}

// Reduced fraction string for a lattice exponent, e.g. "-3/2" or "4".
inline std::string frac_string(Exp e, int lat) {
    if (e >= kExact) return "inf";
    long long g = std::gcd(e < 0 ? -e : e, static_cast<long long>(lat));
    if (g == 0) g = lat;
    long long num = e / g, den = lat / g;
    std::string s = std::to_string(num);
    if (den != 1) s += "/" + std::to_string(den);
    return s;
}

class LaurentSeries {
public:
    LaurentSeries() = default;
    LaurentSeries(const Field* F, Exp prec) : F_(F), prec_(prec) {}

    static LaurentSeries zero(const Field* F, Exp prec = kExact) { return {F, prec}; }

    static LaurentSeries one(const Field* F) { return monomial(F, 0, 1); }

    // c * theta^{-exp/(q-1)}
    static LaurentSeries monomial(const Field* F, Exp exp, uint16_t coeff, Exp prec = kExact) {
        LaurentSeries r(F, prec);
        if (coeff != 0 && exp < prec) r.t_[exp] = coeff;
        return r;
    }

    static LaurentSeries theta_pow(const Field* F, long long k) {
        return monomial(F, -k * F->lattice_den(), 1);
    }

    // exact polynomial sum c[k] theta^k
    static LaurentSeries from_poly(const Field* F, const std::vector<uint16_t>& c) {
        LaurentSeries r(F, kExact);
        for (size_t k = 0; k < c.size(); ++k)
            if (c[k] != 0) r.t_[-static_cast<Exp>(k) * F->lattice_den()] = c[k];
        return r;
    }

    const Field* field() const { return F_; }
    int lat() const { return F_->lattice_den(); }
    Exp prec() const { return prec_; }
    const std::map<Exp, uint16_t>& terms() const { return t_; }
    bool exact() const { return prec_ >= kExact; }

    // zero at working precision: no term distinguishable from 0 below prec
    bool is_zero_at_prec() const { return t_.empty(); }

    std::optional<Exp> valuation() const {
        if (t_.empty()) return std::nullopt;
        return t_.begin()->first;
    }
    // valuation lower bound usable in precision formulas
    Exp val_floor() const { return t_.empty() ? prec_ : t_.begin()->first; }

    uint16_t coeff(Exp e) const {
        auto it = t_.find(e);
        return it == t_.end() ? 0 : it->second;
    }

    LaurentSeries truncated(Exp N) const {
        LaurentSeries r(F_, pmin(prec_, N));
        for (auto& [e, c] : t_)
            if (e < r.prec_) r.t_[e] = c;
        return r;
    }

    friend LaurentSeries operator+(const LaurentSeries& a, const LaurentSeries& b) {
        LaurentSeries r(a.F_, pmin(a.prec_, b.prec_));
        for (auto& [e, c] : a.t_)
            if (e < r.prec_) r.t_[e] = c;
        for (auto& [e, c] : b.t_) {
            if (e >= r.prec_) continue;
            uint16_t s = a.F_->add(r.coeff(e), c);
            if (s == 0) r.t_.erase(e); else r.t_[e] = s;
        }
        return r;
    }

    LaurentSeries operator-() const {
        LaurentSeries r(F_, prec_);
        for (auto& [e, c] : t_) r.t_[e] = F_->neg(c);
        return r;
    }

    friend LaurentSeries operator-(const LaurentSeries& a, const LaurentSeries& b) { return a + (-b); }

    LaurentSeries scaled(uint16_t c) const {  // coefficient-wise scalar
        LaurentSeries r(F_, prec_);
        if (c == 0) return r;
        for (auto& [e, x] : t_) {
            uint16_t y = F_->mul(x, c);
            if (y != 0) r.t_[e] = y;
        }
        return r;
    }

    // multiply by c * theta^{-shift/(q-1)} (exact monomial)
    LaurentSeries shifted(Exp shift, uint16_t c = 1) const {
        LaurentSeries r(F_, padd(prec_, shift));
        if (c == 0) return LaurentSeries(F_, kExact);
        for (auto& [e, x] : t_) {
            uint16_t y = F_->mul(x, c);
            if (y != 0) r.t_[e + shift] = y;
        }
        return r;
    }

    friend LaurentSeries operator*(const LaurentSeries& a, const LaurentSeries& b) {
        const Field* F = a.F_;
        Exp rprec = pmin(padd(a.prec_, b.val_floor()), padd(b.prec_, a.val_floor()));
        LaurentSeries r(F, rprec);
        if (a.t_.empty() || b.t_.empty()) return r;
        Exp lo = a.t_.begin()->first + b.t_.begin()->first;
        if (rprec >= kExact) {
            // exact convolution
            for (auto& [ea, ca] : a.t_)
                for (auto& [eb, cb] : b.t_) {
                    Exp e = ea + eb;
                    uint16_t s = F->add(r.coeff(e), F->mul(ca, cb));
                    if (s == 0) r.t_.erase(e); else r.t_[e] = s;
                }
            return r;
        }
        if (lo >= rprec) return r;
        std::vector<uint16_t> win(static_cast<size_t>(rprec - lo), 0);
        for (auto& [ea, ca] : a.t_) {
            Exp base = ea + b.t_.begin()->first;
            if (base >= rprec) break;
            for (auto& [eb, cb] : b.t_) {
                Exp e = ea + eb;
                if (e >= rprec) break;
                size_t i = static_cast<size_t>(e - lo);
                win[i] = F->add(win[i], F->mul(ca, cb));
            }
        }
        for (size_t i = 0; i < win.size(); ++i)
            if (win[i] != 0) r.t_[lo + static_cast<Exp>(i)] = win[i];
        return r;
    }

    LaurentSeries pow(long long n) const {
        if (n < 0) return invert().pow(-n);
        LaurentSeries r = one(F_);
        LaurentSeries base = *this;
        while (n) {
            if (n & 1) r = r * base;
            base = base * base;
            n >>= 1;
        }
        return r;
    }

    // Geometric-series inversion to output precision Nout (must be finite).
    // Requires depth Nout + v of input terms, i.e. prec >= Nout + 2v.
    LaurentSeries invert_to(Exp Nout) const {
        if (t_.empty())
            throw DomainError("zero divisor at working precision (prec " +
                              frac_string(prec_, lat()) + ")");
        Exp v = t_.begin()->first;
        Exp R = Nout + v;  // relative depth of the result
        if (R > 0 && padd(prec_, 0) < Nout + 2 * v)
            throw DomainError("invert: insufficient input precision");
        LaurentSeries r(F_, Nout);
        if (R <= 0) return r;
        std::vector<uint16_t> aa(static_cast<size_t>(R), 0);
        for (auto& [e, c] : t_) {
            Exp k = e - v;
            if (k < R) aa[static_cast<size_t>(k)] = c;
        }
        std::vector<uint16_t> bb(static_cast<size_t>(R), 0);
        uint16_t c0inv = F_->inv(aa[0]);
        bb[0] = c0inv;
        for (Exp k = 1; k < R; ++k) {
            uint16_t acc = 0;
            for (Exp i = 1; i <= k; ++i)
                if (aa[static_cast<size_t>(i)] != 0)
                    acc = F_->add(acc, F_->mul(aa[static_cast<size_t>(i)],
                                               bb[static_cast<size_t>(k - i)]));
            bb[static_cast<size_t>(k)] = F_->neg(F_->mul(c0inv, acc));
        }
        for (Exp k = 0; k < R; ++k)
            if (bb[static_cast<size_t>(k)] != 0) r.t_[-v + k] = bb[static_cast<size_t>(k)];
        return r;
    }

    // Full-accuracy inversion: output precision N - 2v.
    LaurentSeries invert() const {
        if (t_.empty())
            throw DomainError("zero divisor at working precision (prec " +
                              frac_string(prec_, lat()) + ")");
        if (exact() ) {
            if (t_.size() == 1)  // exact monomial stays exact
                return monomial(F_, -t_.begin()->first, F_->inv(t_.begin()->second));
            throw DomainError("invert: exact non-monomial needs invert_to(N)");
        }
        return invert_to(prec_ - 2 * t_.begin()->first);
    }

    // mu^m: exponents scaled by p^m, coefficients to the p^m-th power.
    // m < 0 requires every exponent divisible by p^{|m|}.
    LaurentSeries mu(long long m) const {
        int p = F_->p();
        if (m >= 0) {
            Exp scale = 1;
            for (long long i = 0; i < m; ++i) {
                scale *= p;
                if (scale > (1LL << 40)) throw Error("mu: scale overflow");
            }
            LaurentSeries r(F_, prec_ >= kExact ? kExact : prec_ * scale);
            for (auto& [e, c] : t_) r.t_[e * scale] = F_->frobenius(c, m);
            return r;
        }
        Exp scale = 1;
        for (long long i = 0; i < -m; ++i) {
            scale *= p;
            if (scale > (1LL << 40)) throw Error("mu: scale overflow");
        }
        LaurentSeries r(F_, prec_ >= kExact ? kExact : ceil_div(prec_, scale));
        for (auto& [e, c] : t_) {
            if (e % scale != 0)
                throw DomainError("mu: not in the image of mu^" + std::to_string(-m));
            r.t_[e / scale] = F_->frobenius(c, m);
        }
        return r;
    }

    // equality through valuation N (both operands must be known to N)
    static bool eq_mod(const LaurentSeries& a, const LaurentSeries& b, Exp N) {
        if (a.prec_ < N || b.prec_ < N)
            throw DomainError("eq_mod: operands not known to requested precision");
        auto ta = a.truncated(N), tb = b.truncated(N);
        return ta.t_ == tb.t_;
    }

    // smallest exponent at which the truncations differ
    static std::optional<Exp> first_discrepancy(const LaurentSeries& a, const LaurentSeries& b,
                                                Exp N) {
        auto d = (a - b).truncated(N);
        if (d.t_.empty()) return std::nullopt;
        return d.t_.begin()->first;
    }

    std::string str() const {
        if (t_.empty()) return exact() ? "0" : "O(theta^-(" + frac_string(prec_, lat()) + "))";
        std::ostringstream os;
        bool first = true;
        for (auto& [e, c] : t_) {
            if (!first) os << " + ";
            first = false;
            std::string cs = F_->to_string(c);
            if (cs.find('+') != std::string::npos) cs = "(" + cs + ")";
            if (e == 0) { os << cs; continue; }
            if (cs != "1") os << cs << "*";
            os << "theta^(" << frac_string(-e, lat()) << ")";
        }
        if (!exact()) os << " + O(theta^-(" << frac_string(prec_, lat()) << "))";
        return os.str();
    }

    // internal mutator used by deserialization
    void set_term(Exp e, uint16_t c) {
        if (c == 0) t_.erase(e);
        else if (e < prec_) t_[e] = c;
    }

private:
    const Field* F_ = nullptr;
    std::map<Exp, uint16_t> t_;
    Exp prec_ = kExact;
};

// Laurent expansion at infinity of num/den for theta-only polynomials
// (dense coefficient vectors, c[k] multiplies theta^k), exact mod theta^{-N}
// in theta units.
inline LaurentSeries expand_rational_theta(const Field* F, const std::vector<uint16_t>& num,
                                           const std::vector<uint16_t>& den, Exp N_lattice) {
    LaurentSeries n = LaurentSeries::from_poly(F, num);
    LaurentSeries d = LaurentSeries::from_poly(F, den);
    if (d.is_zero_at_prec()) throw DomainError("expand_rational: zero denominator");
    Exp vn = n.is_zero_at_prec() ? 0 : n.valuation().value();
    LaurentSeries dinv = d.invert_to(N_lattice - pmin(vn, 0) + 1);
    return (n * dinv).truncated(N_lattice);
}

}  // namespace carlitz
