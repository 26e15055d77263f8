#pragma once

// Truncated elements of the Tate algebra T_s: finite t-monomial support with
// LaurentSeries coefficients sharing one Gauss-valuation precision bound.
//
// Precision policy: the element's precision N is the uniform guarantee; every
// stored coefficient series is truncated to exactly N, and a t-monomial whose
// coefficient is indistinguishable from 0 below N is not stored.  Operation
// output precisions follow the same rules as LaurentSeries with Gauss
// valuations in place of valuations.

#include "carlitz/poly.hpp"

namespace carlitz {

namespace detail {

// binomial coefficient mod p by Lucas digit products
inline int lucas_binom(long long m, long long n, int p) {
    if (n < 0 || m < 0 || n > m) return 0;
    static thread_local std::vector<std::vector<int>> pascal;
    static thread_local int pascal_p = 0;
    if (pascal_p != p) {
        pascal.assign(p, std::vector<int>(p, 0));
        for (int i = 0; i < p; ++i) {
            pascal[i][0] = 1;
            for (int j = 1; j <= i; ++j)
                pascal[i][j] = (pascal[i - 1][j - 1] + (j <= i - 1 ? pascal[i - 1][j] : 0)) % p;
        }
        pascal_p = p;
    }
    int r = 1;
    while ((m > 0 || n > 0) && r != 0) {
        int md = static_cast<int>(m % p), nd = static_cast<int>(n % p);
        if (nd > md) return 0;
        r = (r * pascal[md][nd]) % p;
        m /= p;
        n /= p;
    }
    return r;
}

}  // namespace detail

class TateElement {
public:
    using Key = std::vector<int>;  // t-exponents, length s

    TateElement() = default;
    TateElement(const Field* F, int s, Exp prec) : F_(F), s_(s), prec_(prec) {}

    static TateElement zero(const Field* F, int s, Exp prec = kExact) { return {F, s, prec}; }
    static TateElement one(const Field* F, int s) {
        TateElement r(F, s, kExact);
        r.t_[Key(static_cast<size_t>(s), 0)] = LaurentSeries::one(F);
        return r;
    }

    static TateElement from_series(const LaurentSeries& c, int s) {
        TateElement r(c.field(), s, c.prec());
        if (!c.is_zero_at_prec()) r.t_[Key(static_cast<size_t>(s), 0)] = c;
        return r;
    }

    static TateElement from_mpoly(const MPoly& a) {
        const Field* F = a.field();
        TateElement r(F, a.vars(), kExact);
        for (auto& [k, c] : a.monomials()) {
            Key tk(k.begin() + 1, k.end());
            LaurentSeries mono =
                LaurentSeries::monomial(F, -static_cast<Exp>(k[0]) * F->lattice_den(), c);
            auto it = r.t_.find(tk);
            if (it == r.t_.end()) r.t_[tk] = mono;
            else it->second = it->second + mono;
        }
        r.normalize();
        return r;
    }

    const Field* field() const { return F_; }
    int vars() const { return s_; }
    Exp prec() const { return prec_; }
    int lat() const { return F_->lattice_den(); }
    const std::map<Key, LaurentSeries>& terms() const { return t_; }
    bool is_zero_at_prec() const { return t_.empty(); }

    // informative per-variable degree cap: max stored t-degree
    int degree_cap() const {
        int d = 0;
        for (auto& [k, c] : t_)
            for (int e : k) d = std::max(d, e);
        return d;
    }

    Exp val_floor() const {
        Exp v = prec_;
        for (auto& [k, c] : t_) v = pmin(v, c.val_floor());
        return v;
    }

    // Gauss valuation; error if indistinguishable from zero at precision
    Exp gauss_valuation() const {
        if (t_.empty())
            throw DomainError("gauss_valuation: zero at working precision " +
                              frac_string(prec_, lat()));
        Exp v = kExact;
        for (auto& [k, c] : t_) v = pmin(v, c.val_floor());
        return v;
    }

    LaurentSeries coeff(const Key& k) const {
        auto it = t_.find(k);
        return it == t_.end() ? LaurentSeries::zero(F_, prec_) : it->second;
    }
    LaurentSeries scalar_part() const { return coeff(Key(static_cast<size_t>(s_), 0)); }

    TateElement truncated(Exp N) const {
        TateElement r(F_, s_, pmin(prec_, N));
        for (auto& [k, c] : t_) r.t_[k] = c;
        r.normalize();
        return r;
    }

    friend TateElement operator+(const TateElement& a, const TateElement& b) {
        TateElement r(a.F_, a.s_, pmin(a.prec_, b.prec_));
        r.t_ = a.t_;
        for (auto& [k, c] : b.t_) {
            auto it = r.t_.find(k);
            if (it == r.t_.end()) r.t_[k] = c;
            else it->second = it->second + c;
        }
        r.normalize();
        return r;
    }

    TateElement operator-() const {
        TateElement r(F_, s_, prec_);
        for (auto& [k, c] : t_) r.t_[k] = -c;
        return r;
    }
    friend TateElement operator-(const TateElement& a, const TateElement& b) { return a + (-b); }

    friend TateElement operator*(const TateElement& a, const TateElement& b) {
        Exp rprec = pmin(padd(a.prec_, b.val_floor()), padd(b.prec_, a.val_floor()));
        TateElement r(a.F_, a.s_, rprec);
        for (auto& [ka, ca] : a.t_) {
            for (auto& [kb, cb] : b.t_) {
                if (rprec < kExact && ca.val_floor() + cb.val_floor() >= rprec) continue;
                Key k(ka.size());
                for (size_t i = 0; i < k.size(); ++i) k[i] = ka[i] + kb[i];
                LaurentSeries prod = ca * cb;
                auto it = r.t_.find(k);
                if (it == r.t_.end()) r.t_[k] = prod;
                else it->second = it->second + prod;
            }
        }
        r.normalize();
        return r;
    }

    TateElement scaled(const LaurentSeries& c) const { return *this * from_series(c, s_); }
    TateElement scaled(const MPoly& a) const { return *this * from_mpoly(a); }

    TateElement pow(long long n) const {
        if (n < 0) return invert().pow(-n);
        TateElement r = one(F_, s_), base = *this;
        while (n) {
            if (n & 1) r = r * base;
            base = base * base;
            n >>= 1;
        }
        return r;
    }

    // Inversion for elements with strictly dominant t-constant coefficient:
    // f = c0(theta)(1 + u), v(u) > 0.  Output precision N - 2 v(f).
    TateElement invert() const {
        if (t_.empty())
            throw DomainError("invert: zero at working precision " + frac_string(prec_, lat()));
        auto it0 = t_.find(Key(static_cast<size_t>(s_), 0));
        if (it0 == t_.end())
            throw DomainError("invert: no t-constant term; element is not a unit here");
        const LaurentSeries& c0 = it0->second;
        Exp v0 = c0.val_floor();
        Exp delta = kExact;
        for (auto& [k, c] : t_)
            if (k != it0->first) delta = pmin(delta, c.val_floor() - v0);
        if (delta <= 0)
            throw DomainError("invert: t-constant coefficient is not strictly dominant");
        if (prec_ >= kExact)
            throw DomainError("invert: exact element needs a finite working precision");
        Exp Nout = prec_ - 2 * v0;
        Exp Nrel = Nout + v0;  // precision for (1+u)^{-1}
        LaurentSeries c0inv = c0.invert();                // prec = prec_ - 2 v0
        TateElement u = (*this - from_series(c0, s_)).scaled(c0inv).truncated(Nrel);
        TateElement acc = one(F_, s_).truncated(Nrel);
        TateElement term = acc;
        if (!u.is_zero_at_prec()) {
            long long K = static_cast<long long>(ceil_div(Nrel > 0 ? Nrel : 0, delta));
            for (long long k2 = 1; k2 <= K; ++k2) {
                term = (term * (-u)).truncated(Nrel);
                if (term.is_zero_at_prec()) break;
                acc = acc + term;
            }
        }
        return acc.scaled(c0inv).truncated(Nout);
    }

    // mu^m coefficient automorphism, t-monomials fixed; tau = mu^e
    TateElement mu(long long m) const {
        if (m < 0) throw Error("TateElement::mu: m must be >= 0");
        Exp scale = 1;
        for (long long i = 0; i < m; ++i) scale *= F_->p();
        TateElement r(F_, s_, prec_ >= kExact ? kExact : prec_ * scale);
        for (auto& [k, c] : t_) r.t_[k] = c.mu(m);
        return r;
    }
    TateElement tau(long long i = 1) const { return mu(F_->e() * i); }

    // D_n in variable var (1-based): t^m -> binom(m, n) t^{m-n}, Lucas-reduced
    TateElement divided_derivative(long long n, int var = 1) const {
        if (var < 1 || var > s_) throw Error("divided_derivative: variable out of range");
        if (n < 0) throw Error("divided_derivative: n must be >= 0");
        TateElement r(F_, s_, prec_);
        for (auto& [k, c] : t_) {
            int m = k[static_cast<size_t>(var - 1)];
            int b = detail::lucas_binom(m, n, F_->p());
            if (b == 0) continue;
            Key kk = k;
            kk[static_cast<size_t>(var - 1)] = static_cast<int>(m - n);
            LaurentSeries add = c.scaled(F_->from_int(b));
            auto it = r.t_.find(kk);
            if (it == r.t_.end()) r.t_[kk] = add;
            else it->second = it->second + add;
        }
        r.normalize();
        return r;
    }

    // t_var := value, requires gauss_valuation(value) >= 0
    TateElement substitute(int var, const TateElement& value) const {
        if (var < 1 || var > s_) throw Error("substitute: variable out of range");
        if (!value.is_zero_at_prec() && value.gauss_valuation() < 0)
            throw DomainError("substitute: outside unit disk; use summand-level evaluation");
        TateElement acc = zero(F_, s_, prec_);
        std::vector<TateElement> powers = {one(F_, s_)};
        for (auto& [k, c] : t_) {
            int m = k[static_cast<size_t>(var - 1)];
            while (static_cast<int>(powers.size()) <= m)
                powers.push_back(powers.back() * value);
            Key kk = k;
            kk[static_cast<size_t>(var - 1)] = 0;
            TateElement mono(F_, s_, c.prec());
            mono.t_[kk] = c;
            acc = acc + mono * powers[static_cast<size_t>(m)];
        }
        return acc;
    }

    static bool eq_mod(const TateElement& a, const TateElement& b, Exp N) {
        if (a.prec_ < N || b.prec_ < N)
            throw DomainError("eq_mod: operands not known to requested precision");
        auto ta = a.truncated(N), tb = b.truncated(N);
        if (ta.t_.size() != tb.t_.size()) return false;
        for (auto& [k, c] : ta.t_) {
            auto it = tb.t_.find(k);
            if (it == tb.t_.end()) return false;
            if (c.terms() != it->second.terms()) return false;
        }
        return true;
    }

    // smallest discrepant exponent across all monomials, below N
    static std::optional<std::pair<Key, Exp>> first_discrepancy(const TateElement& a,
                                                                const TateElement& b, Exp N) {
        auto d = (a - b).truncated(N);
        std::optional<std::pair<Key, Exp>> best;
        for (auto& [k, c] : d.t_) {
            if (c.is_zero_at_prec()) continue;
            Exp v = c.valuation().value();
            if (!best || v < best->second) best = std::make_pair(k, v);
        }
        return best;
    }

    // Recover an element of F_q[theta][t_1..t_s] equal to *this mod theta^{-N};
    // nullopt if any residual term below N survives or a coefficient is not in
    // F_q on the integral lattice.
    std::optional<MPoly> recover_polynomial(Exp N) const {
        MPoly out(F_, s_);
        for (auto& [k, c] : truncated(N).t_)
            for (auto& [e, x] : c.terms()) {
                if (e > 0) return std::nullopt;           // genuine tail term
                if (e % lat() != 0) return std::nullopt;  // fractional exponent
                if (!F_->in_fq(x)) return std::nullopt;
                MPoly::Key pk(static_cast<size_t>(s_) + 1, 0);
                pk[0] = static_cast<int>(-e / lat());
                for (int i = 0; i < s_; ++i) pk[static_cast<size_t>(i) + 1] = k[static_cast<size_t>(i)];
                out.set(pk, x);
            }
        return out;
    }

    std::string str() const {
        if (t_.empty()) return "O(theta^-(" + frac_string(prec_, lat()) + "))";
        std::ostringstream os;
        bool first = true;
        for (auto& [k, c] : t_) {
            if (!first) os << " + ";
            first = false;
            std::ostringstream mono;
            bool any = false;
            for (size_t i = 0; i < k.size(); ++i)
                if (k[i] != 0) {
                    if (any) mono << "*";
                    mono << "t";
                    if (s_ > 1) mono << (i + 1);
                    if (k[i] != 1) mono << "^" << k[i];
                    any = true;
                }
            if (any) os << "(" << c.str() << ")*" << mono.str();
            else os << "(" << c.str() << ")";
        }
        return os.str();
    }

    void set_term(const Key& k, LaurentSeries c) {
        if (static_cast<int>(k.size()) != s_) throw Error("set_term: bad key length");
        t_[k] = std::move(c);
        normalize();
    }

private:
    void normalize() {
        for (auto it = t_.begin(); it != t_.end();) {
            it->second = it->second.truncated(prec_);
            if (it->second.is_zero_at_prec()) it = t_.erase(it);
            else ++it;
        }
    }

    const Field* F_ = nullptr;
    int s_ = 0;
    std::map<Key, LaurentSeries> t_;
    Exp prec_ = kExact;
};

// 1/a for a monic in theta with F_q[t_1..t_s] coefficients, exact mod
// theta^{-N} (N in lattice units).  Geometric iteration; each step raises the
// Gauss valuation by at least one theta unit.
inline TateElement expand_inverse_monic(const MPoly& a, Exp N) {
    const Field* F = a.field();
    int lat = F->lattice_den();
    if (!a.monic_in_theta() || a.theta_degree() < 1)
        throw DomainError("expand_inverse_monic: polynomial must be monic in theta of degree >= 1");
    int D = a.theta_degree();
    Exp Ns = N - static_cast<Exp>(D) * lat;  // relative precision of (1+u)^{-1}
    TateElement r(F, a.vars(), N);
    if (Ns <= 0) return r;  // inverse has valuation D >= N: zero at precision
    MPoly lower = a - MPoly::theta(F, a.vars(), D);
    TateElement u = TateElement::from_mpoly(lower)
                        .scaled(LaurentSeries::theta_pow(F, -D))
                        .truncated(Ns);
    TateElement acc = TateElement::one(F, a.vars()).truncated(Ns);
    TateElement term = acc;
    for (;;) {
        term = (term * (-u)).truncated(Ns);
        if (term.is_zero_at_prec()) break;
        acc = acc + term;
    }
    return acc.scaled(LaurentSeries::theta_pow(F, -D)).truncated(N);
}

// num/den expanded as a TateElement, exact mod theta^{-N}: denominator either
// theta-only or (after scaling) monic in theta.
inline TateElement expand_rational(const RationalFunction& r, Exp N) {
    const Field* F = r.field();
    int lat = F->lattice_den();
    const MPoly& den = r.den();
    TateElement numt = TateElement::from_mpoly(r.num());
    Exp vnum = numt.is_zero_at_prec() ? 0 : pmin(numt.gauss_valuation(), 0);
    if (!den.uses_t()) {
        auto dc = den.theta_coeffs();
        LaurentSeries dinv =
            LaurentSeries::from_poly(F, dc).invert_to(N - vnum + lat);
        return numt.scaled(dinv).truncated(N);
    }
    if (den.monic_in_theta()) {
        TateElement dinv = expand_inverse_monic(den, N - vnum + lat);
        return (numt * dinv).truncated(N);
    }
    throw DomainError("expand_rational: denominator neither theta-only nor monic in theta");
}

}  // namespace carlitz
