#pragma once

// mu-difference polynomials over K_s = F_q(theta, t_1..t_s): sparse maps from
// exponent tables (i_{l,j} = exponent of mu^j(X_l)) to exact rational
// coefficients, with evaluation into Tate elements, coefficient twisting,
// difference shift, depth/tameness, the decidable regularity classification,
// and the base-p digit ring with its carry product and the map phi onto tame
// normal forms mod P = (X^{p^k} - mu^k(X)).

#include "carlitz/tate.hpp"

namespace carlitz {

enum class MuClass { Tame, RegularByDepthZero, CriticalCandidate, Unknown };

inline std::string to_string(MuClass c) {
    switch (c) {
        case MuClass::Tame: return "Tame";
        case MuClass::RegularByDepthZero: return "RegularByDepthZero";
        case MuClass::CriticalCandidate: return "CriticalCandidate";
        default: return "Unknown";
    }
}

class MuPolynomial {
public:
    // exps[l][j] = exponent of mu^j(X_{l+1}); inner vectors trailing-trimmed
    using Table = std::vector<std::vector<int>>;

    MuPolynomial() = default;
    MuPolynomial(const Field* F, int nsym, int svars)
        : F_(F), nsym_(nsym), svars_(svars) {}

    static Table trim(Table t) {
        for (auto& row : t)
            while (!row.empty() && row.back() == 0) row.pop_back();
        return t;
    }

    // coeff * mu^j(X_l)^e  (l is 1-based)
    static MuPolynomial monomial(const Field* F, int nsym, int svars,
                                 const RationalFunction& coeff, int l, int j, int e = 1) {
        MuPolynomial r(F, nsym, svars);
        Table t(static_cast<size_t>(nsym));
        if (l < 1 || l > nsym) throw Error("MuPolynomial: symbol index out of range");
        t[static_cast<size_t>(l - 1)].assign(static_cast<size_t>(j) + 1, 0);
        t[static_cast<size_t>(l - 1)][static_cast<size_t>(j)] = e;
        r.add_term(t, coeff);
        return r;
    }

    static MuPolynomial constant(const Field* F, int nsym, int svars,
                                 const RationalFunction& coeff) {
        MuPolynomial r(F, nsym, svars);
        r.add_term(Table(static_cast<size_t>(nsym)), coeff);
        return r;
    }

    const Field* field() const { return F_; }
    int symbols() const { return nsym_; }
    int svars() const { return svars_; }
    const std::map<Table, RationalFunction>& terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }

    void add_term(const Table& tab, const RationalFunction& c) {
        if (c.is_zero()) return;
        Table key = trim(tab);
        key.resize(static_cast<size_t>(nsym_));
        auto it = t_.find(key);
        if (it == t_.end()) t_[key] = c;
        else {
            RationalFunction s = it->second + c;
            if (s.is_zero()) t_.erase(it);
            else it->second = s;
        }
    }

    friend MuPolynomial operator+(const MuPolynomial& a, const MuPolynomial& b) {
        MuPolynomial r = a;
        for (auto& [k, c] : b.t_) r.add_term(k, c);
        return r;
    }
    MuPolynomial operator-() const {
        MuPolynomial r(F_, nsym_, svars_);
        for (auto& [k, c] : t_) r.t_[k] = -c;
        return r;
    }
    friend MuPolynomial operator-(const MuPolynomial& a, const MuPolynomial& b) {
        return a + (-b);
    }
    friend MuPolynomial operator*(const MuPolynomial& a, const MuPolynomial& b) {
        MuPolynomial r(a.F_, a.nsym_, a.svars_);
        for (auto& [ka, ca] : a.t_)
            for (auto& [kb, cb] : b.t_) {
                Table k(static_cast<size_t>(a.nsym_));
                for (size_t l = 0; l < k.size(); ++l) {
                    k[l].assign(std::max(ka[l].size(), kb[l].size()), 0);
                    for (size_t j = 0; j < k[l].size(); ++j) {
                        if (j < ka[l].size()) k[l][j] += ka[l][j];
                        if (j < kb[l].size()) k[l][j] += kb[l][j];
                    }
                }
                r.add_term(k, ca * cb);
            }
        return r;
    }
    friend bool operator==(const MuPolynomial& a, const MuPolynomial& b) {
        if (a.t_.size() != b.t_.size()) return false;
        for (auto& [k, c] : a.t_) {
            auto it = b.t_.find(k);
            if (it == b.t_.end() || !(it->second == c)) return false;
        }
        return true;
    }

    // smallest k such that the expansion uses only mu^0..mu^k
    int depth() const {
        int d = 0;
        for (auto& [k, c] : t_)
            for (auto& row : k)
                if (!row.empty()) d = std::max(d, static_cast<int>(row.size()) - 1);
        return d;
    }

    bool is_tame() const {
        if (t_.empty()) return false;
        for (auto& [k, c] : t_)
            for (auto& row : k)
                for (int e : row)
                    if (e >= F_->p()) return false;
        return true;
    }

    // multi-homogeneous for the grading that assigns mu^j(X_l) degree p^j
    bool is_multihomogeneous() const {
        if (t_.empty()) return false;
        std::vector<long long> ref;
        bool first = true;
        for (auto& [k, c] : t_) {
            std::vector<long long> w(static_cast<size_t>(nsym_), 0);
            for (size_t l = 0; l < k.size(); ++l) {
                long long pj = 1;
                for (size_t j = 0; j < k[l].size(); ++j) {
                    w[l] += k[l][j] * pj;
                    pj *= F_->p();
                }
            }
            if (first) { ref = w; first = false; }
            else if (w != ref) return false;
        }
        return true;
    }

    // Decidable fragment only: depth 0 and tame imply analytic regularity;
    // p^j-multihomogeneity makes criticality possible (it holds as soon as a
    // nonzero root exists), reported as a candidate, never a verdict.
    MuClass classify() const {
        if (t_.empty()) throw DomainError("classify: zero mu-polynomial");
        if (depth() == 0) return MuClass::RegularByDepthZero;
        if (is_tame()) return MuClass::Tame;
        if (is_multihomogeneous()) return MuClass::CriticalCandidate;
        return MuClass::Unknown;
    }

    // P^mu: mu applied to all coefficients, exponent tables unchanged
    MuPolynomial twist_coefficients() const {
        MuPolynomial r(F_, nsym_, svars_);
        for (auto& [k, c] : t_) r.t_[k] = c.mu_twist();
        return r;
    }

    // mu(P): all mu-indices incremented, coefficients twisted
    MuPolynomial shift() const {
        MuPolynomial r(F_, nsym_, svars_);
        for (auto& [k, c] : t_) {
            Table kk(static_cast<size_t>(nsym_));
            for (size_t l = 0; l < k.size(); ++l)
                if (!k[l].empty()) {
                    kk[l].assign(k[l].size() + 1, 0);
                    for (size_t j = 0; j < k[l].size(); ++j) kk[l][j + 1] = k[l][j];
                }
            r.t_[kk] = c.mu_twist();
        }
        return r;
    }

    // substitute mu^j(X_l) := mu^j(f_l), exact mod theta^{-N}
    TateElement evaluate(const std::vector<TateElement>& fs, Exp N) const {
        if (static_cast<int>(fs.size()) != nsym_)
            throw Error("evaluate: expected " + std::to_string(nsym_) + " arguments");
        const Field* F = F_;
        int lat = F->lattice_den();
        TateElement acc = TateElement::zero(F, svars_, N);
        for (auto& [k, c] : t_) {
            TateElement m = TateElement::one(F, svars_);
            for (size_t l = 0; l < k.size(); ++l)
                for (size_t j = 0; j < k[l].size(); ++j) {
                    if (k[l][j] == 0) continue;
                    m = m * fs[l].mu(static_cast<long long>(j)).pow(k[l][j]);
                    if (!m.is_zero_at_prec() && m.prec() < N)
                        throw DomainError("evaluate: argument precision too low for target");
                }
            Exp vm = m.is_zero_at_prec() ? m.prec() : m.gauss_valuation();
            TateElement cf = expand_rational(c, N - pmin(vm, 0) + lat);
            acc = acc + cf * m;
        }
        return acc.truncated(N);
    }

    std::string str() const {
        if (t_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (auto& [k, c] : t_) {
            if (!first) os << " + ";
            first = false;
            os << "(" << c.str() << ")";
            for (size_t l = 0; l < k.size(); ++l)
                for (size_t j = 0; j < k[l].size(); ++j) {
                    if (k[l][j] == 0) continue;
                    os << " * ";
                    if (j == 0) os << "X" << (l + 1);
                    else if (j == 1) os << "m(X" << (l + 1) << ")";
                    else os << "m" << j << "(X" << (l + 1) << ")";
                    if (k[l][j] > 1) os << "^" << k[l][j];
                }
        }
        return os.str();
    }

private:
    const Field* F_ = nullptr;
    int nsym_ = 1;
    int svars_ = 0;
    std::map<Table, RationalFunction> t_;
};

// Normal form mod P = (X^{p^k} - mu^k(X)): rewrite mu^j(X)^e with e >= p to
// mu^j(X)^{e-p} mu^{j+1}(X), lowest mu-index first (the carry chain).  The
// result is tame; the p-weighted degree sum e_j p^j is preserved.
inline MuPolynomial reduce_mod_P(const MuPolynomial& P) {
    if (P.symbols() != 1) throw Error("reduce_mod_P: one-symbol mu-polynomials only");
    MuPolynomial r(P.field(), 1, P.svars());
    int p = P.field()->p();
    for (auto& [k, c] : P.terms()) {
        std::vector<int> row = k.empty() ? std::vector<int>{} : k[0];
        for (size_t j = 0; j < row.size(); ++j)
            while (row[j] >= p) {
                row[j] -= p;
                if (j + 1 >= row.size()) row.resize(j + 2, 0);
                row[j + 1] += 1;
            }
        r.add_term({row}, c);
    }
    return r;
}

// --- the digit ring R<Y> -------------------------------------------------------

inline std::vector<int> base_p_digits(long long i, int p) {
    std::vector<int> d;
    while (i > 0) {
        d.push_back(static_cast<int>(i % p));
        i /= p;
    }
    return d;
}

// index addition through the carry recurrence i_n + j_n + b_{n-1} = k_n + p b_n
inline long long digit_carry_add(long long i, long long j, int p) {
    auto di = base_p_digits(i, p), dj = base_p_digits(j, p);
    size_t n = std::max(di.size(), dj.size()) + 2;
    di.resize(n, 0);
    dj.resize(n, 0);
    long long k = 0, pw = 1;
    int borrow = 0;
    for (size_t m = 0; m < n; ++m) {
        int sum = di[m] + dj[m] + borrow;
        k += static_cast<long long>(sum % p) * pw;
        borrow = sum / p;
        pw *= p;
    }
    return k;
}

template <class R>
struct DigitPoly {
    int p = 2;
    std::map<long long, R> c;  // index of <Y>^i -> coefficient

    void add_term(long long i, const R& x) {
        auto it = c.find(i);
        if (it == c.end()) {
            if (!x.is_zero()) c[i] = x;
        } else {
            R s = it->second + x;
            if (s.is_zero()) c.erase(it);
            else it->second = s;
        }
    }

    friend bool operator==(const DigitPoly& a, const DigitPoly& b) { return a.c == b.c; }
};

// R<Y> product: <Y>^i <Y>^j = <Y>^{i+j}, the index sum realized by base-p
// digit carries.
template <class R>
inline DigitPoly<R> digit_multiply(const DigitPoly<R>& f, const DigitPoly<R>& g) {
    if (f.p != g.p) throw Error("digit_multiply: coefficient ring / base mismatch");
    DigitPoly<R> r;
    r.p = f.p;
    for (auto& [i, ci] : f.c)
        for (auto& [j, cj] : g.c) r.add_term(digit_carry_add(i, j, f.p), ci * cj);
    return r;
}

// oracle route: the image in R[Z] multiplies by plain integer index addition
template <class R>
inline DigitPoly<R> zpoly_multiply(const DigitPoly<R>& f, const DigitPoly<R>& g) {
    DigitPoly<R> r;
    r.p = f.p;
    for (auto& [i, ci] : f.c)
        for (auto& [j, cj] : g.c) r.add_term(i + j, ci * cj);
    return r;
}

// mu on R<Y>: sum f_i <Y>^i -> sum mu(f_i) <Y>^{p i}
inline FieldElement mu_coeff(const FieldElement& x) { return x.frobenius(1); }
inline RationalFunction mu_coeff(const RationalFunction& x) { return x.mu_twist(); }

template <class R>
inline DigitPoly<R> digit_mu(const DigitPoly<R>& f) {
    DigitPoly<R> r;
    r.p = f.p;
    for (auto& [i, ci] : f.c) r.c[i * f.p] = mu_coeff(ci);
    return r;
}

// phi(Z^i) = X^{i_0} mu(X)^{i_1} ... mu^r(X)^{i_r} (mod P): the tame monomial
// with the base-p digits of i as exponents.
inline MuPolynomial phi_monomial(const Field* F, int svars, long long i,
                                 const RationalFunction& coeff) {
    MuPolynomial r(F, 1, svars);
    auto d = base_p_digits(i, F->p());
    r.add_term({std::vector<int>(d.begin(), d.end())}, coeff);
    return r;
}

inline MuPolynomial phi_to_mu(const Field* F, int svars,
                              const DigitPoly<RationalFunction>& f) {
    MuPolynomial r(F, 1, svars);
    for (auto& [i, ci] : f.c) r = r + phi_monomial(F, svars, i, ci);
    return r;
}

}  // namespace carlitz
