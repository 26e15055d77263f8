#pragma once

// The Carlitz module: factorials d_n and logarithm denominators l_n, the skew
// action C_a built from C_theta = theta + tau, and the exponential/logarithm
// series on Tate elements.

#include "carlitz/tate.hpp"

namespace carlitz {

// d_n = product of all monic degree-n polynomials = prod_{i<n} (theta^{q^n} -
// theta^{q^i}); exact polynomial.
inline LaurentSeries factorial_d(const Field* F, int n) {
    if (n < 0) throw Error("factorial_d: n must be >= 0");
    LaurentSeries d = LaurentSeries::one(F);
    long long qn = 1;
    for (int k = 1; k <= n; ++k) {
        qn *= F->q();
        // d_k = (theta^{q^k} - theta) * d_{k-1}^q
        LaurentSeries lead = LaurentSeries::theta_pow(F, qn) - LaurentSeries::theta_pow(F, 1);
        d = lead * d.pow(F->q());
    }
    return d;
}

// l_n = prod_{j=1..n} (theta - theta^{q^j}); exact polynomial.
inline LaurentSeries log_denominator_l(const Field* F, int n) {
    if (n < 0) throw Error("log_denominator_l: n must be >= 0");
    LaurentSeries l = LaurentSeries::one(F);
    long long qj = 1;
    for (int j = 1; j <= n; ++j) {
        qj *= F->q();
        l = l * (LaurentSeries::theta_pow(F, 1) - LaurentSeries::theta_pow(F, qj));
    }
    return l;
}

// --- skew polynomials --------------------------------------------------------

// sum_i b_i tau^i acting by evaluation f -> sum b_i tau^i(f)
struct SkewPolynomial {
    const Field* F = nullptr;
    int s = 0;
    std::vector<TateElement> c;

    TateElement evaluate(const TateElement& f) const {
        TateElement acc = TateElement::zero(F, s, kExact);
        for (size_t i = 0; i < c.size(); ++i) {
            if (c[i].is_zero_at_prec()) continue;
            acc = acc + c[i] * f.tau(static_cast<long long>(i));
        }
        return acc;
    }
};

// C_a as an explicit skew polynomial, a in F_q[t_1..t_s][theta]:
// C_theta = theta + tau, t-coefficients act as scalars.
inline SkewPolynomial carlitz_skew(const MPoly& a) {
    const Field* F = a.field();
    int s = a.vars();
    int D = std::max(a.theta_degree(), 0);
    // coefficients of C_{theta^k} by composition, as exact polynomials
    std::vector<std::vector<MPoly>> cpow(static_cast<size_t>(D) + 1);
    cpow[0] = {MPoly::one(F, s)};
    for (int k = 1; k <= D; ++k) {
        const auto& prev = cpow[static_cast<size_t>(k - 1)];
        std::vector<MPoly> cur(prev.size() + 1, MPoly(F, s));
        for (size_t i = 0; i < prev.size(); ++i) {
            cur[i] = cur[i] + prev[i] * MPoly::theta(F, s);
            cur[i + 1] = cur[i + 1] + prev[i].tau_twist();
        }
        cpow[static_cast<size_t>(k)] = std::move(cur);
    }
    std::vector<MPoly> out(static_cast<size_t>(D) + 1, MPoly(F, s));
    for (auto& [key, cf] : a.monomials()) {
        MPoly tpart(F, s);
        MPoly::Key tk = key;
        tk[0] = 0;
        tpart.set(tk, cf);
        const auto& comp = cpow[static_cast<size_t>(key[0])];
        for (size_t i = 0; i < comp.size(); ++i) out[i] = out[i] + tpart * comp[i];
    }
    SkewPolynomial sk{F, s, {}};
    for (auto& p : out) sk.c.push_back(TateElement::from_mpoly(p));
    while (!sk.c.empty() && sk.c.back().is_zero_at_prec()) sk.c.pop_back();
    return sk;
}

// C_a(f) by Horner in C_theta; a must have polynomial t-coefficients.
inline TateElement carlitz_action(const MPoly& a, const TateElement& f) {
    const Field* F = a.field();
    int s = f.vars();
    if (a.vars() != s) throw Error("carlitz_action: variable count mismatch");
    int D = a.theta_degree();
    if (D < 0) return TateElement::zero(F, s, padd(f.prec(), 0));
    // theta-degree slices of a as t-polynomials
    std::vector<MPoly> slice(static_cast<size_t>(D) + 1, MPoly(F, s));
    for (auto& [key, cf] : a.monomials()) {
        MPoly::Key tk = key;
        tk[0] = 0;
        slice[static_cast<size_t>(key[0])].set(tk, cf);
    }
    TateElement r = TateElement::zero(F, s, kExact);
    for (int k = D; k >= 0; --k) {
        // r := C_theta(r) + slice_k * f
        r = r.scaled(LaurentSeries::theta_pow(F, 1)) + r.tau();
        if (!slice[static_cast<size_t>(k)].is_zero()) r = r + f.scaled(slice[static_cast<size_t>(k)]);
    }
    return r;
}

// --- exponential and logarithm ----------------------------------------------

// exp_C(f) = sum_i d_i^{-1} tau^i(f), exact mod theta^{-N}.  The input must
// be known mod theta^{-N} (the i = 0 term is f itself); term i is included
// iff its valuation floor q^i (v + i (q-1)) is below N, and the drop of the
// remaining terms is sound because that floor is eventually increasing.
inline TateElement exp_carlitz(const TateElement& f, Exp N) {
    const Field* F = f.field();
    int lat = F->lattice_den();
    if (f.prec() < N)
        throw DomainError("exp_carlitz: input precision " + frac_string(f.prec(), lat) +
                          " insufficient; required " + frac_string(N, lat));
    TateElement acc = TateElement::zero(F, f.vars(), N);
    if (f.is_zero_at_prec()) return acc;
    Exp v = f.gauss_valuation();
    long long qi = 1;
    for (long long i = 0;; ++i) {
        Exp term_floor = (v + i * lat) * qi;
        if (term_floor >= N) {
            if (v + i * lat > 0) break;  // increasing from here on
        } else {
            // v(d_i^{-1}) = +i q^i theta units; expand it deep enough that the
            // product with tau^i(f) stays exact mod theta^{-N}
            LaurentSeries di_inv =
                i == 0 ? LaurentSeries::one(F)
                       : factorial_d(F, static_cast<int>(i)).invert_to(N - qi * v + lat);
            acc = acc + f.tau(i).scaled(di_inv);
        }
        qi *= F->q();
        if (qi > (1LL << 50)) break;
    }
    return acc.truncated(N);
}

inline LaurentSeries exp_carlitz(const LaurentSeries& f, Exp N) {
    return exp_carlitz(TateElement::from_series(f, 0), N).scalar_part();
}

// log_C(g) = sum_i l_i^{-1} tau^i(g) on the disk v > -q/(q-1) (lattice: -q),
// exact mod theta^{-N}; exp_C(log_C(g)) = g there.
inline TateElement log_carlitz(const TateElement& g, Exp N) {
    const Field* F = g.field();
    int lat = F->lattice_den();
    if (g.prec() < N)
        throw DomainError("log_carlitz: input precision " + frac_string(g.prec(), lat) +
                          " insufficient; required " + frac_string(N, lat));
    TateElement acc = TateElement::zero(F, g.vars(), N);
    if (g.is_zero_at_prec()) return acc;
    Exp v = g.gauss_valuation();
    if (v <= -static_cast<Exp>(F->q()))
        throw DomainError("log_carlitz: outside logarithm domain (v_inf = " +
                          frac_string(v, lat) + " <= -q/(q-1))");
    long long qi = 1;
    for (long long i = 0;; ++i) {
        // v(l_i^{-1}) = (q^{i+1} - q)/(q-1) theta units = (q^{i+1}-q) lattice units
        Exp term_floor = qi * v + (qi * F->q() - F->q());
        if (term_floor >= N) break;  // strictly increasing on the disk
        LaurentSeries li_inv =
            i == 0 ? LaurentSeries::one(F)
                   : log_denominator_l(F, static_cast<int>(i)).invert_to(N - qi * v + lat);
        acc = acc + g.tau(i).scaled(li_inv);
        qi *= F->q();
        if (qi > (1LL << 50)) break;
    }
    return acc.truncated(N);
}

inline LaurentSeries log_carlitz(const LaurentSeries& g, Exp N) {
    return log_carlitz(TateElement::from_series(g, 0), N).scalar_part();
}

}  // namespace carlitz
