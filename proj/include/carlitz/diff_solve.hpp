#pragma once

// Constructive solver for tau^{-1}(X) = X + g over T_1 via exp_C, log_C and
// omega, plus the triangular polylogarithm trivialization system.  tau^{-1}
// is never applied to truncated series: every equation is checked in the
// equivalent tau-applied form tau(x) = x - tau(g), which has the same
// solution set.

#include "carlitz/special_values.hpp"

namespace carlitz {

struct SolveReport {
    TateElement x;  // particular solution
    TateElement v;  // intermediate exp_C preimage
    Exp checked_prec = 0;
    bool verified = false;
    std::optional<std::string> first_discrepancy;
};

// Solve tau^{-1}(X) = X + g, s = 1: v = log_C(-tau(g)(t-theta)omega),
// x = omega^{-1} exp_C(v/(theta-t)); solution set is x + F_q(t).
inline SolveReport solve_tau_inverse(const TateElement& g, Exp N) {
    const Field* F = g.field();
    int lat = F->lattice_den();
    if (g.vars() != 1) throw Error("solve_tau_inverse: s = 1 only");
    SolveReport rep;
    MPoly t_minus_theta = MPoly::tvar(F, 1, 1) - MPoly::theta(F, 1);
    MPoly theta_minus_t = -t_minus_theta;
    for (Exp pad = 4; pad <= 16; pad += 6) {
        Exp W = N + pad * lat + 2;
        bool limited = g.prec() < W;  // caller's data bounds the achievable precision
        if (limited) W = g.prec();
        TateElement taug = g.tau();
        TateElement arg =
            (-taug).scaled(t_minus_theta) * omega(F, W);
        if (arg.is_zero_at_prec()) {
            rep.x = TateElement::zero(F, 1, pmin(arg.prec(), W));
            rep.v = rep.x;
            rep.checked_prec = pmin(arg.prec(), W);
            rep.verified = true;
            return rep;
        }
        if (arg.gauss_valuation() <= -static_cast<Exp>(F->q()))
            throw DomainError(
                "solve_tau_inverse: use a different particular solution; "
                "out of constructive range (forcing term leaves the log_C disk)");
        TateElement v = log_carlitz(arg, pmin(arg.prec(), W));
        TateElement xi = v * expand_inverse_monic(theta_minus_t, W);
        TateElement ex = exp_carlitz(xi, pmin(xi.prec(), W));
        TateElement x = omega_inverse(F, W) * ex;
        TateElement resid = x.tau() - x + taug;
        Exp cp = pmin(resid.prec(), N);
        if (cp < N && !limited && pad + 6 <= 16) continue;
        rep.x = x;
        rep.v = v;
        rep.checked_prec = cp;
        rep.verified = resid.truncated(cp).is_zero_at_prec();
        if (!rep.verified) {
            auto d = TateElement::first_discrepancy(x.tau() + taug, x, cp);
            if (d) rep.first_discrepancy = frac_string(d->second, lat);
        }
        return rep;
    }
    throw DomainError("solve_tau_inverse: could not reach requested precision");
}

struct PolylogReport {
    bool verified = false;
    Exp checked_prec = 0;
    std::vector<std::vector<TateElement>> x;  // lower-triangular (d+1)x(d+1)
    std::vector<std::tuple<int, int, bool>> step_verified;  // per-entry tau-applied checks
    std::optional<std::pair<int, int>> failed_at;
    std::string detail;
};

// Triangular system tau^{-1}(x_{i,j}) = tau^{-1}(Q_i)(t-theta)^{s_i+..+s_d}
// x_{i-1,j} + (t-theta)^{s_{i+1}+..+s_d} x_{i,j}, diagonal x_{i,i} =
// Omega^{s_{i+1}+..+s_d}; solved bottom-up through y_{i,j} =
// x_{i,j}/Omega^{s_{i+1}+..+s_d} and verified tau-applied entrywise.
inline PolylogReport solve_polylog_system(const std::vector<int>& svec,
                                          const std::vector<RationalFunction>& Q, Exp N) {
    if (svec.empty() || svec.size() != Q.size())
        throw Error("solve_polylog_system: need d >= 1 weights and forcings");
    int d = static_cast<int>(svec.size());
    const Field* F = Q[0].field();
    int lat = F->lattice_den();
    for (int si : svec)
        if (si < 1) throw Error("solve_polylog_system: weights must be positive");
    PolylogReport rep;
    Exp W = N + 8 * lat + 2 * static_cast<Exp>(d);
    TateElement Om = capital_omega(F, W);
    MPoly t_minus_theta = MPoly::tvar(F, 1, 1) - MPoly::theta(F, 1);
    // suffix weights S[i] = s_{i+1} + .. + s_d
    std::vector<long long> S(static_cast<size_t>(d) + 1, 0);
    for (int i = d - 1; i >= 0; --i)
        S[static_cast<size_t>(i)] = S[static_cast<size_t>(i) + 1] + svec[static_cast<size_t>(i)];
    // (t-theta)Omega
    TateElement tmtOm = Om.scaled(t_minus_theta);
    std::vector<std::vector<TateElement>> y(
        static_cast<size_t>(d) + 1,
        std::vector<TateElement>(static_cast<size_t>(d) + 1, TateElement::zero(F, 1)));
    rep.x.assign(static_cast<size_t>(d) + 1,
                 std::vector<TateElement>(static_cast<size_t>(d) + 1, TateElement::zero(F, 1)));
    for (int j = 0; j <= d; ++j) y[static_cast<size_t>(j)][static_cast<size_t>(j)] = TateElement::one(F, 1);
    for (int j = 0; j < d; ++j) {
        for (int i = j + 1; i <= d; ++i) {
            RationalFunction Qi = Q[static_cast<size_t>(i - 1)];
            TateElement qpart = expand_rational(Qi.tau_inverse(), W);
            TateElement forcing = qpart * tmtOm.pow(svec[static_cast<size_t>(i - 1)]) *
                                  y[static_cast<size_t>(i - 1)][static_cast<size_t>(j)];
            try {
                SolveReport sr = solve_tau_inverse(forcing, N);
                if (!sr.verified) {
                    rep.failed_at = {i, j};
                    rep.detail = "solver verification failed at entry";
                    return rep;
                }
                y[static_cast<size_t>(i)][static_cast<size_t>(j)] = sr.x;
            } catch (const DomainError& err) {
                rep.failed_at = {i, j};
                rep.detail = err.what();
                return rep;
            }
        }
    }
    for (int i = 0; i <= d; ++i)
        for (int j = 0; j <= i; ++j)
            rep.x[static_cast<size_t>(i)][static_cast<size_t>(j)] =
                y[static_cast<size_t>(i)][static_cast<size_t>(j)] * Om.pow(S[static_cast<size_t>(i)]);
    // entrywise tau-applied verification:
    // x_{i,j} = Q_i (t-theta^q)^{s_i+..+s_d} tau(x_{i-1,j})
    //           + (t-theta^q)^{s_{i+1}+..+s_d} tau(x_{i,j}),   j < i
    // x_{i,i} = (t-theta^q)^{s_{i+1}+..+s_d} tau(x_{i,i})
    MPoly t_minus_thetaq = MPoly::tvar(F, 1, 1) - MPoly::theta(F, 1).mu_twist(F->e());
    Exp cp = N;
    bool ok = true;
    for (int i = 0; i <= d; ++i)
        for (int j = 0; j <= i; ++j) {
            TateElement rhs = rep.x[static_cast<size_t>(i)][static_cast<size_t>(j)].tau().scaled(
                t_minus_thetaq.pow(S[static_cast<size_t>(i)]));
            if (j < i) {
                TateElement qn = expand_rational(Q[static_cast<size_t>(i - 1)], W);
                rhs = rhs + qn * rep.x[static_cast<size_t>(i - 1)][static_cast<size_t>(j)].tau().scaled(
                                t_minus_thetaq.pow(S[static_cast<size_t>(i - 1)]));
            }
            TateElement lhs = rep.x[static_cast<size_t>(i)][static_cast<size_t>(j)];
            Exp here = pmin(pmin(lhs.prec(), rhs.prec()), N);
            cp = pmin(cp, here);
            bool entry_ok = (lhs - rhs).truncated(here).is_zero_at_prec();
            rep.step_verified.emplace_back(i, j, entry_ok);
            if (!entry_ok && ok) {
                ok = false;
                rep.failed_at = {i, j};
                rep.detail = "tau-applied relation fails";
            }
        }
    rep.verified = ok && cp >= N;
    rep.checked_prec = cp;
    return rep;
}

}  // namespace carlitz
