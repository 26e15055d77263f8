#pragma once

// Special values and the identity verifiers built on them: the period
// pi_bar, the Anderson-Thakur function omega and its products, torsion
// points, zeta values zeta_A(n; s) with optional interpolation evaluation,
// the generalized-Carlitz-identity verifier and the Euler-Carlitz rational
// reconstruction.
//
// All precisions are in lattice units (multiples of 1/(q-1) of a theta
// power); the CLI converts from theta units.

#include "carlitz/carlitz.hpp"

namespace carlitz {

// prod_{i>=1} (1 - theta^{1-q^i})^{-1} to relative depth W (lattice units)
inline LaurentSeries pi_product_tail(const Field* F, Exp W) {
    int lat = F->lattice_den();
    LaurentSeries acc = LaurentSeries::one(F).truncated(W);
    long long qi = 1;
    for (;;) {
        qi *= F->q();
        Exp fe = static_cast<Exp>(qi - 1) * lat;  // valuation of theta^{1-q^i}
        if (fe >= W) break;
        LaurentSeries factor =
            LaurentSeries::one(F) - LaurentSeries::monomial(F, fe, 1);
        acc = acc * factor.truncated(W).invert_to(W);
    }
    return acc;
}

// pi_bar = -(-theta)^{q/(q-1)} prod_{i>=1}(1-theta^{1-q^i})^{-1}, exact mod
// theta^{-N}; the root choice is zeta_ram, v_inf = -q/(q-1).
inline LaurentSeries pi_bar(const Field* F, Exp N) {
    Exp W = N + F->q() + F->lattice_den();
    LaurentSeries tail = pi_product_tail(F, W);
    // (-theta)^{q/(q-1)} = zeta_ram^q * theta^{q/(q-1)}
    uint16_t lead = F->neg(F->pow(F->zeta_ram(), F->q()));
    return tail.shifted(-static_cast<Exp>(F->q()), lead).truncated(N);
}

// omega in variable var (1-based) as an element of T_s:
// zeta_ram * theta^{1/(q-1)} * prod_{i>=0} (1 - t theta^{-q^i})^{-1}.
inline TateElement omega(const Field* F, Exp N, int s = 1, int var = 1) {
    int lat = F->lattice_den();
    Exp W = N + 1 + lat;  // relative depth, v(omega) = -1 lattice unit
    TateElement acc = TateElement::one(F, s).truncated(W);
    long long qi = 1;
    for (;;) {
        // (1 - t theta^{-q^i})^{-1} = sum_k t^k theta^{-k q^i}
        TateElement factor(F, s, W);
        for (long long k = 0; static_cast<Exp>(k) * qi * lat < W; ++k) {
            TateElement::Key key(static_cast<size_t>(s), 0);
            key[static_cast<size_t>(var - 1)] = static_cast<int>(k);
            factor.set_term(key, LaurentSeries::monomial(F, static_cast<Exp>(k) * qi * lat, 1, W));
        }
        acc = acc * factor;
        qi *= F->q();
        if (static_cast<Exp>(qi) * lat >= W) break;
    }
    return acc.scaled(LaurentSeries::monomial(F, -1, F->zeta_ram())).truncated(N);
}

// 1/omega directly from the finite product (1/omega is entire):
// zeta_ram^{-1} theta^{-1/(q-1)} prod_{i>=0} (1 - t theta^{-q^i}).
inline TateElement omega_inverse(const Field* F, Exp N, int s = 1, int var = 1) {
    int lat = F->lattice_den();
    Exp W = N - 1 + lat;
    TateElement acc = TateElement::one(F, s).truncated(W);
    long long qi = 1;
    for (;;) {
        TateElement factor = TateElement::one(F, s).truncated(W);
        TateElement::Key key(static_cast<size_t>(s), 0);
        key[static_cast<size_t>(var - 1)] = 1;
        factor.set_term(key, LaurentSeries::monomial(F, static_cast<Exp>(qi) * lat, F->neg(1), W));
        acc = acc * factor;
        qi *= F->q();
        if (static_cast<Exp>(qi) * lat >= W) break;
    }
    return acc.scaled(LaurentSeries::monomial(F, 1, F->inv(F->zeta_ram()))).truncated(N);
}

// omega_s = omega(t_1) ... omega(t_s); empty product = 1
inline TateElement omega_product(const Field* F, Exp N, int s) {
    TateElement acc = TateElement::one(F, s).truncated(N + s + 1);
    for (int v = 1; v <= s; ++v) acc = acc * omega(F, N + s + 1, s, v);
    return acc.truncated(N);
}

inline TateElement omega_product_inverse(const Field* F, Exp N, int s) {
    TateElement acc = TateElement::one(F, s).truncated(N + s + 1);
    for (int v = 1; v <= s; ++v) acc = acc * omega_inverse(F, N + s + 1, s, v);
    return acc.truncated(N);
}

// Omega = tau(omega)^{-1}
inline TateElement capital_omega(const Field* F, Exp N) {
    int q = F->q();
    return omega(F, ceil_div(N + 2 * q + 2, q), 1, 1).tau().invert().truncated(N);
}

// exp_C(pi_bar theta^j / a) for a monic in theta over F_q[t_1..t_s],
// 0 <= j <= deg(a)-1; killed by C_a.
inline TateElement torsion_point(const MPoly& a, int j, Exp N) {
    const Field* F = a.field();
    int lat = F->lattice_den();
    int d = a.theta_degree();
    if (!a.monic_in_theta() || d < 1)
        throw DomainError("torsion_point: a must be monic in theta of degree >= 1");
    if (j < 0 || j >= d) throw DomainError("torsion_point: j out of range 0..deg-1");
    Exp W = N + F->q() + (static_cast<Exp>(j) + 1) * lat;
    TateElement ainv = expand_inverse_monic(a, W);
    TateElement arg = ainv.scaled(pi_bar(F, W))
                          .scaled(LaurentSeries::theta_pow(F, j))
                          .truncated(N);
    return exp_carlitz(arg, N);
}

// --- zeta values --------------------------------------------------------------

struct ZetaRequest {
    long long n = 1;        // exponent
    int s = 0;              // t-variable count
    Exp N = 0;              // target precision, lattice units
    std::vector<int> eval;  // optional k_i: evaluate at t_i = theta^{q^{k_i}}
    long long budget = 2'000'000;
};

struct ZetaPlan {
    long long n_eff = 1;  // n - sum q^{k_i} (n when no evaluation)
    int d_max_naive = 0;   // naive valuation bound: max d with n d < N (theta units)
    int d_enum = 0;       // degrees actually enumerated
    long long terms = 0;  // sum_{d <= d_enum} q^d
};

// Degree-d blocks with (n_eff+1) d >= N/lat + cover are identically 0 mod
// theta^{-N}: a^{-n} mod theta^{-N} sees only the top N/lat - n d - 1
// coefficients of a, and summing over any coefficient engaged by neither
// those nor the <= cover t-factors multiplies the block by q = 0.
inline ZetaPlan zeta_plan(const Field* F, const ZetaRequest& req) {
    int lat = F->lattice_den();
    if (!req.eval.empty() && static_cast<int>(req.eval.size()) != req.s)
        throw Error("zeta: evaluation vector must assign every t-variable");
    ZetaPlan plan;
    plan.n_eff = req.n;
    for (int k : req.eval) {
        if (k < 0) throw Error("zeta: evaluation exponents k_i must be non-negative");
        long long qk = 1;
        for (int i = 0; i < k; ++i) qk *= F->q();
        plan.n_eff -= qk;
    }
    if (plan.n_eff < 1)
        throw DomainError("zeta: evaluation weight sum q^{k_i} must stay below n");
    int cover = req.eval.empty() ? req.s : 0;
    plan.d_max_naive = -1;
    plan.d_enum = -1;
    plan.terms = 0;
    long long qd = 1;
    for (int d = 0;; ++d) {
        bool in_naive = req.n * static_cast<Exp>(d) * lat < req.N;
        Exp R = ceil_div(req.N - plan.n_eff * static_cast<Exp>(d) * lat, lat);
        bool enumerate = R >= 1 && static_cast<Exp>(d) - R + 1 <= cover;
        if (in_naive) plan.d_max_naive = d;
        if (enumerate) {
            plan.d_enum = d;
            plan.terms += qd;
        }
        if (!in_naive && !enumerate) break;
        if (qd > (4LL << 60) / F->q()) break;
        qd *= F->q();
    }
    return plan;
}

namespace detail {

// relative coefficients of a^{-1} to depth R: a = theta^d(1 + u)
inline void monic_inverse_rel(const Field* F, const std::vector<uint16_t>& c, Exp R,
                              std::vector<uint16_t>& w) {
    int d = static_cast<int>(c.size()) - 1;
    w.assign(static_cast<size_t>(R), 0);
    w[0] = 1;
    for (Exp k = 1; k < R; ++k) {
        uint16_t acc = 0;
        for (Exp i = 1; i <= k && i <= d; ++i) {
            uint16_t ci = c[static_cast<size_t>(d - i)];
            if (ci != 0) acc = F->add(acc, F->mul(ci, w[static_cast<size_t>(k - i)]));
        }
        w[static_cast<size_t>(k)] = F->neg(acc);
    }
}

inline void series_pow_rel(const Field* F, const std::vector<uint16_t>& w, long long n,
                           std::vector<uint16_t>& out) {
    size_t R = w.size();
    out.assign(R, 0);
    out[0] = 1;
    std::vector<uint16_t> tmp(R);
    for (long long k = 0; k < n; ++k) {
        std::fill(tmp.begin(), tmp.end(), 0);
        for (size_t i = 0; i < R; ++i) {
            if (out[i] == 0) continue;
            for (size_t j = 0; i + j < R; ++j)
                if (w[j] != 0) tmp[i + j] = F->add(tmp[i + j], F->mul(out[i], w[j]));
        }
        out.swap(tmp);
    }
}

}  // namespace detail

// Partial sum of zeta_A(n; s) = sum_{a monic} a^{-n} a(t_1)...a(t_s), exact
// mod theta^{-N}.  With an evaluation vector, substitution happens per
// summand by coefficient spreading a(theta^{q^k}) = sum c_m theta^{m q^k}
// and the result is the interpolated classical value (t-free).
inline TateElement zeta(const Field* F, const ZetaRequest& req) {
    int lat = F->lattice_den();
    ZetaPlan plan = zeta_plan(F, req);
    if (plan.terms > req.budget)
        throw BudgetError("zeta: enumeration of " + std::to_string(plan.terms) +
                              " terms exceeds budget " + std::to_string(req.budget),
                          plan.terms);
    bool has_eval = !req.eval.empty();
    int s_out = has_eval ? 0 : req.s;
    std::map<TateElement::Key, std::map<Exp, uint16_t>> raw;
    std::vector<uint16_t> w, u, tmp;
    for (int d = 0; d <= plan.d_enum; ++d) {
        Exp R = ceil_div(req.N - plan.n_eff * static_cast<Exp>(d) * lat, lat);
        if (R < 1) continue;
        Exp base = plan.n_eff * static_cast<Exp>(d) * lat;
        std::map<TateElement::Key, std::vector<uint16_t>> blocks;
        for_each_monic(*F, d, [&](const std::vector<uint16_t>& c) {
            detail::monic_inverse_rel(F, c, R, w);
            if (req.n == 1) u = w;
            else detail::series_pow_rel(F, w, req.n, u);
            if (has_eval) {
                // B = prod_i a(theta^{q^{k_i}}): dense, B[m] multiplies theta^{dQ-m}
                std::vector<uint16_t> B(1, 1);
                for (int k : req.eval) {
                    long long qk = 1;
                    for (int i = 0; i < k; ++i) qk *= F->q();
                    std::vector<uint16_t> nb(B.size() + static_cast<size_t>(d) * qk, 0);
                    for (size_t m = 0; m <= static_cast<size_t>(d); ++m) {
                        if (c[m] == 0) continue;
                        size_t off = (static_cast<size_t>(d) - m) * static_cast<size_t>(qk);
                        for (size_t i = 0; i < B.size(); ++i)
                            if (B[i] != 0) nb[i + off] = F->add(nb[i + off], F->mul(B[i], c[m]));
                    }
                    B.swap(nb);
                }
                auto& blk = blocks[TateElement::Key{}];
                if (blk.empty()) blk.assign(static_cast<size_t>(R), 0);
                for (size_t i = 0; i < u.size(); ++i) {
                    if (u[i] == 0) continue;
                    for (size_t m = 0; m < B.size() && i + m < static_cast<size_t>(R); ++m)
                        if (B[m] != 0)
                            blk[i + m] = F->add(blk[i + m], F->mul(u[i], B[m]));
                }
            } else if (req.s == 0) {
                auto& blk = blocks[TateElement::Key{}];
                if (blk.empty()) blk.assign(static_cast<size_t>(R), 0);
                for (size_t i = 0; i < u.size(); ++i)
                    if (u[i] != 0) blk[i] = F->add(blk[i], u[i]);
            } else {
                // outer product over s variables of the coefficient picks
                TateElement::Key key(static_cast<size_t>(req.s), 0);
                std::function<void(int, uint16_t)> rec = [&](int var, uint16_t cprod) {
                    if (var == req.s) {
                        auto& blk = blocks[key];
                        if (blk.empty()) blk.assign(static_cast<size_t>(R), 0);
                        for (size_t i = 0; i < u.size(); ++i)
                            if (u[i] != 0) blk[i] = F->add(blk[i], F->mul(u[i], cprod));
                        return;
                    }
                    for (int m = 0; m <= d; ++m) {
                        uint16_t cm = c[static_cast<size_t>(m)];
                        if (cm == 0) continue;
                        key[static_cast<size_t>(var)] = m;
                        rec(var + 1, cm == 1 ? cprod : F->mul(cprod, cm));
                    }
                };
                rec(0, 1);
            }
        });
        for (auto& [key, blk] : blocks) {
            auto& dst = raw[key];
            for (size_t j = 0; j < blk.size(); ++j) {
                if (blk[j] == 0) continue;
                Exp ex = base + static_cast<Exp>(j) * lat;
                auto it = dst.find(ex);
                uint16_t v2 = F->add(it == dst.end() ? 0 : it->second, blk[j]);
                if (v2 == 0) { if (it != dst.end()) dst.erase(it); }
                else dst[ex] = v2;
            }
        }
    }
    TateElement out(F, s_out, req.N);
    for (auto& [key, m] : raw) {
        LaurentSeries c(F, req.N);
        for (auto& [e, x] : m) c.set_term(e, x);
        if (!c.is_zero_at_prec()) out.set_term(key, c);
    }
    return out;
}

// --- the generalized Carlitz identity ------------------------------------------

struct Theorem5Report {
    int s = 0;
    Exp checked_prec = 0;
    std::string status;  // verified | failed | inconclusive
    bool polynomial = false;
    MPoly P;                 // recovered P_s when polynomial
    bool P_zero = false;
    bool expect_P_zero = false;  // s ≡ 1 mod (q-1), s > 1
    std::optional<MPoly> B;  // recovered B_s in the P_s = 0 regime
    std::optional<std::string> first_discrepancy;
    TateElement h;           // exp_C(zeta ω_s)/ω_s, the witness
};

inline Theorem5Report verify_theorem5(const Field* F, int s, Exp N, long long budget) {
    int lat = F->lattice_den();
    Theorem5Report rep;
    rep.s = s;
    rep.expect_P_zero = (s > 1) && ((s - 1) % (F->q() - 1) == 0);
    for (Exp pad = 2; pad <= 14; pad += 6) {
        Exp W = N + pad * lat + 2 * s;
        ZetaRequest zr;
        zr.n = 1;
        zr.s = s;
        zr.N = W;
        zr.budget = budget;
        TateElement z = zeta(F, zr);
        TateElement ws = omega_product(F, W, s);
        TateElement arg = z * ws;
        TateElement u = exp_carlitz(arg, pmin(arg.prec(), W));
        TateElement h = u * omega_product_inverse(F, W, s);
        if (h.prec() < N) continue;
        rep.h = h.truncated(N);
        rep.checked_prec = N;
        auto rec = rep.h.recover_polynomial(N);
        rep.polynomial = rec.has_value();
        if (rec) {
            rep.P = *rec;
            rep.P_zero = rec->is_zero();
            rep.status = "verified";
        } else {
            rep.status = "failed";
            for (auto& [k, c] : rep.h.terms())
                for (auto& [e, x] : c.terms())
                    if ((e > 0 || e % lat != 0 || !F->in_fq(x)) && !rep.first_discrepancy)
                        rep.first_discrepancy = frac_string(e, lat);
        }
        if (rep.polynomial && rep.expect_P_zero && rep.P_zero) {
            // recover B_s = zeta(1;s) ω_s / pi_bar as a polynomial
            LaurentSeries pb = pi_bar(F, W + 2 * F->q());
            TateElement Bh = arg.scaled(pb.invert());
            auto Brec = Bh.truncated(N).recover_polynomial(pmin(Bh.prec(), N));
            if (Brec && !Brec->is_zero()) rep.B = *Brec;
            else rep.status = Brec ? "failed" : "inconclusive";
        }
        return rep;
    }
    rep.status = "inconclusive";
    rep.checked_prec = 0;
    return rep;
}

// --- Euler-Carlitz rational reconstruction --------------------------------------

struct EulerCarlitzReport {
    long long k = 1;
    Exp checked_prec = 0;
    std::string status;  // verified | failed | inconclusive
    std::optional<RationalFunction> ratio;  // zeta_A(k(q-1)) / pi_bar^{k(q-1)}
};

// Pade-type reconstruction of a theta-only Laurent series as num/den with
// re-expansion check; integral-lattice series with F_q coefficients only.
inline std::optional<RationalFunction> rational_reconstruct(const Field* F,
                                                            const LaurentSeries& r) {
    int lat = F->lattice_den();
    // an empty window carries no information: 0 mod theta^{-N} does not
    // certify the rational function 0
    if (r.is_zero_at_prec()) return std::nullopt;
    Exp Nl = r.prec();
    if (Nl >= kExact) return std::nullopt;
    long long depth = Nl / lat;  // theta coefficients r_j, j < depth
    auto coeff_at = [&](long long j) -> uint16_t { return r.coeff(j * lat); };
    for (auto& [e, c] : r.terms())
        if (e % lat != 0 || !F->in_fq(c)) return std::nullopt;
    long long vth = r.valuation().value() / lat;
    for (long long D = std::max(0LL, vth); 2 * D + 2 <= depth; ++D) {
        // unknowns b_0..b_D; require (den*r) free of theta^{-j}, j = 1..J
        long long J = depth - D - 1;
        if (J < D + 1) continue;
        std::vector<std::vector<uint16_t>> M;  // J x (D+1)
        for (long long j = 1; j <= J; ++j) {
            std::vector<uint16_t> row(static_cast<size_t>(D) + 1, 0);
            for (long long i = 0; i <= D; ++i) row[static_cast<size_t>(i)] = coeff_at(j + i);
            M.push_back(std::move(row));
        }
        // Gaussian elimination, find nonzero kernel vector
        size_t cols = static_cast<size_t>(D) + 1;
        std::vector<long long> pivot_of_col(cols, -1);
        size_t rank = 0;
        for (size_t col = 0; col < cols && rank < M.size(); ++col) {
            size_t sel = M.size();
            for (size_t rr = rank; rr < M.size(); ++rr)
                if (M[rr][col] != 0) { sel = rr; break; }
            if (sel == M.size()) continue;
            std::swap(M[rank], M[sel]);
            uint16_t inv = F->inv(M[rank][col]);
            for (size_t cc = 0; cc < cols; ++cc) M[rank][cc] = F->mul(M[rank][cc], inv);
            for (size_t rr = 0; rr < M.size(); ++rr) {
                if (rr == rank || M[rr][col] == 0) continue;
                uint16_t f = M[rr][col];
                for (size_t cc = 0; cc < cols; ++cc)
                    M[rr][cc] = F->sub(M[rr][cc], F->mul(f, M[rank][cc]));
            }
            pivot_of_col[col] = static_cast<long long>(rank);
            ++rank;
        }
        if (rank == cols) continue;  // only trivial kernel
        // free column -> kernel vector
        std::vector<uint16_t> b(cols, 0);
        size_t free_col = 0;
        for (size_t col = 0; col < cols; ++col)
            if (pivot_of_col[col] < 0) { free_col = col; break; }
        b[free_col] = 1;
        for (size_t col = 0; col < cols; ++col)
            if (pivot_of_col[col] >= 0)
                b[col] = F->neg(M[static_cast<size_t>(pivot_of_col[col])][free_col]);
        std::vector<uint16_t> den(b.begin(), b.end());
        den = detail::uni_trim(den);
        if (den.empty()) continue;
        // num = polynomial part of den * r
        std::vector<uint16_t> num;
        for (long long kq = 0; kq <= D - vth; ++kq) {  // theta^kq coefficients
            uint16_t acc = 0;
            for (long long i = 0; i <= D; ++i)
                if (i - kq >= vth) acc = F->add(acc, F->mul(b[static_cast<size_t>(i)], coeff_at(i - kq)));
            num.push_back(acc);
        }
        num = detail::uni_trim(num);
        RationalFunction cand(MPoly::from_theta_coeffs(F, 0, num),
                              MPoly::from_theta_coeffs(F, 0, den));
        // re-expansion check over the full known window
        LaurentSeries back = expand_rational_theta(F, cand.num().theta_coeffs(),
                                                   cand.den().theta_coeffs(), Nl);
        if (LaurentSeries::eq_mod(back, r, Nl)) return cand;
    }
    return std::nullopt;
}

inline EulerCarlitzReport euler_carlitz_check(const Field* F, long long k, Exp N,
                                              long long budget) {
    EulerCarlitzReport rep;
    rep.k = k;
    long long m = k * (F->q() - 1);
    Exp W = N + (m * F->q()) + 2 * F->lattice_den();
    ZetaRequest zr;
    zr.n = m;
    zr.N = W;
    zr.budget = budget;
    LaurentSeries z = zeta(F, zr).scalar_part();
    LaurentSeries pm = pi_bar(F, W + m * F->q()).pow(m);
    LaurentSeries ratio = (z * pm.invert()).truncated(N);
    rep.checked_prec = ratio.prec();
    auto rec = rational_reconstruct(F, ratio);
    if (!rec) {
        rep.status = "inconclusive";
        return rep;
    }
    rep.ratio = *rec;
    rep.status = "verified";
    return rep;
}

// --- irreducible enumeration (Euler product checks) ---------------------------

inline bool monic_is_irreducible(const Field* F, const std::vector<uint16_t>& c) {
    int d = static_cast<int>(c.size()) - 1;
    if (d <= 0) return false;
    if (d == 1) return true;
    std::vector<uint16_t> cc(c.begin(), c.end());
    for (int dd = 1; 2 * dd <= d; ++dd) {
        bool reducible = false;
        for_each_monic(*F, dd, [&](const std::vector<uint16_t>& g) {
            if (reducible) return;
            if (detail::uni_mod(F, cc, std::vector<uint16_t>(g.begin(), g.end())).empty())
                reducible = true;
        });
        if (reducible) return false;
    }
    return true;
}

}  // namespace carlitz
