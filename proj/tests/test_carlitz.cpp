#include <catch2/catch.hpp>
#include <random>

#include "carlitz/diff_solve.hpp"

using namespace carlitz;

namespace {

LaurentSeries direct_factorial(const Field& F, int n) {
    // independent oracle: literal product over all monic degree-n polynomials
    LaurentSeries d = LaurentSeries::one(&F);
    for_each_monic(F, n, [&](const std::vector<uint16_t>& c) {
        d = d * LaurentSeries::from_poly(&F, c);
    });
    return d;
}

TateElement random_disk_element(const Field& F, std::mt19937_64& rng, Exp prec, Exp vmin = 0) {
    TateElement r(&F, 1, prec);
    std::uniform_int_distribution<Exp> de(vmin, vmin + 6);
    std::uniform_int_distribution<int> dc(1, F.size() - 1);
    std::uniform_int_distribution<int> dt(0, 2);
    for (int i = 0; i < 4; ++i) {
        TateElement::Key k = {dt(rng)};
        r.set_term(k, r.coeff(k) +
                          LaurentSeries::monomial(&F, de(rng), static_cast<uint16_t>(dc(rng)), prec));
    }
    return r;
}

}  // namespace

TEST_CASE("carlitz factorials d_n") {
    SECTION("d_0 = 1, d_1 = theta^3 - theta at q=3") {
        Field F(3, 1);
        REQUIRE(LaurentSeries::eq_mod(factorial_d(&F, 0).truncated(10),
                                      LaurentSeries::one(&F).truncated(10), 10));
        auto d1 = factorial_d(&F, 1);
        auto expect = LaurentSeries::theta_pow(&F, 3) - LaurentSeries::theta_pow(&F, 1);
        REQUIRE(LaurentSeries::eq_mod(d1.truncated(40), expect.truncated(40), 40));
    }
    SECTION("recursion agrees with the direct product for n <= 2, q in {2,3}") {
        for (int q : {2, 3}) {
            Field F(q, 1);
            for (int n = 0; n <= 2; ++n) {
                auto a = factorial_d(&F, n), b = direct_factorial(F, n);
                REQUIRE(LaurentSeries::eq_mod(a.truncated(200), b.truncated(200), 200));
            }
        }
    }
    SECTION("v(d_n) = -n q^n for n <= 4, q in {2,3}") {
        for (int q : {2, 3}) {
            Field F(q, 1);
            long long qn = 1;
            for (int n = 0; n <= 4; ++n) {
                auto d = factorial_d(&F, n);
                REQUIRE(d.valuation().value() ==
                        -static_cast<Exp>(n) * qn * F.lattice_den());
                qn *= q;
            }
        }
    }
}

TEST_CASE("carlitz action") {
    Field F(3, 1);
    SECTION("C_theta(t - theta) = t(theta+1) - (theta^2 + theta^q)") {
        auto f = TateElement::from_mpoly(parse_poly(&F, 1, "t-theta"));
        auto got = carlitz_action(MPoly::theta(&F, 1), f);
        auto expect = TateElement::from_mpoly(
            parse_poly(&F, 1, "t*theta+t-theta^2-theta^3"));
        REQUIRE(TateElement::eq_mod(got.truncated(60), expect.truncated(60), 60));
    }
    SECTION("C_1 is the identity") {
        std::mt19937_64 rng(7);
        auto f = random_disk_element(F, rng, 20);
        auto got = carlitz_action(MPoly::one(&F, 1), f);
        Exp n = pmin(got.prec(), f.prec());
        REQUIRE(TateElement::eq_mod(got.truncated(n), f.truncated(n), n));
    }
    SECTION("ring action composition: C_{theta^2} = C_theta . C_theta") {
        std::mt19937_64 rng(8);
        for (int i = 0; i < 10; ++i) {
            auto f = random_disk_element(F, rng, 30);
            auto a = carlitz_action(MPoly::theta(&F, 1, 2), f);
            auto b = carlitz_action(MPoly::theta(&F, 1), carlitz_action(MPoly::theta(&F, 1), f));
            Exp n = pmin(a.prec(), b.prec());
            REQUIRE(TateElement::eq_mod(a.truncated(n), b.truncated(n), n));
        }
    }
    SECTION("explicit skew form agrees with Horner evaluation") {
        std::mt19937_64 rng(9);
        auto a = parse_poly(&F, 1, "theta^2+t*theta+2");
        auto sk = carlitz_skew(a);
        REQUIRE(sk.c.size() == 3);  // coefficients of tau^0..tau^2
        for (int i = 0; i < 5; ++i) {
            auto f = random_disk_element(F, rng, 30);
            auto x = sk.evaluate(f);
            auto y = carlitz_action(a, f);
            Exp n = pmin(x.prec(), y.prec());
            REQUIRE(TateElement::eq_mod(x.truncated(n), y.truncated(n), n));
        }
    }
}

TEST_CASE("carlitz exponential") {
    Field F(3, 1);
    int lat = F.lattice_den();
    SECTION("exp(0) = 0") {
        auto e = exp_carlitz(TateElement::zero(&F, 0, 20), 20);
        REQUIRE(e.is_zero_at_prec());
    }
    SECTION("two-term oracle at theta^{-2}") {
        Exp N = 16 * lat;
        auto f = LaurentSeries::monomial(&F, 2 * lat, 1, N);
        auto e = exp_carlitz(f, N);
        // oracle: f + d_1^{-1} tau(f) + d_2^{-1} tau^2(f), truncated
        auto d1inv = factorial_d(&F, 1).invert_to(N);
        auto oracle = f + d1inv * f.mu(1);
        auto d2inv = factorial_d(&F, 2).invert_to(N + 2 * 9 * lat);
        oracle = oracle + d2inv * f.mu(2);
        REQUIRE(e.coeff(2 * lat) == 1);
        REQUIRE(e.coeff(9 * lat) == 1);
        REQUIRE(LaurentSeries::eq_mod(e, oracle.truncated(e.prec()), e.prec()));
    }
    SECTION("insufficient input precision is rejected") {
        auto f = LaurentSeries::monomial(&F, 2, 1, 10);
        REQUIRE_THROWS_AS(exp_carlitz(f, 20), DomainError);
    }
    SECTION("truncation contract: deeper inputs never change coefficients below N") {
        std::mt19937_64 rng(14);
        std::uniform_int_distribution<Exp> de(-3, 20);
        std::uniform_int_distribution<int> dc(1, F.size() - 1);
        for (int i = 0; i < 20; ++i) {
            Exp N = 20;
            LaurentSeries f2(&F, N + 16);
            for (int k = 0; k < 5; ++k)
                f2 = f2 + LaurentSeries::monomial(&F, de(rng), static_cast<uint16_t>(dc(rng)),
                                                  N + 16);
            auto f1 = f2.truncated(N);
            auto e1 = exp_carlitz(f1, N);
            auto e2 = exp_carlitz(f2, N + 16);
            REQUIRE(e1.prec() == N);
            REQUIRE(LaurentSeries::eq_mod(e2.truncated(N), e1, N));
            if (f1.is_zero_at_prec() || f1.valuation().value() > -3) {
                auto l1 = log_carlitz(f1 + LaurentSeries::one(&F).truncated(N), N);
                auto l2 = log_carlitz(f2 + LaurentSeries::one(&F).truncated(N + 16), N + 16);
                REQUIRE(LaurentSeries::eq_mod(l2.truncated(N), l1, N));
            }
        }
    }
    SECTION("functional equation exp(a f) = C_a(exp f)") {
        std::mt19937_64 rng(10);
        for (auto src : {"theta", "theta+1", "theta^2"}) {
            MPoly a = parse_poly(&F, 1, src);
            for (int i = 0; i < 5; ++i) {
                auto f = random_disk_element(F, rng, 40);
                auto af = f.scaled(a);
                auto lhs = exp_carlitz(af, pmin(af.prec(), static_cast<Exp>(30)));
                auto rhs = carlitz_action(a, exp_carlitz(f, 40));
                Exp n = pmin(lhs.prec(), rhs.prec());
                REQUIRE(TateElement::eq_mod(lhs.truncated(n), rhs.truncated(n), n));
            }
        }
    }
}

TEST_CASE("kernel of the exponential") {
    Field F(3, 1);
    int lat = F.lattice_den();
    Exp N = 16 * lat;
    auto pb = pi_bar(&F, N + 3 * 4 * lat);
    for (auto src : {"1", "theta", "theta^2+1", "t", "(t+1)*theta"}) {
        auto h = TateElement::from_mpoly(parse_poly(&F, 1, src));
        auto arg = h.scaled(pb);
        auto e = exp_carlitz(arg, pmin(arg.prec(), N));
        INFO("h = " << src);
        REQUIRE(e.is_zero_at_prec());
        REQUIRE(e.prec() >= N);
    }
}

TEST_CASE("weierstrass partial products converge to exp") {
    Field F(3, 1);
    int lat = F.lattice_den();
    Exp N = 40 * lat;
    auto pb = pi_bar(&F, N + 12 * lat);
    auto z = LaurentSeries::monomial(&F, 1 * lat, 1, N) +
             LaurentSeries::monomial(&F, 2 * lat, 2, N);  // v > 0
    auto ez = exp_carlitz(z, N);
    Exp last_gap = -1000;
    for (int D = 0; D <= 2; ++D) {
        // partial product over lambda = pi a, a nonzero of degree <= D
        auto prod = z;
        for (int d = 0; d <= D; ++d)
            for_each_monic(F, d, [&](const std::vector<uint16_t>& c) {
                for (uint16_t u = 1; u < F.q(); ++u) {  // all nonzero a = u * monic
                    auto a = LaurentSeries::from_poly(&F, c).scaled(u);
                    auto lam = (pb * a).truncated(N + 6 * lat);
                    prod = prod * (LaurentSeries::one(&F) - z * lam.invert());
                }
            });
        auto diff = ez - prod.truncated(ez.prec());
        Exp gap = diff.is_zero_at_prec() ? diff.prec() : diff.valuation().value();
        REQUIRE(gap > last_gap);
        last_gap = gap;
    }
}

TEST_CASE("carlitz logarithm") {
    Field F(3, 1);
    int lat = F.lattice_den();
    SECTION("log(0) = 0, log of 1 round-trips through exp") {
        REQUIRE(log_carlitz(TateElement::zero(&F, 0, 20), 20).is_zero_at_prec());
        Exp N = 12 * lat;
        auto one = LaurentSeries::one(&F).truncated(N);
        auto l = log_carlitz(one, N);
        auto back = exp_carlitz(l, l.prec());
        REQUIRE(LaurentSeries::eq_mod(back, LaurentSeries::one(&F).truncated(back.prec()),
                                      back.prec()));
    }
    SECTION("log . exp = id on the disk") {
        std::mt19937_64 rng(11);
        for (int i = 0; i < 8; ++i) {
            auto f = random_disk_element(F, rng, 30);
            auto e = exp_carlitz(f, 30);
            auto l = log_carlitz(e, e.prec());
            Exp n = pmin(l.prec(), static_cast<Exp>(30));
            REQUIRE(TateElement::eq_mod(l.truncated(n), f.truncated(n), n));
        }
    }
    SECTION("exp . log = id") {
        std::mt19937_64 rng(12);
        for (int i = 0; i < 8; ++i) {
            auto g = random_disk_element(F, rng, 30);
            auto l = log_carlitz(g, 30);
            auto e = exp_carlitz(l, l.prec());
            Exp n = pmin(e.prec(), static_cast<Exp>(30));
            REQUIRE(TateElement::eq_mod(e.truncated(n), g.truncated(n), n));
        }
    }
    SECTION("outside the disk is rejected") {
        auto g = TateElement::from_series(LaurentSeries::monomial(&F, -4, 1, 20), 0);
        REQUIRE_THROWS_AS(log_carlitz(g, 16), DomainError);
    }
    SECTION("exp is an isometry on the disk v > -q/(q-1), sampled") {
        std::mt19937_64 rng(13);
        std::uniform_int_distribution<Exp> de(-2, 6);  // > -3 lattice units
        std::uniform_int_distribution<int> dc(1, F.size() - 1);
        for (int i = 0; i < 40; ++i) {
            auto f = LaurentSeries::monomial(&F, de(rng), static_cast<uint16_t>(dc(rng)), 30) +
                     LaurentSeries::monomial(&F, de(rng) + 3, static_cast<uint16_t>(dc(rng)), 30);
            if (f.is_zero_at_prec()) continue;
            auto e = exp_carlitz(f, 30);
            REQUIRE(e.valuation().value() == f.valuation().value());
        }
    }
}

TEST_CASE("torsion points") {
    Field F(3, 1);
    int lat = F.lattice_den();
    Exp N = 14 * lat;
    SECTION("exp(pi/theta) generates Ker C_theta") {
        auto x = torsion_point(MPoly::theta(&F, 1), 0, N);
        auto killed = carlitz_action(MPoly::theta(&F, 1), x);
        REQUIRE(killed.is_zero_at_prec());
        REQUIRE(killed.prec() >= N - 3 * lat);
        REQUIRE(!x.is_zero_at_prec());
    }
    SECTION("a = theta - t gives the omega torsion point") {
        auto a = parse_poly(&F, 1, "theta-t");
        auto x = torsion_point(a, 0, N);
        auto killed = carlitz_action(a, x);
        REQUIRE(killed.is_zero_at_prec());
    }
    SECTION("a = theta^2: both generators killed; j=1 telescopes to exp(pi/theta)") {
        auto a2 = MPoly::theta(&F, 1, 2);
        for (int j : {0, 1}) {
            auto x = torsion_point(a2, j, N);
            REQUIRE(carlitz_action(a2, x).is_zero_at_prec());
            if (j == 1) {
                auto y = torsion_point(MPoly::theta(&F, 1), 0, N);
                Exp n = pmin(x.prec(), y.prec());
                REQUIRE(TateElement::eq_mod(x.truncated(n), y.truncated(n), n));
            }
        }
    }
    SECTION("j out of range") {
        REQUIRE_THROWS_AS(torsion_point(MPoly::theta(&F, 1), 1, N), DomainError);
        REQUIRE_THROWS_AS(torsion_point(MPoly::theta(&F, 1), -1, N), DomainError);
    }
}
