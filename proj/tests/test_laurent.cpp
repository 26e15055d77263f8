#include <catch2/catch.hpp>
#include <random>

#include "carlitz/laurent.hpp"

using namespace carlitz;

namespace {

LaurentSeries random_series(const Field& F, std::mt19937_64& rng, Exp prec, int nterms = 6,
                            Exp lo = -6) {
    LaurentSeries r(&F, prec);
    std::uniform_int_distribution<Exp> de(lo, prec - 1);
    std::uniform_int_distribution<int> dc(1, F.size() - 1);
    for (int i = 0; i < nterms; ++i)
        r = r + LaurentSeries::monomial(&F, de(rng), static_cast<uint16_t>(dc(rng)), prec);
    return r;
}

}  // namespace

TEST_CASE("addition: identity, characteristic, precision rule") {
    Field F(3, 1);
    int lat = F.lattice_den();
    auto a = LaurentSeries::monomial(&F, 3, 2, 10 * lat);
    SECTION("a + 0 keeps min precision") {
        auto z = LaurentSeries::zero(&F, 4 * lat);
        auto s = a + z;
        REQUIRE(s.prec() == 4 * lat);
        REQUIRE(s.coeff(3) == 2);
    }
    SECTION("theta + 2*theta = 0 in characteristic 3") {
        auto th = LaurentSeries::theta_pow(&F, 1);
        auto s = th + th.scaled(2);
        REQUIRE(s.is_zero_at_prec());
        REQUIRE(s.exact());
    }
    SECTION("precision is the min of the operands") {
        // theta^{-1} known mod theta^{-5} plus theta^{-4} known mod theta^{-3}
        auto x = LaurentSeries::monomial(&F, 1 * lat, 1, 5 * lat);
        auto y = LaurentSeries::monomial(&F, 4 * lat, 1, 3 * lat);
        auto s = x + y;
        REQUIRE(s.prec() == 3 * lat);
        REQUIRE(s.coeff(1 * lat) == 1);
        REQUIRE(s.coeff(4 * lat) == 0);  // above precision, dropped
    }
}

TEST_CASE("multiplication: unit, inversion round-trip, valuation additivity") {
    Field F(3, 1);
    int lat = F.lattice_den();
    std::mt19937_64 rng(12345);
    SECTION("a * 1 = a") {
        auto a = random_series(F, rng, 8 * lat);
        auto p = a * LaurentSeries::one(&F);
        REQUIRE(LaurentSeries::eq_mod(p, a, p.prec()));
    }
    SECTION("(theta - theta^3) times its inverse expansion is 1") {
        auto a = (LaurentSeries::theta_pow(&F, 1) - LaurentSeries::theta_pow(&F, 3))
                     .truncated(20 * lat);
        auto b = a.invert();
        auto p = a * b;
        REQUIRE(p.coeff(0) == 1);
        auto one = LaurentSeries::one(&F).truncated(p.prec());
        REQUIRE(LaurentSeries::eq_mod(p, one, p.prec()));
    }
    SECTION("v(ab) = v(a) + v(b) on random samples") {
        for (int i = 0; i < 50; ++i) {
            auto a = random_series(F, rng, 9 * lat);
            auto b = random_series(F, rng, 9 * lat);
            if (a.is_zero_at_prec() || b.is_zero_at_prec()) continue;
            auto p = a * b;
            REQUIRE(p.valuation().value() == a.valuation().value() + b.valuation().value());
        }
    }
}

TEST_CASE("inversion") {
    Field F(3, 1);
    int lat = F.lattice_den();
    SECTION("invert(1) = 1") {
        auto one = LaurentSeries::one(&F).truncated(10 * lat);
        REQUIRE(LaurentSeries::eq_mod(one.invert(), LaurentSeries::one(&F), 10 * lat));
    }
    SECTION("invert(theta^3 - theta) is the odd geometric tail") {
        auto a = (LaurentSeries::theta_pow(&F, 3) - LaurentSeries::theta_pow(&F, 1))
                     .truncated(16 * lat);
        auto b = a.invert();
        REQUIRE(b.coeff(3 * lat) == 1);
        REQUIRE(b.coeff(4 * lat) == 0);
        REQUIRE(b.coeff(5 * lat) == 1);
        REQUIRE(b.coeff(7 * lat) == 1);
        REQUIRE(b.coeff(6 * lat) == 0);
    }
    SECTION("invert is an involution at working precision") {
        std::mt19937_64 rng(777);
        for (int i = 0; i < 30; ++i) {
            auto a = random_series(F, rng, 12 * lat, 5, -4);
            if (a.is_zero_at_prec()) continue;
            auto b = a.invert().invert();
            Exp n = pmin(a.prec(), b.prec());
            REQUIRE(LaurentSeries::eq_mod(a.truncated(n), b.truncated(n), n));
        }
    }
    SECTION("precision rule N - 2v") {
        auto a = LaurentSeries::monomial(&F, -4, 1, 10);  // v = -4, prec 10
        REQUIRE(a.invert().prec() == 10 - 2 * (-4));
    }
    SECTION("zero divisor rejected") {
        REQUIRE_THROWS_AS(LaurentSeries::zero(&F, 5).invert(), DomainError);
    }
}

TEST_CASE("mu on series") {
    Field F(3, 1);
    int lat = F.lattice_den();
    SECTION("mu(theta, 1) = theta^3") {
        auto m = LaurentSeries::theta_pow(&F, 1).mu(1);
        REQUIRE(LaurentSeries::eq_mod(m.truncated(50), LaurentSeries::theta_pow(&F, 3).truncated(50), 50));
    }
    SECTION("mu(theta^-1 + theta^-2, 1) = theta^-3 + theta^-6") {
        auto a = LaurentSeries::monomial(&F, 1 * lat, 1) + LaurentSeries::monomial(&F, 2 * lat, 1);
        auto m = a.mu(1);
        REQUIRE(m.coeff(3 * lat) == 1);
        REQUIRE(m.coeff(6 * lat) == 1);
        REQUIRE(m.terms().size() == 2);
    }
    SECTION("valuation scaling and ring morphism on random samples") {
        std::mt19937_64 rng(99);
        for (int i = 0; i < 30; ++i) {
            auto a = random_series(F, rng, 9 * lat);
            auto b = random_series(F, rng, 9 * lat);
            if (!a.is_zero_at_prec())
                REQUIRE(a.mu(1).valuation().value() == 3 * a.valuation().value());
            auto lhs = (a * b).mu(1);
            auto rhs = a.mu(1) * b.mu(1);
            Exp n = pmin(lhs.prec(), rhs.prec());
            REQUIRE(LaurentSeries::eq_mod(lhs.truncated(n), rhs.truncated(n), n));
            auto l2 = (a + b).mu(1), r2 = a.mu(1) + b.mu(1);
            REQUIRE(LaurentSeries::eq_mod(l2, r2, pmin(l2.prec(), r2.prec())));
        }
    }
    SECTION("negative m round-trips and rejects off-lattice input") {
        auto a = LaurentSeries::monomial(&F, 6, 2, 60);
        auto back = a.mu(1).mu(-1);
        REQUIRE(back.coeff(6) == 2);
        auto bad = LaurentSeries::monomial(&F, 1, 1, 60);
        REQUIRE_THROWS_AS(bad.mu(-1), DomainError);
    }
}

TEST_CASE("expand_rational at the infinite place") {
    Field F(3, 1);
    int lat = F.lattice_den();
    SECTION("1/theta") {
        auto r = expand_rational_theta(&F, {1}, {0, 1}, 8 * lat);
        REQUIRE(r.coeff(1 * lat) == 1);
        REQUIRE(r.terms().size() == 1);
    }
    SECTION("1/(theta^3 - theta) agrees with the inversion oracle") {
        std::vector<uint16_t> den = {0, 2, 0, 1};  // -theta + theta^3
        auto r = expand_rational_theta(&F, {1}, den, 8 * lat);
        auto oracle = LaurentSeries::from_poly(&F, den).truncated(16 * lat).invert();
        REQUIRE(LaurentSeries::eq_mod(r, oracle.truncated(8 * lat), 8 * lat));
    }
    SECTION("r * 1/r = 1") {
        std::vector<uint16_t> num = {1, 2, 1};
        std::vector<uint16_t> den = {2, 0, 0, 1};
        auto a = expand_rational_theta(&F, num, den, 10 * lat);
        auto b = expand_rational_theta(&F, den, num, 12 * lat);
        auto p = a * b;
        REQUIRE(LaurentSeries::eq_mod(p, LaurentSeries::one(&F).truncated(p.prec()), p.prec()));
    }
}

TEST_CASE("precision soundness: dual-precision runs agree below N") {
    Field F(3, 1);
    int lat = F.lattice_den();
    std::mt19937_64 rng(2024);
    Exp N = 8 * lat;
    for (int i = 0; i < 20; ++i) {
        // the same object truncated at two input precisions
        auto a2 = random_series(F, rng, N + 8 * lat, 8);
        auto b2 = random_series(F, rng, N + 8 * lat, 8);
        auto a1 = a2.truncated(N);
        auto b1 = b2.truncated(N);
        auto p1 = (a1 * b1) + a1.mu(1);
        auto p2 = (a2 * b2) + a2.mu(1);
        REQUIRE(p2.prec() >= p1.prec());
        REQUIRE(LaurentSeries::eq_mod(p2.truncated(p1.prec()), p1, p1.prec()));
        if (!a1.is_zero_at_prec()) {
            auto i1 = a1.invert(), i2 = a2.invert();
            REQUIRE(i2.prec() >= i1.prec());
            REQUIRE(LaurentSeries::eq_mod(i2.truncated(i1.prec()), i1, i1.prec()));
        }
    }
}

TEST_CASE("fractional lattice exponents") {
    Field F(3, 1);
    // theta^{1/2} squared is theta; lattice closure is structural (integer units)
    auto half = LaurentSeries::monomial(&F, -1, 1);
    auto sq = half * half;
    REQUIRE(sq.coeff(-2) == 1);
    REQUIRE(frac_string(-3, 2) == "-3/2");
    REQUIRE(frac_string(4, 2) == "2");
    REQUIRE(frac_string(0, 2) == "0");
}
