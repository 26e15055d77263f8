#include <catch2/catch.hpp>
#include <random>

#include "carlitz/json_io.hpp"
#include "carlitz/special_values.hpp"

using namespace carlitz;

TEST_CASE("field element strings round-trip") {
    for (auto [p, e] : {std::pair{2, 1}, {3, 1}, {5, 1}, {2, 2}}) {
        Field F(p, e);
        for (int x = 0; x < F.size(); ++x) {
            auto s = F.to_string(static_cast<uint16_t>(x));
            INFO("p=" << p << " e=" << e << " x=" << x << " str=" << s);
            REQUIRE(F.from_string(s) == x);
        }
    }
}

TEST_CASE("series json round-trips and is deterministic") {
    Field F(3, 1);
    std::mt19937_64 rng(2718);
    std::uniform_int_distribution<Exp> de(-8, 23);
    std::uniform_int_distribution<int> dc(1, F.size() - 1);
    for (int trial = 0; trial < 40; ++trial) {
        LaurentSeries a(&F, 24);
        for (int i = 0; i < 6; ++i)
            a = a + LaurentSeries::monomial(&F, de(rng), static_cast<uint16_t>(dc(rng)), 24);
        auto j = to_json(a);
        auto b = series_from_json(&F, j);
        REQUIRE(LaurentSeries::eq_mod(a, b, 24));
        REQUIRE(b.prec() == a.prec());
        REQUIRE(to_json(b).dump() == j.dump());
    }
}

TEST_CASE("fractional exponents serialize exactly") {
    Field F(3, 1);
    auto pb = pi_bar(&F, 21);
    auto j = to_json(pb);
    REQUIRE(j["terms"][0]["exp"] == "-3/2");
    auto back = series_from_json(&F, j);
    REQUIRE(LaurentSeries::eq_mod(pb, back, 21));
}

TEST_CASE("tate json round-trips") {
    Field F(3, 1);
    auto om = omega(&F, 16, 2, 1) * omega(&F, 16, 2, 2);
    auto j = to_json(om);
    auto back = tate_from_json(&F, j);
    REQUIRE(TateElement::eq_mod(om, back, pmin(om.prec(), back.prec())));
    REQUIRE(to_json(back).dump() == j.dump());
    REQUIRE(j["s"] == 2);
    REQUIRE(j["degree_cap"].get<int>() >= 1);
}

TEST_CASE("degree cap is enforced on input") {
    Field F(3, 1);
    json j;
    j["s"] = 1;
    j["degree_cap"] = 1;
    j["lattice_den"] = 2;
    j["precision"] = "8";
    json term;
    term["t_exp"] = std::vector<int>{3};
    json coeff;
    coeff["lattice_den"] = 2;
    coeff["precision"] = "8";
    coeff["terms"] = json::array({{{"coeff", "1"}, {"exp", "0"}}});
    term["coeff"] = coeff;
    j["terms"] = json::array({term});
    REQUIRE_THROWS_AS(tate_from_json(&F, j), Error);
}

TEST_CASE("solve reports serialize with per-step booleans") {
    Field F(3, 1);
    int lat = F.lattice_den();
    auto g = TateElement::from_series(LaurentSeries::monomial(&F, 2 * lat, 1), 1);
    auto rep = solve_tau_inverse(g, 10 * lat);
    auto j = to_json(rep, lat);
    REQUIRE(j["verified"] == true);
    REQUIRE(j.contains("solution"));
    REQUIRE(j.contains("precision"));
    auto one = RationalFunction::constant(&F, 1, 1);
    auto pl = solve_polylog_system({1}, {one}, 8 * lat);
    auto jp = to_json(pl, lat);
    REQUIRE(jp["verified"] == true);
    REQUIRE(jp["steps"].size() == 3);  // (0,0), (1,0), (1,1)
    for (auto& s : jp["steps"]) REQUIRE(s["verified"] == true);
}

TEST_CASE("polynomial parser round-trips its own rendering") {
    Field F(3, 1);
    std::mt19937_64 rng(99);
    std::uniform_int_distribution<int> dd(0, 3);
    std::uniform_int_distribution<int> dc(0, 2);
    for (int s : {0, 1, 2}) {
        for (int trial = 0; trial < 20; ++trial) {
            MPoly P(&F, s);
            for (int i = 0; i < 4; ++i) {
                MPoly::Key k(static_cast<size_t>(s) + 1, 0);
                for (auto& e : k) e = dd(rng);
                P.set(k, static_cast<uint16_t>(dc(rng)));
            }
            if (P.is_zero()) continue;
            auto back = parse_poly(&F, s, P.str());
            REQUIRE(back == P);
        }
    }
}

TEST_CASE("field config serialization") {
    Field F(3, 2);
    auto j = field_config_json(F);
    REQUIRE(j["p"] == 3);
    REQUIRE(j["e"] == 2);
    REQUIRE(j["q"] == 9);
    REQUIRE(j["modulus_p"].size() == 3);
    REQUIRE(F.from_string(j["zeta_ram"].get<std::string>()) == F.zeta_ram());
}
