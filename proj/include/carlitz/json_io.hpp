#pragma once

// JSON (de)serialization for the shared series formats and reports.  Key
// order is alphabetical (nlohmann defaults), term order ascending, so dumps
// of equal values are byte-identical.

#include <json.hpp>

#include "carlitz/diff_solve.hpp"
#include "carlitz/mu_poly.hpp"

namespace carlitz {

using nlohmann::json;

// --- fraction strings ---------------------------------------------------------

inline Exp parse_frac(const std::string& s, int lat) {
    if (s == "inf") return kExact;
    auto slash = s.find('/');
    long long num = std::stoll(s.substr(0, slash));
    long long den = 1;
    if (slash != std::string::npos) den = std::stoll(s.substr(slash + 1));
    if (den <= 0 || lat % den != 0)
        throw Error("exponent denominator " + std::to_string(den) +
                    " does not divide the lattice denominator " + std::to_string(lat));
    return num * (lat / den);
}

// --- field elements -----------------------------------------------------------

inline uint16_t Field::from_string(const std::string& s) const {
    // inverse of to_string: sums of [digit][*][g^i][*h] terms
    if (s == "0") return 0;
    uint16_t acc = 0;
    size_t pos = 0;
    while (pos < s.size()) {
        size_t end = s.find('+', pos);
        if (end == std::string::npos) end = s.size();
        std::string term = s.substr(pos, end - pos);
        pos = end + 1;
        int coeff = 1, gdeg = 0, hdeg = 0;
        size_t i = 0;
        if (i < term.size() && std::isdigit(static_cast<unsigned char>(term[i]))) {
            size_t j = i;
            while (j < term.size() && std::isdigit(static_cast<unsigned char>(term[j]))) ++j;
            coeff = std::stoi(term.substr(i, j - i));
            i = j;
            if (i < term.size() && term[i] == '*') ++i;
        }
        while (i < term.size()) {
            if (term[i] == 'g') {
                ++i;
                gdeg = 1;
                if (i < term.size() && term[i] == '^') {
                    size_t j = ++i;
                    while (j < term.size() && std::isdigit(static_cast<unsigned char>(term[j]))) ++j;
                    gdeg = std::stoi(term.substr(i, j - i));
                    i = j;
                }
            } else if (term[i] == 'h') {
                ++i;
                hdeg = 1;
            } else if (term[i] == '*') {
                ++i;
            } else {
                throw Error("bad field element string: " + s);
            }
        }
        if (e_ == 1 && gdeg == 1) { hdeg = 1; gdeg = 0; }  // e=1 prints h as g
        // coeff * g^gdeg * h^hdeg
        uint16_t base = 1;
        if (gdeg > 0) {
            uint16_t g = static_cast<uint16_t>(p_);  // index p = generator g of F_q
            if (e_ == 1) throw Error("bad field element string (no g in a prime field): " + s);
            for (int k = 0; k < gdeg; ++k) base = mul(base, g);
        }
        if (hdeg > 0) base = mul(base, static_cast<uint16_t>(q_));  // index q = h
        acc = add(acc, mul(from_int(coeff), base));
    }
    return acc;
}

inline json field_config_json(const Field& F) {
    json j;
    j["p"] = F.p();
    j["e"] = F.e();
    j["q"] = F.q();
    j["modulus_p"] = F.modulus_e();
    j["modulus_q2"] = F.modulus_2();
    j["zeta_ram"] = F.to_string(F.zeta_ram());
    return j;
}

// --- series -------------------------------------------------------------------

inline json to_json(const LaurentSeries& a) {
    json terms = json::array();
    for (auto& [e, c] : a.terms()) {
        json t;
        t["exp"] = frac_string(e, a.lat());
        t["coeff"] = a.field()->to_string(c);
        terms.push_back(t);
    }
    json j;
    j["lattice_den"] = a.lat();
    j["precision"] = frac_string(a.prec(), a.lat());
    j["terms"] = terms;
    return j;
}

inline LaurentSeries series_from_json(const Field* F, const json& j) {
    int lat = F->lattice_den();
    if (j.at("lattice_den").get<int>() != lat)
        throw Error("series lattice_den does not match the field");
    LaurentSeries r(F, parse_frac(j.at("precision").get<std::string>(), lat));
    for (auto& t : j.at("terms"))
        r.set_term(parse_frac(t.at("exp").get<std::string>(), lat),
                   F->from_string(t.at("coeff").get<std::string>()));
    return r;
}

inline json to_json(const TateElement& f) {
    json terms = json::array();
    for (auto& [k, c] : f.terms()) {
        json t;
        t["coeff"] = to_json(c);
        t["t_exp"] = k;
        terms.push_back(t);
    }
    json j;
    j["degree_cap"] = f.degree_cap();
    j["lattice_den"] = f.lat();
    j["precision"] = frac_string(f.prec(), f.lat());
    j["s"] = f.vars();
    j["terms"] = terms;
    return j;
}

inline TateElement tate_from_json(const Field* F, const json& j) {
    int s = j.at("s").get<int>();
    TateElement r(F, s, parse_frac(j.at("precision").get<std::string>(), F->lattice_den()));
    int cap = j.value("degree_cap", std::numeric_limits<int>::max());
    for (auto& t : j.at("terms")) {
        auto k = t.at("t_exp").get<std::vector<int>>();
        for (int e : k)
            if (e > cap) throw Error("t-exponent exceeds the declared degree cap");
        r.set_term(k, series_from_json(F, t.at("coeff")));
    }
    return r;
}

inline json to_json(const SolveReport& r, int lat) {
    json j;
    j["solution"] = to_json(r.x);
    j["intermediate_v"] = to_json(r.v);
    j["precision"] = frac_string(r.checked_prec, lat);
    j["verified"] = r.verified;
    if (r.first_discrepancy) j["first_discrepant_exponent"] = *r.first_discrepancy;
    return j;
}

inline json to_json(const PolylogReport& r, int lat) {
    json entries = json::array();
    for (size_t i = 0; i < r.x.size(); ++i)
        for (size_t j2 = 0; j2 <= i; ++j2) {
            json e;
            e["row"] = i;
            e["col"] = j2;
            e["value"] = to_json(r.x[i][j2]);
            entries.push_back(e);
        }
    json steps = json::array();
    for (auto& [i, j2, ok] : r.step_verified)
        steps.push_back({{"row", i}, {"col", j2}, {"verified", ok}});
    json j;
    j["entries"] = entries;
    j["precision"] = frac_string(r.checked_prec, lat);
    j["steps"] = steps;
    j["verified"] = r.verified;
    if (r.failed_at) j["failed_at"] = {r.failed_at->first, r.failed_at->second};
    if (!r.detail.empty()) j["detail"] = r.detail;
    return j;
}

inline json to_json(const MuPolynomial& P) {
    json terms = json::array();
    for (auto& [k, c] : P.terms()) {
        json t;
        t["coeff"] = c.str();
        t["exps"] = k;
        terms.push_back(t);
    }
    json j;
    j["symbols"] = P.symbols();
    j["terms"] = terms;
    j["text"] = P.str();
    return j;
}

}  // namespace carlitz
