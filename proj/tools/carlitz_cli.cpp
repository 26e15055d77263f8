// Command-line front end: computation of the named constants to requested
// precision and execution of the named verification suites.
//
// Exit codes: 0 verified/ok, 1 check failed, 2 usage error, 3 budget exceeded.

#include <CLI11.hpp>
#include <chrono>
#include <iostream>

#include "carlitz/verify.hpp"

using namespace carlitz;

namespace {

struct CliConfig {
    int p = 3;
    int e = 1;
    std::string prec = "16";  // theta units, or a lo..hi sweep for bench
    int s = 1;
    long long budget = 2000000;
    std::string format = "text";
    uint64_t seed = 1;
};

json provenance(const Field& F, Exp N_lattice) {
    json j;
    j["q"] = F.q();
    j["lattice_den"] = F.lattice_den();
    j["precision"] = frac_string(N_lattice, F.lattice_den());
    return j;
}

void print_value(const CliConfig& cfg, const Field& F, Exp N, const std::string& name,
                 const json& value, const std::string& text) {
    if (cfg.format == "json") {
        json j;
        j["name"] = name;
        j["provenance"] = provenance(F, N);
        j["value"] = value;
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << name << "  (q=" << F.q() << ", precision theta^-("
                  << frac_string(N, F.lattice_den()) << "), lattice 1/" << F.lattice_den()
                  << ")\n" << text << "\n";
    }
}

int run_verify(const CliConfig& cfg, long long prec, long long digit_range,
               const std::vector<std::string>& names) {
    Field F(cfg.p, cfg.e);
    RunConfig rc;
    rc.p = cfg.p;
    rc.e = cfg.e;
    rc.prec_theta = prec;
    rc.s = cfg.s;
    rc.budget = cfg.budget;
    rc.seed = cfg.seed;
    rc.digit_range = digit_range;
    bool all_ok = true;
    json reports = json::array();
    for (auto& name : names) {
        SuiteResult r = run_suite(name, F, rc);
        all_ok = all_ok && r.all_verified();
        if (cfg.format == "json") {
            reports.push_back(r.to_json_report());
        } else {
            std::cout << "suite " << r.suite << "\n";
            for (auto& c : r.checks) {
                std::cout << "  [" << c.status << "] " << c.name << "  (mod theta^-("
                          << c.precision << "))";
                if (c.first_discrepant_exponent)
                    std::cout << "  first discrepancy at theta^-(" << *c.first_discrepant_exponent
                              << ")";
                if (!c.witness.empty()) std::cout << "\n      witness: " << c.witness;
                std::cout << "\n";
            }
        }
    }
    if (cfg.format == "json") {
        json out;
        out["reports"] = reports;
        out["verified"] = all_ok;
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << (all_ok ? "all checks verified" : "CHECK FAILURES PRESENT") << "\n";
    }
    return all_ok ? 0 : 1;
}

std::pair<long long, long long> parse_range(const std::string& s) {
    auto dots = s.find("..");
    if (dots == std::string::npos) {
        long long v = std::stoll(s);
        return {v, v};
    }
    return {std::stoll(s.substr(0, dots)), std::stoll(s.substr(dots + 2))};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"carlitz: exact Carlitz-module arithmetic over Tate algebras"};
    app.require_subcommand(1);
    CliConfig cfg;
    app.add_option("--p", cfg.p, "field characteristic")->envname("CARLITZ_P");
    app.add_option("--e", cfg.e, "extension degree, q = p^e")->envname("CARLITZ_E");
    app.add_option("--q", cfg.p, "shorthand for --p with e = 1")->envname("CARLITZ_Q");
    app.add_option("--prec", cfg.prec, "target precision N (theta units); bench accepts lo..hi")->envname("CARLITZ_PREC");
    app.add_option("--s", cfg.s, "number of t-variables")->envname("CARLITZ_S");
    app.add_option("--budget", cfg.budget, "zeta term budget")->envname("CARLITZ_BUDGET");
    app.add_option("--format", cfg.format, "output format: text|json")
        ->check(CLI::IsMember({"text", "json"}))
        ->envname("CARLITZ_FORMAT");
    app.add_option("--seed", cfg.seed, "seed for sampled-property suites")->envname("CARLITZ_SEED");

    auto* compute = app.add_subcommand("compute", "compute a named constant");
    compute->fallthrough();
    std::string cname;
    long long cn = 1;
    int cj = 0;
    std::string ca = "theta";
    std::string ceval;
    long long ci = 2, cjj = 2;
    long long vrange = 0;
    compute->add_option("name", cname, "pi|omega|zeta|dn|torsion|digit-demo")->required();
    compute->add_option("--n", cn, "zeta exponent / factorial index");
    compute->add_option("--j", cj, "torsion index");
    compute->add_option("--a", ca, "torsion polynomial, e.g. 'theta^2' or 'theta-t'");
    compute->add_option("--eval", ceval, "comma-separated k_i for t_i := theta^{q^{k_i}}");
    compute->add_option("--i", ci, "digit-demo left index");
    compute->add_option("--jj", cjj, "digit-demo right index");

    auto* verify = app.add_subcommand("verify", "run a verification suite");
    verify->fallthrough();
    std::string vname;
    verify->add_option("suite", vname, "suite name or 'all'")->required();
    verify->add_option("--range", vrange, "digit-ring: phi brute-force index range (default p^3)");

    auto* bench = app.add_subcommand("bench", "time a kernel across precisions");
    bench->fallthrough();
    std::string bname;
    bench->add_option("kernel", bname, "mul|exp|zeta")->required();
    bench->add_option("--n", cn, "zeta exponent");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& err) {
        if (err.get_exit_code() == 0) return app.exit(err);  // --help
        app.exit(err);
        return 2;
    }

    try {
        Field F(cfg.p, cfg.e);
        int lat = F.lattice_den();
        auto [prec_single, prec_hi] = parse_range(cfg.prec);
        if (prec_single < 1 || prec_hi < prec_single) {
            std::cerr << "usage error: --prec must be a positive integer or lo..hi range\n";
            return 2;
        }
        Exp N = static_cast<Exp>(prec_single) * lat;
        if (compute->parsed()) {
          try {
            if (cname == "pi") {
                auto v = pi_bar(&F, N);
                print_value(cfg, F, N, "pi", to_json(v), v.str());
            } else if (cname == "omega") {
                auto v = omega(&F, N, cfg.s, 1);
                print_value(cfg, F, N, "omega", to_json(v), v.str());
            } else if (cname == "zeta") {
                ZetaRequest rq;
                rq.n = cn;
                rq.s = cfg.s;
                rq.N = N;
                rq.budget = cfg.budget;
                if (!ceval.empty()) {
                    std::stringstream ss(ceval);
                    std::string item;
                    while (std::getline(ss, item, ',')) rq.eval.push_back(std::stoi(item));
                    rq.s = static_cast<int>(rq.eval.size());
                }
                auto plan = zeta_plan(&F, rq);
                auto v = zeta(&F, rq);
                if (cfg.format == "json") {
                    json meta;
                    meta["d_max"] = plan.d_max_naive;
                    meta["d_enumerated"] = plan.d_enum;
                    meta["terms"] = plan.terms;
                    json j;
                    j["name"] = "zeta";
                    j["plan"] = meta;
                    j["provenance"] = provenance(F, N);
                    j["value"] = to_json(v);
                    std::cout << j.dump(2) << "\n";
                } else {
                    std::cout << "zeta(n=" << cn << ", s=" << rq.s << ")  terms=" << plan.terms
                              << " (degrees enumerated 0.." << plan.d_enum << " of valuation bound "
                              << plan.d_max_naive << ")\n" << v.str() << "\n";
                }
            } else if (cname == "dn") {
                auto v = factorial_d(&F, static_cast<int>(cn));
                print_value(cfg, F, kExact, "d_" + std::to_string(cn), to_json(v), v.str());
            } else if (cname == "torsion") {
                auto a = parse_poly(&F, cfg.s, ca);
                auto v = torsion_point(a, cj, N);
                print_value(cfg, F, N, "exp_C(pi theta^" + std::to_string(cj) + "/(" + ca + "))",
                            to_json(v), v.str());
            } else if (cname == "digit-demo") {
                auto one_rf = RationalFunction::constant(&F, 0, 1);
                long long k = digit_carry_add(ci, cjj, F.p());
                auto phi_i = phi_monomial(&F, 0, ci, one_rf);
                auto phi_j = phi_monomial(&F, 0, cjj, one_rf);
                auto prod = reduce_mod_P(phi_i * phi_j);
                if (cfg.format == "json") {
                    json j;
                    j["p"] = F.p();
                    j["i"] = ci;
                    j["j"] = cjj;
                    j["i_digits"] = base_p_digits(ci, F.p());
                    j["j_digits"] = base_p_digits(cjj, F.p());
                    j["product_index"] = k;
                    j["phi_i"] = to_json(phi_i);
                    j["phi_j"] = to_json(phi_j);
                    j["phi_product_reduced"] = to_json(prod);
                    std::cout << j.dump(2) << "\n";
                } else {
                    std::cout << "<Y>^" << ci << " * <Y>^" << cjj << " = <Y>^" << k << "  (base "
                              << F.p() << " carries)\n"
                              << "phi(Z^" << ci << ") = " << phi_i.str() << "\n"
                              << "phi(Z^" << cjj << ") = " << phi_j.str() << "\n"
                              << "reduced product = " << prod.str() << "\n";
                }
            } else {
                std::cerr << "unknown compute target: " << cname << "\n";
                return 2;
            }
            return 0;
          } catch (const BudgetError&) {
            throw;
          } catch (const Error& e) {
            // bad parameters for the named object
            std::cerr << "usage error: " << e.what() << "\n";
            return 2;
          }
        }
        if (verify->parsed()) {
            std::vector<std::string> names;
            if (vname == "all") names = suite_names();
            else if (std::find(suite_names().begin(), suite_names().end(), vname) !=
                     suite_names().end())
                names = {vname};
            else {
                std::cerr << "unknown suite: " << vname << "\n";
                return 2;
            }
            return run_verify(cfg, prec_single, vrange, names);
        }
        if (bench->parsed()) {
            auto lo = prec_single, hi = prec_hi;
            std::cout << "kernel " << bname << "  q=" << F.q() << "\n";
            for (long long nprec = lo; nprec <= hi; nprec += 4) {
                Exp Nl = nprec * lat;
                auto t0 = std::chrono::steady_clock::now();
                long long work = 0;
                if (bname == "mul") {
                    auto a = pi_bar(&F, Nl);
                    auto b = omega(&F, Nl).scalar_part() + a;
                    for (int i = 0; i < 100; ++i) {
                        auto c = a * b;
                        work += static_cast<long long>(c.terms().size());
                    }
                } else if (bname == "exp") {
                    auto pb = pi_bar(&F, Nl + 2 * F.q() * lat);
                    auto arg = TateElement::from_series(pb, 1) *
                               expand_inverse_monic(MPoly::theta(&F, 1) - MPoly::tvar(&F, 1, 1), Nl);
                    auto e2 = exp_carlitz(arg, pmin(arg.prec(), Nl));
                    work = static_cast<long long>(e2.terms().size());
                } else if (bname == "zeta") {
                    ZetaRequest rq;
                    rq.n = cn;
                    rq.N = Nl;
                    rq.budget = cfg.budget;
                    auto plan = zeta_plan(&F, rq);
                    auto z = zeta(&F, rq);
                    (void)z;
                    work = plan.terms;
                    std::cout << "  d_max " << plan.d_max_naive << " enumerated 0.." << plan.d_enum
                              << "\n";
                } else {
                    std::cerr << "unknown kernel: " << bname << "\n";
                    return 2;
                }
                auto t1 = std::chrono::steady_clock::now();
                double ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
                std::cout << "  prec " << nprec << "  work " << work << "  " << ms << " ms\n";
            }
            return 0;
        }
    } catch (const BudgetError& e) {
        std::cerr << "budget exceeded: " << e.what() << " (required " << e.required_budget
                  << ")\n";
        return 3;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
