#include "CLI11.hpp"
#include "json.hpp"

#include "difftop/cache.hpp"
#include "difftop/curve.hpp"
#include "difftop/diffsys.hpp"
#include "difftop/dlbridge.hpp"
#include "difftop/dy.hpp"
#include "difftop/gw.hpp"
#include "difftop/toprec.hpp"
#include "difftop/verify.hpp"

#include <fstream>
#include <functional>
#include <iostream>
#include <optional>

using namespace difftop;
using json = nlohmann::json;

namespace {

struct CacheOpts {
    std::string dir;
    bool off = false;
    bool recheck = false;
};

// returns 1 when --recheck finds a cache entry that differs from recomputation
int cached(const CacheOpts& c, const std::string& op, const std::string& params,
           const std::function<std::string()>& compute, std::string& out) {
    if (c.off) {
        out = compute();
        return 0;
    }
    Cache cache(resolve_cache_dir(c.dir));
    std::string key = cache_key(op, params);
    if (auto hit = cache.get(key)) {
        out = *hit;
        if (c.recheck && compute() != *hit) {
            std::cerr << "cache entry " << key << " differs from recomputation\n";
            return 1;
        }
        return 0;
    }
    out = compute();
    cache.put(key, op, out);
    return 0;
}

std::string omega_csv(const PoleBasisForm& w) {
    std::string s;
    for (int i = 0; i < w.n; ++i) s += "bp" + std::to_string(i + 1) + ",k" + std::to_string(i + 1) + ",";
    s += "coeff\n";
    for (const auto& [key, c] : w.coeffs) {
        for (int i = 0; i < w.n; ++i) {
            Slot sl = slot_of(key, i);
            s += (sl.a == 1 ? "+1," : "-1,") + std::to_string(sl.k) + ",";
        }
        s += to_str(c) + "\n";
    }
    return s;
}

json mat_json(const RMat& m, bool x_form) {
    json j = json::object();
    const char* names[2][2] = {{"11", "12"}, {"21", "22"}};
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
            if (x_form) {
                curve::XForm f = curve::to_x_form(m(a, b));
                j[names[a][b]] = {{"rational", f.r0.str()}, {"sqrt_coeff", f.r1.str()}};
            } else {
                j[names[a][b]] = m(a, b).str();
            }
        }
    return j;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"difftop: P^1 quantum curve, determinantal formulas and topological recursion"};
    app.require_subcommand(1);
    CacheOpts copt;
    app.add_option("--cache-dir", copt.dir, "cache directory (default $DIFFTOP_CACHE or a per-user directory)");
    app.add_flag("--no-cache", copt.off, "recompute without touching the cache");
    app.add_flag("--recheck", copt.recheck, "recompute and compare against a cache hit");

    int g = 0, n = 1;
    std::string format = "json";
    auto* omega = app.add_subcommand("omega", "print omega_n^(g) in the pole basis");
    omega->add_option("--g", g, "genus")->required();
    omega->add_option("--n", n, "number of points")->required();
    omega->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));

    std::string suite;
    verify::Options vo;
    std::string report_path, lambda_s = "1/2";
    auto* ver = app.add_subcommand("verify", "run a verification suite");
    std::vector<std::string> names = verify::suites();
    names.push_back("all");
    ver->add_option("suite", suite, "suite name")->required()->check(CLI::IsMember(names));
    ver->add_option("--hbar-order", vo.hbar_order)->check(CLI::Range(0, 12));
    ver->add_option("--nmax", vo.nmax)->check(CLI::Range(1, 6));
    ver->add_option("--samples", vo.samples)->check(CLI::Range(1, 1000));
    ver->add_option("--seed", vo.seed);
    ver->add_option("--lambda", lambda_s, "lambda in L0 + hbar lambda (rational p/q)");
    ver->add_option("--smax", vo.smax)->check(CLI::Range(0, 40));
    ver->add_option("--pmax", vo.pmax)->check(CLI::Range(0, 40));
    ver->add_option("--report", report_path, "write the JSON report here");

    auto* tab = app.add_subcommand("tables", "coefficient tables");
    tab->require_subcommand(1);
    int order = 3;
    bool x_form = false;
    auto* tm = tab->add_subcommand("m", "M_k as rational functions of z");
    tm->add_option("--order", order)->check(CLI::Range(0, 12));
    tm->add_flag("--x-form", x_form, "write each entry as r0(x) + r1(x) sqrt(x^2-4)");
    auto* td = tab->add_subcommand("d", "D_k in z and ln z");
    td->add_option("--order", order)->check(CLI::Range(0, 10));
    int kmax = 4;
    auto* tg = tab->add_subcommand("gw", "stationary brackets");
    tg->add_option("--g", g)->required()->check(CLI::Range(0, 3));
    tg->add_option("--n", n)->required()->check(CLI::Range(1, 4));
    tg->add_option("--kmax", kmax)->check(CLI::Range(0, 12));
    std::string kind = "alpha";
    int hbar = 4, terms = 10;
    auto* tdy = tab->add_subcommand("dy", "alpha, P or Q coefficient grid");
    tdy->add_option("--kind", kind)->check(CLI::IsMember({"alpha", "α", "P", "Q"}));
    tdy->add_option("--hbar", hbar)->check(CLI::Range(0, 40));
    tdy->add_option("--terms", terms)->check(CLI::Range(0, 200));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        std::string out;
        if (*omega) {
            if (g == 0 && n == 2) {
                std::cerr << "omega(0,2) is the Bergmann kernel dz1 dz2/(z1-z2)^2; it seeds the recursion and has "
                             "no pole-basis form\n";
                return 2;
            }
            if (g < 0 || n < 1 || 2 * g - 2 + n <= 0 || n > 8) {
                std::cerr << "need g >= 0, 1 <= n <= 8 and 2g - 2 + n > 0\n";
                return 2;
            }
            int rc = cached(copt, "omega", json{{"g", g}, {"n", n}, {"format", format}}.dump(), [&] {
                auto w = toprec::omega(g, n);
                return format == "csv" ? omega_csv(*w) : w->to_json() + "\n";
            }, out);
            std::cout << out;
            return rc;
        }
        if (*ver) {
            vo.lambda = parse_q(lambda_s);
            std::string rep;
            int rc = cached(copt, "verify",
                            json{{"suite", suite},
                                 {"hbar", vo.hbar_order},
                                 {"nmax", vo.nmax},
                                 {"samples", vo.samples},
                                 {"seed", vo.seed},
                                 {"lambda", to_str(vo.lambda)},
                                 {"smax", vo.smax},
                                 {"pmax", vo.pmax}}
                                .dump(),
                            [&] { return verify::run(suite, vo).to_json() + "\n"; }, rep);
            std::cout << rep;
            if (!report_path.empty()) std::ofstream(report_path) << rep;
            if (rc != 0) return rc;
            json parsed = json::parse(rep);
            for (const auto& c : parsed["clauses"])
                if (!c["pass"].get<bool>()) return 1;
            return 0;
        }
        if (*tm) {
            int rc = cached(copt, "tables-m", json{{"order", order}, {"x_form", x_form}}.dump(), [&] {
                MTower t = diffsys::m_p1(order);
                json arr = json::array();
                for (int k = 0; k <= order; ++k) arr.push_back({{"k", k}, {"M", mat_json(t.M[k], x_form)}});
                return arr.dump(2) + "\n";
            }, out);
            std::cout << out;
            return rc;
        }
        if (*td) {
            int rc = cached(copt, "tables-d", json{{"order", order}}.dump(), [&] {
                DTower t = dl::d_tower(order);
                json arr = json::array();
                const char* nm[2][2] = {{"11", "12"}, {"21", "22"}};
                for (int k = 0; k <= order; ++k) {
                    json e = json::object();
                    for (int a = 0; a < 2; ++a)
                        for (int b = 0; b < 2; ++b) e[nm[a][b]] = t.D[k](a, b).str();
                    arr.push_back({{"k", k}, {"D", e}});
                }
                return arr.dump(2) + "\n";
            }, out);
            std::cout << out;
            return rc;
        }
        if (*tg) {
            if (2 * g - 2 + n <= 0) {
                std::cerr << "need 2g - 2 + n > 0\n";
                return 2;
            }
            int rc = cached(copt, "tables-gw", json{{"g", g}, {"n", n}, {"kmax", kmax}}.dump(),
                            [&] { return gw::extract(g, n, kmax).to_csv(); }, out);
            std::cout << out;
            return rc;
        }
        if (*tdy) {
            int rc = cached(copt, "tables-dy", json{{"kind", dy::kind_name(dy::parse_kind(kind))}, {"hbar", hbar},
                                                    {"terms", terms}}
                                                   .dump(),
                            [&] { return dy::to_csv(dy::generate(dy::parse_kind(kind), hbar, terms)); }, out);
            std::cout << out;
            return rc;
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
