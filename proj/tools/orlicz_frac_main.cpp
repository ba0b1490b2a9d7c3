// Command-line front end: studies and diagnostics for fractional
// Orlicz-Sobolev modulars, with CSV/JSON artifacts.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "orlicz/errors.hpp"
#include "orlicz/hardy.hpp"
#include "orlicz/io.hpp"
#include "orlicz/limits.hpp"
#include "orlicz/modular.hpp"
#include "orlicz/seminorm.hpp"
#include "orlicz/testfn.hpp"
#include "orlicz/young.hpp"

namespace {

constexpr const char* kToolVersion = "0.1.0";

using KV = std::map<std::string, std::string>;

std::vector<double> parse_list(const std::string& csv) {
    std::vector<double> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) out.push_back(std::stod(item));
    }
    return out;
}

// numeric-options bundle shared by every subcommand
struct CommonOpts {
    std::string out_base;
    std::string format = "both";
    double rel_tol = 1e-8;
    double abs_tol = 1e-12;
    int max_subdivisions = 4000;
    double tau_lo = std::numeric_limits<double>::quiet_NaN();
    double tau_hi = std::numeric_limits<double>::quiet_NaN();
    double truncation = 0.0;
    long long mc_samples = 1'000'000;
    std::uint64_t seed = 42;

    orlicz::QuadratureConfig cfg() const {
        orlicz::QuadratureConfig c;
        c.rel_tol = rel_tol;
        c.abs_tol = abs_tol;
        c.max_subdivisions = max_subdivisions;
        c.log_radius_lo = tau_lo;
        c.log_radius_hi = tau_hi;
        c.outer_truncation = truncation;
        c.mc_samples = mc_samples;
        c.rng_seed = seed;
        return c;
    }
};

struct FunctionOpts {
    std::string family = "power";
    double p = 2.0;
    std::string terms = "1:2,1:3";
    double gamma = 2.0;
    double t0 = orlicz::young::kExpCounterexampleDefaultT0;

    std::string testfn = "tent";
    int n = 1;
    double v_gamma = 2.0;
    double v_kappa = 1e6;
    double u_scale = 1.0;  // u := u / u_scale
};

void add_common(CLI::App* cmd, CommonOpts& c, KV& echo) {
    cmd->add_option("--out", c.out_base, "artifact base path (writes BASE.csv / BASE.json)");
    cmd->add_option("--format", c.format, "csv|json|both")->check(CLI::IsMember({"csv", "json", "both"}));
    cmd->add_option("--rel-tol", c.rel_tol, "relative quadrature tolerance");
    cmd->add_option("--abs-tol", c.abs_tol, "absolute quadrature tolerance");
    cmd->add_option("--max-subdivisions", c.max_subdivisions, "adaptive subdivision cap");
    cmd->add_option("--tau-lo", c.tau_lo, "log-radius window lower edge (auto if unset)");
    cmd->add_option("--tau-hi", c.tau_hi, "log-radius window upper edge (auto if unset)");
    cmd->add_option("--truncation", c.truncation, "outer truncation radius (0 = auto)");
    cmd->add_option("--mc-samples", c.mc_samples, "Monte Carlo sample budget");
    cmd->add_option("--seed", c.seed, "RNG seed");
    (void)echo;
}

void add_young(CLI::App* cmd, FunctionOpts& f) {
    cmd->add_option("--family", f.family, "power|powerlog|powersum|expctr")
        ->check(CLI::IsMember({"power", "powerlog", "powersum", "expctr"}));
    cmd->add_option("--p", f.p, "power exponent");
    cmd->add_option("--terms", f.terms, "powersum terms c:p,c:p,...");
    cmd->add_option("--gamma", f.gamma, "counterexample family exponent");
    cmd->add_option("--t0", f.t0, "counterexample branch point (<= 1/(2e))");
}

void add_testfn(CLI::App* cmd, FunctionOpts& f) {
    cmd->add_option("--testfn", f.testfn, "tent|expdecay|counterexample|zero")
        ->check(CLI::IsMember({"tent", "expdecay", "counterexample", "zero"}));
    cmd->add_option("--n", f.n, "dimension");
    cmd->add_option("--v-gamma", f.v_gamma, "counterexample v: gamma");
    cmd->add_option("--v-kappa", f.v_kappa, "counterexample v: kappa");
    cmd->add_option("--u-scale", f.u_scale, "divide the test function by this factor");
}

orlicz::young::YoungFunction build_young(const FunctionOpts& f, KV& echo) {
    echo["family"] = f.family;
    if (f.family == "power") {
        echo["p"] = orlicz::io::format_double(f.p);
        return orlicz::young::make_power(f.p);
    }
    if (f.family == "powerlog") {
        echo["p"] = orlicz::io::format_double(f.p);
        return orlicz::young::make_power_log(f.p);
    }
    if (f.family == "powersum") {
        echo["terms"] = f.terms;
        std::vector<std::pair<double, double>> terms;
        std::stringstream ss(f.terms);
        std::string item;
        while (std::getline(ss, item, ',')) {
            auto colon = item.find(':');
            orlicz::require(colon != std::string::npos, orlicz::errc::invalid_parameter,
                            "powersum terms must be c:p pairs");
            terms.emplace_back(std::stod(item.substr(0, colon)),
                               std::stod(item.substr(colon + 1)));
        }
        return orlicz::young::make_power_sum(terms);
    }
    echo["gamma"] = orlicz::io::format_double(f.gamma);
    echo["t0"] = orlicz::io::format_double(f.t0);
    return orlicz::young::make_exp_counterexample(f.gamma, f.t0);
}

orlicz::testfn::TestFunction build_testfn(const FunctionOpts& f, KV& echo) {
    echo["testfn"] = f.testfn;
    echo["n"] = std::to_string(f.n);
    orlicz::testfn::TestFunction u;
    if (f.testfn == "tent") {
        orlicz::require(f.n == 1, orlicz::errc::invalid_parameter, "tent is one-dimensional");
        u = orlicz::testfn::make_tent();
    } else if (f.testfn == "expdecay") {
        u = orlicz::testfn::make_exp_decay(f.n);
    } else if (f.testfn == "zero") {
        u = orlicz::testfn::make_zero(f.n);
    } else {
        echo["v-gamma"] = orlicz::io::format_double(f.v_gamma);
        echo["v-kappa"] = orlicz::io::format_double(f.v_kappa);
        u = orlicz::testfn::make_counterexample_v(f.n, f.v_gamma, f.v_kappa);
    }
    if (f.u_scale != 1.0) {
        echo["u-scale"] = orlicz::io::format_double(f.u_scale);
        u = orlicz::testfn::scale(u, f.u_scale);
    }
    return u;
}

nlohmann::json provenance(const std::string& command, const CommonOpts& c, const KV& echo) {
    nlohmann::json cfg;
    for (const auto& [k, v] : echo) cfg[k] = v;
    cfg["rel-tol"] = orlicz::io::format_double(c.rel_tol);
    cfg["abs-tol"] = orlicz::io::format_double(c.abs_tol);
    cfg["max-subdivisions"] = std::to_string(c.max_subdivisions);
    if (!std::isnan(c.tau_lo)) cfg["tau-lo"] = orlicz::io::format_double(c.tau_lo);
    if (!std::isnan(c.tau_hi)) cfg["tau-hi"] = orlicz::io::format_double(c.tau_hi);
    if (c.truncation > 0) cfg["truncation"] = orlicz::io::format_double(c.truncation);
    cfg["mc-samples"] = std::to_string(c.mc_samples);
    cfg["seed"] = std::to_string(c.seed);
    cfg["command"] = command;
    return nlohmann::json{{"tool", "orlicz-frac"},
                          {"version", kToolVersion},
                          {"seed", c.seed},
                          {"command", command},
                          {"config", cfg}};
}

void write_artifacts(const CommonOpts& c, const std::string& csv_body,
                     nlohmann::json json_doc) {
    if (c.out_base.empty()) return;
    if (c.format == "csv" || c.format == "both") {
        std::ofstream os(c.out_base + ".csv", std::ios::binary);
        os << csv_body;
    }
    if (c.format == "json" || c.format == "both") {
        std::ofstream os(c.out_base + ".json", std::ios::binary);
        os << json_doc.dump(2) << '\n';
    }
}

std::string modular_csv(const orlicz::ModularResult& r) {
    std::ostringstream os;
    os << "value,abs_error_estimate,truncation_radius,evaluations,method\n"
       << orlicz::io::format_double(r.value) << ','
       << orlicz::io::format_double(r.abs_error_estimate) << ','
       << orlicz::io::format_double(r.truncation_radius) << ',' << r.evaluations << ','
       << orlicz::method_name(r.method) << '\n';
    return os.str();
}

// --config FILE support: flat `key = value` lines with # comments, or a JSON
// sidecar from a previous run (its "config" object is re-fed). Command-line
// flags override file values because file-derived args are injected first.
KV load_config_file(const std::string& path) {
    std::ifstream is(path);
    orlicz::require(static_cast<bool>(is), orlicz::errc::invalid_parameter,
                    "cannot open config file " + path);
    std::stringstream buf;
    buf << is.rdbuf();
    std::string text = buf.str();
    KV kv;
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{') {
        auto j = nlohmann::json::parse(text);
        const nlohmann::json& cfg = j.contains("config") ? j["config"] : j;
        for (auto it = cfg.begin(); it != cfg.end(); ++it) {
            if (it.value().is_string())
                kv[it.key()] = it.value().get<std::string>();
            else
                kv[it.key()] = it.value().dump();
        }
        return kv;
    }
    std::stringstream lines(text);
    std::string line;
    while (std::getline(lines, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        auto trim = [](std::string s) {
            const auto a = s.find_first_not_of(" \t\r");
            const auto b = s.find_last_not_of(" \t\r");
            return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
        };
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (!key.empty()) kv[key] = val;
    }
    return kv;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"fractional Orlicz-Sobolev modulars, limit studies, and diagnostics"};
    app.require_subcommand(1);
    app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

    CommonOpts com;
    FunctionOpts fn;
    KV echo;

    // study parameters
    std::string s_csv = "0.2,0.1,0.05,0.025";
    double s_single = 0.5;
    double tol = 0.02;
    double lambda = 1.0;
    std::string method = "1d";
    std::string cgrid_csv = "1,2,4,8,16,32";
    double ce_gamma = 2.0, ce_lambda = 1.5, ce_sigma = 0.9, ce_kappa = 1e6, ce_alpha = 1.0;
    int ce_n = 1;
    std::string which = "both";
    double id_rho = 1.0, id_t = 1.0, id_eps = 0.0;
    double yi_tmin = 1e-3, yi_tmax = 1e3;
    int yi_grid = 64;

    auto* young_info = app.add_subcommand("young-info", "Young-function diagnostics");
    add_young(young_info, fn);
    young_info->add_option("--tmin", yi_tmin, "diagnosis grid lower edge");
    young_info->add_option("--tmax", yi_tmax, "diagnosis grid upper edge");
    young_info->add_option("--grid-points", yi_grid, "diagnosis grid size");
    add_common(young_info, com, echo);

    auto* modular_cmd = app.add_subcommand("modular", "Orlicz modular of a test function");
    add_young(modular_cmd, fn);
    add_testfn(modular_cmd, fn);
    modular_cmd->add_option("--lambda", lambda, "modular scale");
    add_common(modular_cmd, com, echo);

    auto* seminorm_cmd = app.add_subcommand("seminorm", "fractional modular J_s(u)");
    add_young(seminorm_cmd, fn);
    add_testfn(seminorm_cmd, fn);
    seminorm_cmd->add_option("--s", s_single, "fractional order");
    seminorm_cmd->add_option("--method", method, "1d|radial|mc")
        ->check(CLI::IsMember({"1d", "radial", "mc"}));
    add_common(seminorm_cmd, com, echo);

    auto* limit_cmd = app.add_subcommand("limit", "s->0+ study for a Young function");
    add_young(limit_cmd, fn);
    add_testfn(limit_cmd, fn);
    limit_cmd->add_option("--s", s_csv, "comma-separated s grid");
    limit_cmd->add_option("--tol", tol, "relative verdict tolerance");
    add_common(limit_cmd, com, echo);

    auto* ms_cmd = app.add_subcommand("ms-limit", "power-case limit study");
    ms_cmd->add_option("--p", fn.p, "power exponent");
    add_testfn(ms_cmd, fn);
    ms_cmd->add_option("--s", s_csv, "comma-separated s grid");
    ms_cmd->add_option("--tol", tol, "relative verdict tolerance");
    add_common(ms_cmd, com, echo);

    auto* hardy_cmd = app.add_subcommand("hardy", "companion function and Hardy check");
    add_young(hardy_cmd, fn);
    add_testfn(hardy_cmd, fn);
    hardy_cmd->add_option("--s", s_single, "fractional order");
    hardy_cmd->add_option("--cgrid", cgrid_csv, "constants to try");
    add_common(hardy_cmd, com, echo);

    auto* ce_cmd = app.add_subcommand("counterexample", "divergence lower-bound battery");
    ce_cmd->add_option("--gamma", ce_gamma, "family exponent > 1");
    ce_cmd->add_option("--lambda", ce_lambda, "scale in (1,2)");
    ce_cmd->add_option("--sigma", ce_sigma, "cone parameter in (lambda/2, 1)");
    ce_cmd->add_option("--kappa", ce_kappa, "shift constant > 1");
    ce_cmd->add_option("--alpha", ce_alpha, "aperture in (0,2)");
    ce_cmd->add_option("--ce-n", ce_n, "dimension for the alpha^n factor");
    ce_cmd->add_option("--s", s_csv, "comma-separated s grid");
    add_common(ce_cmd, com, echo);

    auto* id_cmd = app.add_subcommand("identities", "exact identity residuals");
    add_young(id_cmd, fn);
    add_testfn(id_cmd, fn);
    id_cmd->add_option("--which", which, "shell|radial|both")
        ->check(CLI::IsMember({"shell", "radial", "both"}));
    id_cmd->add_option("--s", s_single, "fractional order");
    id_cmd->add_option("--rho", id_rho, "radial identity rho");
    id_cmd->add_option("--t", id_t, "radial identity lower limit");
    id_cmd->add_option("--eps", id_eps, "radial identity epsilon");
    add_common(id_cmd, com, echo);

    // --config: inject file-derived args before the user's own flags
    std::vector<std::string> raw(argv + 1, argv + argc);
    std::string config_path;
    for (std::size_t i = 0; i + 1 < raw.size(); ++i)
        if (raw[i] == "--config") config_path = raw[i + 1];
    std::vector<std::string> args;
    try {
        std::string subcmd;
        if (!raw.empty() && !raw.front().empty() && raw.front()[0] != '-') subcmd = raw.front();
        KV file_kv;
        if (!config_path.empty()) file_kv = load_config_file(config_path);
        if (subcmd.empty() && file_kv.count("command")) subcmd = file_kv["command"];
        if (!subcmd.empty()) args.push_back(subcmd);
        for (const auto& [k, v] : file_kv) {
            if (k == "command" || k == "config") continue;
            args.push_back("--" + k);
            args.push_back(v);
        }
        for (std::size_t i = 0; i < raw.size(); ++i) {
            if (i == 0 && !raw[0].empty() && raw[0][0] != '-') continue;  // subcommand
            if (raw[i] == "--config") { ++i; continue; }
            args.push_back(raw[i]);
        }
    } catch (const orlicz::error& e) {
        std::cerr << "E:" << orlicz::errc_name(e.code()) << ": " << e.what() << "\n";
        return 1;
    }

    try {
        std::vector<const char*> cargs;
        cargs.push_back(argv[0]);
        for (const auto& a : args) cargs.push_back(a.c_str());
        app.parse(static_cast<int>(cargs.size()), cargs.data());
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        std::cerr << "E:invalid-parameter: " << e.what() << "\n";
        return 1;
    }

    try {
        const orlicz::QuadratureConfig cfg = com.cfg();

        if (*young_info) {
            auto A = build_young(fn, echo);
            echo["tmin"] = orlicz::io::format_double(yi_tmin);
            echo["tmax"] = orlicz::io::format_double(yi_tmax);
            echo["grid-points"] = std::to_string(yi_grid);
            auto d = orlicz::young::young_diagnose(A, yi_tmin, yi_tmax, yi_grid);
            const double abar1 = orlicz::young::abar(A, 1.0, cfg);
            std::cout << A.name << "\n"
                      << "  delta2 sup ratio: "
                      << (d.delta2_unbounded_on_grid ? "unbounded-on-grid"
                                                     : orlicz::io::format_double(d.delta2_sup_ratio))
                      << " (log " << orlicz::io::format_double(d.delta2_sup_log_ratio) << ")\n"
                      << "  Matuszewska index: "
                      << (d.index_unbounded_on_grid ? "+inf (unbounded-on-grid)"
                                                    : orlicz::io::format_double(d.matuszewska_index))
                      << "\n"
                      << "  growth constant: " << orlicz::io::format_double(d.growth_constant)
                      << "\n"
                      << "  Abar(1): " << orlicz::io::format_double(abar1) << "\n";
            nlohmann::json j = provenance("young-info", com, echo);
            j["diagnostics"] = {{"delta2_sup_ratio", d.delta2_sup_ratio},
                                {"delta2_sup_log_ratio", d.delta2_sup_log_ratio},
                                {"delta2_unbounded_on_grid", d.delta2_unbounded_on_grid},
                                {"matuszewska_index", d.matuszewska_index},
                                {"index_unbounded_on_grid", d.index_unbounded_on_grid},
                                {"growth_constant", d.growth_constant},
                                {"abar_at_1", abar1}};
            std::ostringstream csv;
            csv << "delta2_sup_ratio,delta2_unbounded,matuszewska_index,growth_constant,abar_at_1\n"
                << orlicz::io::format_double(d.delta2_sup_ratio) << ','
                << (d.delta2_unbounded_on_grid ? 1 : 0) << ','
                << orlicz::io::format_double(d.matuszewska_index) << ','
                << orlicz::io::format_double(d.growth_constant) << ','
                << orlicz::io::format_double(abar1) << '\n';
            write_artifacts(com, csv.str(), j);
            return 0;
        }

        if (*modular_cmd) {
            auto A = build_young(fn, echo);
            auto u = build_testfn(fn, echo);
            echo["lambda"] = orlicz::io::format_double(lambda);
            if (fn.testfn == "counterexample" && A.family == orlicz::young::Family::exp_counterexample) {
                auto bound = orlicz::testfn::counterexample_kappa_bound(fn.v_gamma, lambda);
                if (!bound)
                    std::cerr << "W: proof-side kappa bound exp((2e/lambda)^gamma)-1 overflows; "
                                 "proceeding (growth still observable)\n";
                else if (fn.v_kappa <= *bound)
                    std::cerr << "W: kappa below the proof-side bound "
                              << orlicz::io::format_double(*bound) << "; A may leave its "
                                 "exponential branch on the battery\n";
            }
            auto r = orlicz::modular::orlicz_modular(u, A, lambda, cfg);
            std::cout << "modular = " << orlicz::io::format_double(r.value) << " (+- "
                      << orlicz::io::format_double(r.abs_error_estimate) << ")\n";
            nlohmann::json j = provenance("modular", com, echo);
            j["result"] = r.to_json();
            write_artifacts(com, modular_csv(r), j);
            return 0;
        }

        if (*seminorm_cmd) {
            auto A = build_young(fn, echo);
            auto u = build_testfn(fn, echo);
            echo["s"] = orlicz::io::format_double(s_single);
            echo["method"] = method;
            orlicz::ModularResult r;
            if (method == "1d")
                r = orlicz::seminorm::frac_modular_1d(u, A, s_single, cfg);
            else if (method == "radial")
                r = orlicz::seminorm::frac_modular_radial(u, A, s_single, fn.n, cfg);
            else
                r = orlicz::seminorm::frac_modular_mc(u, A, s_single, fn.n, cfg);
            std::cout << "J_s = " << orlicz::io::format_double(r.value);
            if (r.standard_error)
                std::cout << " (se " << orlicz::io::format_double(*r.standard_error) << ")";
            std::cout << "\n";
            nlohmann::json j = provenance("seminorm", com, echo);
            j["result"] = r.to_json();
            write_artifacts(com, modular_csv(r), j);
            return 0;
        }

        if (*limit_cmd || *ms_cmd) {
            const bool is_ms = static_cast<bool>(*ms_cmd);
            auto u = build_testfn(fn, echo);
            echo["s"] = s_csv;
            echo["tol"] = orlicz::io::format_double(tol);
            orlicz::limits::LimitStudyResult res;
            if (is_ms) {
                echo["p"] = orlicz::io::format_double(fn.p);
                res = orlicz::limits::ms_power_study(u, fn.p, parse_list(s_csv), cfg, tol);
            } else {
                auto A = build_young(fn, echo);
                res = orlicz::limits::limit_study(u, A, parse_list(s_csv), cfg, tol);
            }
            std::cout << "target = " << orlicz::io::format_double(res.target)
                      << ", extrapolated = " << orlicz::io::format_double(res.extrapolated)
                      << ", verdict = " << orlicz::limits::verdict_name(res.verdict) << "\n";
            nlohmann::json j = provenance(is_ms ? "ms-limit" : "limit", com, echo);
            j["study"] = res.to_json();
            write_artifacts(com, res.to_csv(), j);
            return res.verdict == orlicz::limits::Verdict::inconclusive &&
                           !std::isfinite(res.target)
                       ? 0
                       : 0;
        }

        if (*hardy_cmd) {
            auto A = build_young(fn, echo);
            auto u = build_testfn(fn, echo);
            echo["s"] = orlicz::io::format_double(s_single);
            echo["cgrid"] = cgrid_csv;
            auto H = orlicz::hardy::build_companion(A, s_single, fn.n, cfg);
            auto chk = orlicz::hardy::hardy_check(u, A, s_single, fn.n, parse_list(cgrid_csv),
                                                  cfg);
            std::cout << "conditions: near-zero " << orlicz::hardy::verdict_name(H.report.near_zero)
                      << ", near-infinity "
                      << orlicz::hardy::verdict_name(H.report.near_infinity) << "\n";
            if (chk.constant)
                std::cout << "hardy constant C = " << orlicz::io::format_double(*chk.constant)
                          << "\n";
            else
                std::cout << "hardy constant: none-in-grid\n";
            // companion tables as CSV artifacts
            std::ostringstream binv_csv;
            binv_csv << "r,b_inverse\n";
            for (std::size_t i = 0; i < H.r_grid.size(); ++i)
                binv_csv << orlicz::io::format_double(H.r_grid[i]) << ','
                         << orlicz::io::format_double(H.binv_grid[i]) << '\n';
            std::ostringstream B_csv;
            B_csv << "t,B\n";
            for (std::size_t i = 0; i < H.t_grid.size(); ++i)
                B_csv << orlicz::io::format_double(H.t_grid[i]) << ','
                      << orlicz::io::format_double(H.B_grid[i]) << '\n';
            if (!com.out_base.empty()) {
                std::ofstream(com.out_base + "_binv.csv", std::ios::binary) << binv_csv.str();
                std::ofstream(com.out_base + "_B.csv", std::ios::binary) << B_csv.str();
            }
            nlohmann::json j = provenance("hardy", com, echo);
            j["conditions"] = {{"near_zero", orlicz::hardy::verdict_name(H.report.near_zero)},
                               {"near_infinity",
                                orlicz::hardy::verdict_name(H.report.near_infinity)},
                               {"detail", H.report.detail}};
            j["inverse_convention"] = H.convention;
            j["lhs_weighted_modular"] = chk.lhs;
            nlohmann::json rhs = nlohmann::json::array();
            for (auto& [C, v] : chk.rhs_per_C) rhs.push_back({{"C", C}, {"rhs", v}});
            j["rhs_per_C"] = rhs;
            if (chk.constant)
                j["hardy_constant"] = *chk.constant;
            else
                j["hardy_constant"] = "none-in-grid";
            write_artifacts(com, binv_csv.str(), j);
            return 0;
        }

        if (*ce_cmd) {
            echo["gamma"] = orlicz::io::format_double(ce_gamma);
            echo["lambda"] = orlicz::io::format_double(ce_lambda);
            echo["sigma"] = orlicz::io::format_double(ce_sigma);
            echo["kappa"] = orlicz::io::format_double(ce_kappa);
            echo["alpha"] = orlicz::io::format_double(ce_alpha);
            echo["ce-n"] = std::to_string(ce_n);
            echo["s"] = s_csv;
            auto svals = parse_list(s_csv);
            std::sort(svals.begin(), svals.end(), std::greater<>());
            std::ostringstream csv;
            csv << "s,lower_bound\n";
            std::vector<double> vals;
            for (double s : svals) {
                const double v = orlicz::limits::counterexample_lower_bound(
                    s, ce_gamma, ce_lambda, ce_sigma, ce_kappa, ce_alpha, ce_n);
                vals.push_back(v);
                csv << orlicz::io::format_double(s) << ',' << orlicz::io::format_double(v)
                    << '\n';
            }
            bool monotone = true;
            for (std::size_t i = 0; i + 1 < vals.size(); ++i)
                if (!(vals[i + 1] > vals[i])) monotone = false;
            const double growth = vals.empty() || vals.front() <= 0.0
                                      ? 0.0
                                      : vals.back() / vals.front();
            std::cout << csv.str() << "monotone growth: " << (monotone ? "yes" : "no")
                      << ", total factor " << orlicz::io::format_double(growth) << "\n"
                      << "dimensional constant C_{sigma,n}: unevaluated positive constant\n";
            nlohmann::json j = provenance("counterexample", com, echo);
            j["monotone_growth"] = monotone;
            j["total_growth_factor"] = growth;
            j["C_sigma_n"] = "unevaluated positive constant";
            nlohmann::json rows = nlohmann::json::array();
            for (std::size_t i = 0; i < svals.size(); ++i)
                rows.push_back({{"s", svals[i]}, {"lower_bound", vals[i]}});
            j["rows"] = rows;
            write_artifacts(com, csv.str(), j);
            return 0;
        }

        if (*id_cmd) {
            echo["which"] = which;
            echo["s"] = orlicz::io::format_double(s_single);
            nlohmann::json j = provenance("identities", com, echo);
            std::ostringstream csv;
            csv << "identity,residual\n";
            if (which == "shell" || which == "both") {
                auto A = build_young(fn, echo);
                auto u = build_testfn(fn, echo);
                const double r =
                    orlicz::seminorm::shell_identity_residual(u, A, s_single, fn.n, cfg);
                std::cout << "shell identity residual = " << orlicz::io::format_double(r)
                          << "\n";
                j["shell_residual"] = r;
                csv << "shell," << orlicz::io::format_double(r) << '\n';
            }
            if (which == "radial" || which == "both") {
                auto A = build_young(fn, echo);
                echo["rho"] = orlicz::io::format_double(id_rho);
                echo["t"] = orlicz::io::format_double(id_t);
                echo["eps"] = orlicz::io::format_double(id_eps);
                const double r = orlicz::seminorm::radial_identity_residual(
                    A, id_rho, id_t, s_single, id_eps, cfg);
                std::cout << "radial identity residual = " << orlicz::io::format_double(r)
                          << "\n";
                j["radial_residual"] = r;
                csv << "radial," << orlicz::io::format_double(r) << '\n';
            }
            write_artifacts(com, csv.str(), j);
            return 0;
        }
    } catch (const orlicz::numeric_failure& e) {
        std::cerr << "E:numeric-failure: " << e.what()
                  << " (partial=" << orlicz::io::format_double(e.partial_value())
                  << ", bound=" << orlicz::io::format_double(e.error_bound()) << ")\n";
        return 2;
    } catch (const orlicz::error& e) {
        const auto code = e.code();
        std::cerr << "E:" << orlicz::errc_name(code) << ": " << e.what() << "\n";
        if (code == orlicz::errc::study_failure) return 3;
        if (code == orlicz::errc::numeric_failure || code == orlicz::errc::construction_failure)
            return 2;
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "E:invalid-parameter: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
