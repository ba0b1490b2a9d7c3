#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "orlicz/config.hpp"
#include "orlicz/errors.hpp"
#include "orlicz/io.hpp"
#include "orlicz/modular.hpp"
#include "orlicz/parallel.hpp"
#include "orlicz/seminorm.hpp"
#include "orlicz/special.hpp"
#include "orlicz/testfn.hpp"
#include "orlicz/young.hpp"

namespace orlicz::limits {

enum class Verdict { converges_to_target, divergence_trend, inconclusive };

inline const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::converges_to_target: return "ConvergesToTarget";
        case Verdict::divergence_trend: return "DivergenceTrend";
        case Verdict::inconclusive: return "Inconclusive";
    }
    return "Inconclusive";
}

struct LimitRow {
    double s = 0.0;
    double value = 0.0;       // s * J_s(u)
    double abs_error = 0.0;
    bool ok = true;           // false: quadrature failure, value is a captured lower bound
    std::string note;
};

struct LimitStudyResult {
    std::vector<LimitRow> rows;  // sorted by decreasing s
    double target = 0.0;
    double extrapolated = 0.0;
    double extrapolated_se = 0.0;
    double tolerance = 0.0;
    Verdict verdict = Verdict::inconclusive;
    std::vector<std::string> warnings;
    nlohmann::json config_echo;

    std::string to_csv() const {
        std::ostringstream os;
        os << "s,value,abs_err\n";
        for (const auto& r : rows)
            os << io::format_double(r.s) << ',' << io::format_double(r.value) << ','
               << io::format_double(r.abs_error) << '\n';
        return os.str();
    }

    nlohmann::json to_json() const {
        nlohmann::json rows_j = nlohmann::json::array();
        for (const auto& r : rows) {
            nlohmann::json rj{{"s", r.s}, {"value", r.value}, {"abs_error", r.abs_error},
                              {"ok", r.ok}};
            if (!r.note.empty()) rj["note"] = r.note;
            rows_j.push_back(rj);
        }
        return nlohmann::json{{"rows", rows_j},
                              {"target", target},
                              {"extrapolated", extrapolated},
                              {"extrapolated_se", extrapolated_se},
                              {"tolerance", tolerance},
                              {"verdict", verdict_name(verdict)},
                              {"warnings", warnings},
                              {"extrapolation_model",
                               "linear in s (working hypothesis; no rate is guaranteed)"},
                              {"config", config_echo}};
    }
};

namespace detail {

inline ModularResult dispatch_seminorm(const testfn::TestFunction& u,
                                       const young::YoungFunction& A, double s,
                                       const QuadratureConfig& cfg) {
    if (u.dim == 1) return seminorm::frac_modular_1d(u, A, s, cfg);
    if ((u.dim == 2 || u.dim == 3) && u.radial_profile)
        return seminorm::frac_modular_radial(u, A, s, u.dim, cfg);
    throw error(errc::invalid_parameter,
                "limit_study: no deterministic seminorm engine for this u");
}

} // namespace detail

/// s -> 0+ study: computes s * J_s(u) over the s grid, extrapolates linearly
/// in s, and issues a verdict. ConvergesToTarget additionally requires that A
/// passed the Delta_2 diagnosis (the limit identity assumes it) and that the
/// propagated row errors are small against the declared tolerance.
inline LimitStudyResult limit_study(const testfn::TestFunction& u,
                                    const young::YoungFunction& A,
                                    std::vector<double> s_list, const QuadratureConfig& cfg,
                                    double tol,
                                    std::optional<double> target_override = std::nullopt) {
    require(s_list.size() >= 3, errc::invalid_parameter,
            "limit_study: need at least 3 values of s");
    for (double s : s_list)
        require(s > 0.0 && s < 1.0, errc::invalid_parameter, "limit_study: s must lie in (0,1)");
    std::sort(s_list.begin(), s_list.end(), std::greater<>());
    require(tol > 0.0, errc::invalid_parameter, "limit_study: tolerance must be positive");
    cfg.validate();

    LimitStudyResult out;
    out.tolerance = tol;
    out.config_echo = cfg.to_json();

    bool delta2_ok = true;
    try {
        auto d = young::delta2_diagnose(A, 1e-3, 1e3, 64);
        if (d.delta2_unbounded_on_grid) {
            delta2_ok = false;
            out.warnings.push_back(
                "A failed the Delta_2 diagnosis (ratio unbounded on grid); "
                "ConvergesToTarget is disabled for this study");
        }
    } catch (const error& e) {
        out.warnings.push_back(std::string("Delta_2 diagnosis failed: ") + e.what());
    }

    if (target_override) {
        out.target = *target_override;
    } else {
        try {
            out.target = modular::limit_target(u, A, cfg);
        } catch (const numeric_failure& nf) {
            out.target = std::numeric_limits<double>::quiet_NaN();
            out.warnings.push_back(std::string("limit target integral did not converge: ") +
                                   nf.what());
        }
    }

    out.rows = par::map_indexed<LimitRow>(s_list.size(), [&](std::size_t i) {
        LimitRow row;
        row.s = s_list[i];
        try {
            auto r = detail::dispatch_seminorm(u, A, row.s, cfg);
            row.value = row.s * r.value;
            row.abs_error = row.s * r.abs_error_estimate;
        } catch (const numeric_failure& nf) {
            row.ok = false;
            row.value = row.s * nf.partial_value();
            row.abs_error = std::numeric_limits<double>::infinity();
            row.note = std::string("captured lower bound; ") + nf.what();
        }
        return row;
    });

    std::vector<const LimitRow*> good;
    for (const auto& r : out.rows)
        if (r.ok) good.push_back(&r);
    require(good.size() >= 3, errc::study_failure,
            "limit_study: fewer than 3 rows computed successfully");

    // least squares v(s) = v0 + c s over the successful rows
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (auto* r : good) {
        sx += r->s; sy += r->value; sxx += r->s * r->s; sxy += r->s * r->value;
    }
    const double ng = static_cast<double>(good.size());
    const double denom = ng * sxx - sx * sx;
    out.extrapolated = (sy * sxx - sx * sxy) / denom;
    double se2 = 0.0;
    for (auto* r : good) {
        const double ai = (sxx - r->s * sx) / denom;  // intercept weight of this row
        se2 += ai * ai * r->abs_error * r->abs_error;
    }
    out.extrapolated_se = std::sqrt(se2);

    const double scale = std::max(std::abs(out.target), 1e-12);
    const bool within = std::isfinite(out.target) &&
                        std::abs(out.extrapolated - out.target) <= tol * scale;
    const bool errors_admit = out.extrapolated_se <= tol * scale;

    bool rising = out.rows.size() >= 2;
    for (std::size_t i = 0; i + 1 < out.rows.size(); ++i)
        if (!(out.rows[i + 1].value > out.rows[i].value)) rising = false;
    const bool big_factor = rising && out.rows.front().value > 0.0 &&
                            out.rows.back().value / out.rows.front().value >= 5.0;

    if (within && errors_admit && delta2_ok)
        out.verdict = Verdict::converges_to_target;
    else if (big_factor)
        out.verdict = Verdict::divergence_trend;
    else
        out.verdict = Verdict::inconclusive;
    return out;
}

/// Power-case convenience wrapper: A = t^p with the classical target
/// (2 omega_n / (n p)) int |u|^p dx, which must agree with the Abar-form
/// target to floating-point accuracy.
inline LimitStudyResult ms_power_study(const testfn::TestFunction& u, double p,
                                       std::vector<double> s_list, const QuadratureConfig& cfg,
                                       double tol) {
    const young::YoungFunction A = young::make_power(p);
    const double wn = unit_ball_volume(u.dim);
    const double target_power =
        2.0 * wn / (u.dim * p) * modular::orlicz_modular(u, A, 1.0, cfg).value;
    const double target_abar = modular::limit_target(u, A, cfg);
    auto out = limit_study(u, A, std::move(s_list), cfg, tol, target_power);
    const double rel = std::abs(target_power - target_abar) /
                       std::max(std::abs(target_power), 1e-300);
    out.config_echo["target_consistency_rel"] = rel;
    if (rel > 1e-10)
        out.warnings.push_back("power-form and Abar-form targets disagree beyond 1e-10");
    return out;
}

/// The explicit 1-D divergence lower bound of the counterexample:
/// (alpha^n / s) * int_{(4/(2-alpha))^s}^inf t^{1/s} (kappa + t^{1/s})^{-(lambda/(2 sigma))^gamma t^gamma} dt/t.
/// Evaluated in m = log t with the integrand exponent assembled in log space;
/// the symbolic constant C_{sigma,n} of the derivation is not part of the
/// returned quantity.
inline double counterexample_lower_bound(double s, double gamma, double lambda, double sigma,
                                         double kappa, double alpha, int n = 1) {
    require(s > 0.0 && s < 1.0, errc::invalid_parameter,
            "counterexample_lower_bound: requires s in (0,1)");
    require(gamma > 1.0, errc::invalid_parameter,
            "counterexample_lower_bound: requires gamma > 1");
    require(lambda > 1.0 && lambda < 2.0, errc::invalid_parameter,
            "counterexample_lower_bound: requires lambda in (1,2)");
    require(sigma > 0.5 * lambda && sigma < 1.0, errc::invalid_parameter,
            "counterexample_lower_bound: requires sigma in (lambda/2, 1)");
    require(kappa > 1.0, errc::invalid_parameter,
            "counterexample_lower_bound: requires kappa > 1");
    require(alpha > 0.0 && alpha < 2.0, errc::invalid_parameter,
            "counterexample_lower_bound: requires alpha in (0,2)");
    require(n >= 1, errc::invalid_parameter, "counterexample_lower_bound: requires n >= 1");

    const double c = std::pow(lambda / (2.0 * sigma), gamma);
    const double logk = std::log(kappa);
    auto log_kappa_plus = [&](double y) {   // log(kappa + e^y), overflow-safe
        return y > logk ? y + std::log1p(kappa * std::exp(-y))
                        : logk + std::log1p(std::exp(y) / kappa);
    };
    auto psi = [&](double m) { return m / s - c * std::exp(gamma * m) * log_kappa_plus(m / s); };

    const double m0 = s * std::log(4.0 / (2.0 - alpha));
    // coarse scan for the exponent peak, then integrate the scaled integrand
    double psi_max = psi(m0), m_peak = m0, m_hi = m0;
    for (double m = m0;; m += 0.02) {
        const double v = psi(m);
        if (v > psi_max) { psi_max = v; m_peak = m; }
        m_hi = m;
        if (m > m_peak + 1.0 && v < psi_max - 80.0) break;
        if (m > m0 + 2000.0) break;
    }
    auto f = [&](double m) { return std::exp(psi(m) - psi_max); };
    auto r = quad::adaptive(f, m0, m_hi, {1e-12, 1e-280, 4000},
                            std::vector<double>{m_peak});
    const double log_value = n * std::log(alpha) - std::log(s) + psi_max + std::log(r.value);
    return std::exp(log_value);
}

} // namespace orlicz::limits
