#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "orlicz/config.hpp"
#include "orlicz/errors.hpp"
#include "orlicz/modular.hpp"
#include "orlicz/quadrature.hpp"
#include "orlicz/seminorm.hpp"
#include "orlicz/special.hpp"
#include "orlicz/testfn.hpp"
#include "orlicz/young.hpp"

namespace orlicz::hardy {

enum class Verdict { holds, fails, inconclusive };

inline const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::holds: return "holds";
        case Verdict::fails: return "fails";
        case Verdict::inconclusive: return "inconclusive";
    }
    return "inconclusive";
}

/// Verdicts for the two integral conditions on (t/A(t))^{s/(n-s)}:
/// divergence of the integral near infinity and convergence near zero.
struct ConditionReport {
    Verdict near_zero = Verdict::inconclusive;      // convergence at 0 required
    Verdict near_infinity = Verdict::inconclusive;  // divergence at infinity required
    std::string detail;
    bool both_hold() const {
        return near_zero == Verdict::holds && near_infinity == Verdict::holds;
    }
};

/// Power-like asymptotics decide both conditions analytically; otherwise a
/// numeric probe classifies the local power slope of the integrand.
inline ConditionReport check_conditions(const young::YoungFunction& A, double s, int n) {
    require(s > 0.0 && s < 1.0, errc::invalid_parameter, "check_conditions: requires s in (0,1)");
    require(n >= 1 && s < n, errc::invalid_parameter, "check_conditions: requires s < n");
    const double w = s / (n - s);
    ConditionReport rep;
    if (A.asymptotics) {
        const auto [p0, pinf] = *A.asymptotics;
        rep.near_zero = (p0 - 1.0) * w < 1.0 ? Verdict::holds : Verdict::fails;
        rep.near_infinity = (pinf - 1.0) * w <= 1.0 ? Verdict::holds : Verdict::fails;
        rep.detail = "analytic: (p0-1)s/(n-s)=" + std::to_string((p0 - 1.0) * w) +
                     ", (pinf-1)s/(n-s)=" + std::to_string((pinf - 1.0) * w);
        return rep;
    }
    // numeric probe: local slope of log g against log t, g = (t/A(t))^w
    auto logg = [&](double t) { return w * (std::log(t) - A.log_eval(t)); };
    auto classify = [&](double t_a, double t_b, bool want_convergent) {
        const double slope = (logg(t_b) - logg(t_a)) / std::log(t_b / t_a);
        if (!std::isfinite(slope)) return want_convergent ? Verdict::fails : Verdict::holds;
        if (want_convergent)
            return slope > -0.95 ? Verdict::holds : (slope < -1.05 ? Verdict::fails
                                                                   : Verdict::inconclusive);
        return slope > -1.05 ? Verdict::holds : (slope < -0.95 ? Verdict::fails
                                                               : Verdict::inconclusive);
    };
    // near zero the integral must converge; integrands blowing up faster than
    // t^-1 (counterexample family: ~ exp(w/t^gamma)) fail
    const double lg1 = logg(1e-8), lg2 = logg(1e-7);
    if (lg1 > lg2 + std::log(1e3)) {
        rep.near_zero = Verdict::fails;  // growing without bound toward 0
    } else {
        rep.near_zero = classify(1e-8, 1e-6, true);
    }
    rep.near_infinity = classify(1e6, 1e8, false);
    rep.detail = "numeric probe";
    return rep;
}

/// The companion Young function B, built from the inverse-density formula:
/// b^{-1}(r) = (int_{a^{-1}(r)}^inf Phi(t)^{-n/s} a(t)^{-n/(n-s)} dt)^{s/(s-n)}
/// with Phi(t) = int_0^t a(rho)^{-s/(n-s)} drho. Tables over a log grid of r;
/// b is the numeric inverse and B its cumulative integral.
struct HardyCompanion {
    double s = 0.0;
    int n = 1;
    ConditionReport report;
    std::vector<double> r_grid, binv_grid;  // (r, b^-1(r))
    std::vector<double> t_grid, b_grid, B_grid;  // (t, b(t), B(t)) at t = b^-1 nodes
    // generalized inverse convention disclosed in exported metadata
    std::string convention =
        "a^{-1}(r) = inf{t : a(t) >= r}; a^{-1}(r) = +inf above sup a";

    double b_inverse(double r) const { return interp_loglog(r_grid, binv_grid, r); }
    double b(double t) const { return interp_loglog(t_grid, b_grid, t); }

    double B(double t) const {
        if (t <= 0.0) return 0.0;
        const auto& ts = t_grid;
        if (t <= ts.front()) {
            // local power head: b ~ b0 (t/t0)^q integrates in closed form
            const double q = local_slope(ts, b_grid, 1);
            return b_grid.front() * std::pow(t / ts.front(), q) * t / (q + 1.0);
        }
        auto it = std::upper_bound(ts.begin(), ts.end(), t);
        std::size_t i = std::min<std::size_t>(it - ts.begin() - 1, ts.size() - 2);
        auto r = quad::adaptive([&](double x) { return b(x); }, ts[i], t, {1e-10, 1e-300, 200});
        return B_grid[i] + r.value;
    }

    static double local_slope(const std::vector<double>& xs, const std::vector<double>& ys,
                              std::size_t i) {
        return std::log(ys[i + 1] / ys[i]) / std::log(xs[i + 1] / xs[i]);
    }

    static double interp_loglog(const std::vector<double>& xs, const std::vector<double>& ys,
                                double x) {
        if (x <= 0.0) return 0.0;
        if (x <= xs.front()) {
            const double q = local_slope(xs, ys, 0);
            return ys.front() * std::pow(x / xs.front(), q);
        }
        if (x >= xs.back()) {
            const double q = local_slope(xs, ys, xs.size() - 2);
            return ys.back() * std::pow(x / xs.back(), q);
        }
        auto it = std::upper_bound(xs.begin(), xs.end(), x);
        const std::size_t i = std::min<std::size_t>(it - xs.begin() - 1, xs.size() - 2);
        const double f = std::log(x / xs[i]) / std::log(xs[i + 1] / xs[i]);
        return std::exp((1.0 - f) * std::log(ys[i]) + f * std::log(ys[i + 1]));
    }
};

namespace detail {

/// inf{t : a(t) >= r}; +inf above sup a on the probed range.
inline double generalized_inverse(const std::function<double(double)>& a, double r) {
    double hi = 1.0;
    int grow = 0;
    while (a(hi) < r && grow++ < 1200) hi *= 2.0;
    if (a(hi) < r) return std::numeric_limits<double>::infinity();
    double lo = 0.0;
    for (int i = 0; i < 200 && (hi - lo) > 1e-14 * hi; ++i) {
        const double mid = 0.5 * (lo + hi);
        (a(mid) >= r ? hi : lo) = mid;
    }
    return hi;
}

/// Cumulative cache for Phi(t) = int_0^t a^{-s/(n-s)}; head below the first
/// node by log-panels, interior by per-cell quadrature.
struct PhiCache {
    std::vector<double> nodes, values;
    std::function<double(double)> integrand;

    double operator()(double t) const {
        if (t <= 0.0) return 0.0;
        if (t >= nodes.back()) {
            auto r = quad::adaptive(integrand, nodes.back(), t, {1e-11, 1e-300, 400});
            return values.back() + r.value;
        }
        auto it = std::upper_bound(nodes.begin(), nodes.end(), t);
        std::size_t i = it == nodes.begin() ? 0 : (it - nodes.begin() - 1);
        if (t < nodes.front()) {
            // scale-invariant head: redo the head panels down from t
            auto g = [&](double sp) {
                const double x = t * std::exp(-(sp));
                return integrand(x) * x;
            };
            auto r = quad::integrate_panels(g, 0.0, 3.0, 0.0, 700.0, {1e-11, 1e-300, 400});
            return r.value;
        }
        auto r = quad::adaptive(integrand, nodes[i], t, {1e-11, 1e-300, 400});
        return values[i] + r.value;
    }
};

} // namespace detail

inline HardyCompanion build_companion(const young::YoungFunction& A, double s, int n,
                                      const QuadratureConfig& cfg = {}) {
    HardyCompanion H;
    H.s = s;
    H.n = n;
    H.report = check_conditions(A, s, n);
    if (!H.report.both_hold())
        throw error(errc::construction_failure,
                    "build_companion: integral conditions on (t/A(t))^{s/(n-s)} not satisfied (" +
                        H.report.detail + ")");
    cfg.validate();
    const double w = s / (n - s);
    const auto a = A.deriv;

    detail::PhiCache phi;
    phi.integrand = [a, w](double rho) { return std::pow(a(rho), -w); };
    {
        const int m = 481;
        phi.nodes.resize(m);
        phi.values.resize(m);
        for (int i = 0; i < m; ++i)
            phi.nodes[i] = std::pow(10.0, -8.0 + 16.0 * i / (m - 1));
        auto head_fn = [&](double sp) {
            const double x = phi.nodes[0] * std::exp(-sp);
            return phi.integrand(x) * x;
        };
        auto head = quad::integrate_panels(head_fn, 0.0, 3.0, 0.0, 700.0, {1e-11, 1e-300, 400});
        phi.values[0] = head.value;
        for (int i = 1; i < m; ++i) {
            auto r = quad::adaptive(phi.integrand, phi.nodes[i - 1], phi.nodes[i],
                                    {1e-11, 1e-300, 400});
            phi.values[i] = phi.values[i - 1] + r.value;
        }
    }

    // outer improper integral in log t with a local power-law closing tail
    auto outer = [&](double t_from) -> double {
        auto f = [&](double t) {
            return std::pow(phi(t), -static_cast<double>(n) / s) *
                   std::pow(a(t), -static_cast<double>(n) / (n - s));
        };
        auto g = [&](double sig) {
            const double t = std::exp(sig);
            return f(t) * t;
        };
        auto body = quad::integrate_panels(g, std::log(t_from), 3.0, 0.0, 800.0,
                                           {1e-11, 1e-300, 800}, 1e-12);
        const double T = std::exp(body.end);
        const double q = std::log(f(T) / f(T * std::exp(-1.0)));  // slope over one log unit
        if (q >= -1.0)
            throw error(errc::construction_failure,
                        "build_companion: outer integrand decays like t^" + std::to_string(q) +
                            "; integral diverges (near-infinity condition)");
        return body.value + f(T) * T / (-q - 1.0);
    };

    const int m = 321;
    // r grid spanning the density's range over a wide t window
    std::vector<double> rprobe;
    for (int i = 0; i < m; ++i) {
        const double t = std::pow(10.0, -5.0 + 10.0 * i / (m - 1));
        const double v = a(t);
        if (v > 0.0 && std::isfinite(v)) rprobe.push_back(v);
    }
    require(!rprobe.empty(), errc::degenerate_input, "build_companion: density vanishes on probe");
    const double r_lo = rprobe.front() * 0.1, r_hi = rprobe.back() * 10.0;
    H.r_grid.resize(m);
    H.binv_grid.resize(m);
    for (int i = 0; i < m; ++i)
        H.r_grid[i] = r_lo * std::pow(r_hi / r_lo, static_cast<double>(i) / (m - 1));

    for (int i = 0; i < m; ++i) {
        const double ainv = detail::generalized_inverse(a, H.r_grid[i]);
        if (!std::isfinite(ainv)) {
            H.binv_grid[i] = std::numeric_limits<double>::infinity();
            continue;
        }
        const double I = outer(std::max(ainv, 1e-300));
        H.binv_grid[i] = std::pow(I, s / (s - n));
    }
    // drop non-finite tail entries (density bounded above)
    while (!H.binv_grid.empty() && !std::isfinite(H.binv_grid.back())) {
        H.binv_grid.pop_back();
        H.r_grid.pop_back();
    }
    require(H.binv_grid.size() >= 8, errc::construction_failure,
            "build_companion: too few finite b^-1 grid points");
    for (std::size_t i = 0; i + 1 < H.binv_grid.size(); ++i)
        if (H.binv_grid[i + 1] < H.binv_grid[i] * (1.0 - 1e-6))
            throw numeric_failure("build_companion: b^-1 grid not monotone", H.binv_grid[i],
                                  H.binv_grid[i] - H.binv_grid[i + 1]);

    // b at the nodes t_i = b^-1(r_i); cumulative B by per-cell quadrature
    H.t_grid = H.binv_grid;
    H.b_grid = H.r_grid;
    H.B_grid.resize(H.t_grid.size());
    {
        const double q0 = HardyCompanion::local_slope(H.t_grid, H.b_grid, 0);
        H.B_grid[0] = H.b_grid[0] * H.t_grid[0] / (q0 + 1.0);
        for (std::size_t i = 1; i < H.t_grid.size(); ++i) {
            auto r = quad::adaptive([&](double x) { return H.b(x); }, H.t_grid[i - 1],
                                    H.t_grid[i], {1e-10, 1e-300, 200});
            H.B_grid[i] = H.B_grid[i - 1] + r.value;
        }
    }
    return H;
}

/// Weighted-modular side of the Hardy inequality against the seminorm side:
/// finds the least C in the grid with
/// int B(|u|/|x|^s) dx <= (1-s) J_s(C u) (1 + 1e-3). Empty when none passes.
struct HardyCheckOutcome {
    std::optional<double> constant;
    double lhs = 0.0;
    std::vector<std::pair<double, double>> rhs_per_C;
};

inline HardyCheckOutcome hardy_check(const testfn::TestFunction& u,
                                     const young::YoungFunction& A, double s, int n,
                                     std::vector<double> C_grid,
                                     const QuadratureConfig& cfg = {}) {
    require(!C_grid.empty(), errc::invalid_parameter, "hardy_check: empty C grid");
    require(n == u.dim, errc::invalid_parameter, "hardy_check: u.dim must equal n");
    std::sort(C_grid.begin(), C_grid.end());
    HardyCompanion H = build_companion(A, s, n, cfg);
    HardyCheckOutcome out;

    if (u.is_zero()) {
        out.constant = C_grid.front();
        return out;
    }

    const quad::Options opt{1e-9, 1e-13, cfg.max_subdivisions};
    auto lhs_abs = [&](double rho) {
        const double uv = u.radial_profile ? std::abs((*u.radial_profile)(rho))
                                           : std::abs(u.eval1(rho));
        return uv == 0.0 ? 0.0 : H.B(uv * std::pow(rho, -s));
    };
    auto lhs_1 = [&](double x) {
        const double uv = std::abs(u.eval1(x));
        return uv == 0.0 ? 0.0 : H.B(uv * std::pow(std::abs(x), -s));
    };
    auto L = seminorm::detail::integrate_radialized(n, lhs_abs, lhs_1, 0.0, opt, 1e-13);
    if (!L.converged)
        throw numeric_failure("hardy_check: weighted modular not convergent", L.value,
                              L.tail_bound);
    out.lhs = L.value;

    for (double C : C_grid) {
        const testfn::TestFunction cu = testfn::scale(u, 1.0 / C);
        const ModularResult J = n == 1 ? seminorm::frac_modular_1d(cu, A, s, cfg)
                                       : seminorm::frac_modular_radial(cu, A, s, n, cfg);
        const double rhs = (1.0 - s) * J.value;
        out.rhs_per_C.emplace_back(C, rhs);
        if (out.lhs <= rhs * (1.0 + 1e-3)) {
            out.constant = C;
            break;
        }
    }
    return out;
}

} // namespace orlicz::hardy
