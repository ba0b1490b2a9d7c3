#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "orlicz/config.hpp"
#include "orlicz/errors.hpp"
#include "orlicz/quadrature.hpp"
#include "orlicz/special.hpp"

namespace orlicz::young {

enum class Family { power, power_log, exp_counterexample, custom };

inline constexpr double kExpCounterexampleDefaultT0 = 0.18393972058572116;  // 1/(2e)

/// A Young function: convex gauge A with A(0)=0 represented through its
/// left-continuous non-decreasing density a, A(t) = int_0^t a.
/// log_eval is the primary representation for ratio diagnostics; values of
/// the counterexample family underflow double precision long before their
/// logarithms become extreme.
struct YoungFunction {
    Family family = Family::custom;
    std::string name = "custom";
    std::function<double(double)> eval;
    std::function<double(double)> deriv;
    std::function<double(double)> log_eval;
    std::optional<std::function<double(double)>> abar_closed_form;
    std::optional<std::pair<double, double>> asymptotics;  // (p0, p_inf)

    double operator()(double t) const { return eval(t); }
};

inline YoungFunction make_power(double p) {
    require(p >= 1.0, errc::invalid_parameter, "make_power: requires p >= 1");
    YoungFunction A;
    A.family = Family::power;
    A.name = "power(p=" + std::to_string(p) + ")";
    A.eval = [p](double t) { return t <= 0.0 ? 0.0 : std::pow(t, p); };
    A.deriv = [p](double t) {
        if (t <= 0.0) return p == 1.0 ? 1.0 : 0.0;
        return p * std::pow(t, p - 1.0);
    };
    A.log_eval = [p](double t) {
        return t <= 0.0 ? -std::numeric_limits<double>::infinity() : p * std::log(t);
    };
    A.abar_closed_form = [p](double t) { return t <= 0.0 ? 0.0 : std::pow(t, p) / p; };
    A.asymptotics = std::pair{p, p};
    return A;
}

/// A(t) = t^p log(e + t); power growth perturbed by a slowly varying factor.
inline YoungFunction make_power_log(double p) {
    require(p >= 1.0, errc::invalid_parameter, "make_power_log: requires p >= 1");
    constexpr double e = 2.718281828459045;
    YoungFunction A;
    A.family = Family::power_log;
    A.name = "power_log(p=" + std::to_string(p) + ")";
    A.eval = [p](double t) { return t <= 0.0 ? 0.0 : std::pow(t, p) * std::log(e + t); };
    A.deriv = [p](double t) {
        if (t <= 0.0) return 0.0;
        return p * std::pow(t, p - 1.0) * std::log(e + t) + std::pow(t, p) / (e + t);
    };
    A.log_eval = [p](double t) {
        if (t <= 0.0) return -std::numeric_limits<double>::infinity();
        return p * std::log(t) + std::log(std::log(e + t));
    };
    A.asymptotics = std::pair{p, p};
    return A;
}

/// A(t) = sum_i c_i t^{p_i} with c_i > 0, p_i >= 1.
inline YoungFunction make_power_sum(std::vector<std::pair<double, double>> terms) {
    require(!terms.empty(), errc::invalid_parameter, "make_power_sum: no terms");
    double pmin = std::numeric_limits<double>::infinity(), pmax = 1.0;
    std::string label = "power_sum(";
    for (auto& [c, p] : terms) {
        require(c > 0.0 && p >= 1.0, errc::invalid_parameter,
                "make_power_sum: requires c > 0 and p >= 1");
        pmin = std::min(pmin, p);
        pmax = std::max(pmax, p);
        label += std::to_string(c) + "*t^" + std::to_string(p) + "+";
    }
    label.back() = ')';
    YoungFunction A;
    A.family = Family::custom;
    A.name = label;
    A.eval = [terms](double t) {
        if (t <= 0.0) return 0.0;
        double v = 0.0;
        for (auto& [c, p] : terms) v += c * std::pow(t, p);
        return v;
    };
    A.deriv = [terms](double t) {
        if (t <= 0.0) return 0.0;
        double v = 0.0;
        for (auto& [c, p] : terms) v += c * p * std::pow(t, p - 1.0);
        return v;
    };
    A.log_eval = [terms, pmin, pmax](double t) {
        if (t <= 0.0) return -std::numeric_limits<double>::infinity();
        const double q = t < 1.0 ? pmin : pmax;  // factor the dominant exponent
        double sum = 0.0;
        for (auto& [c, p] : terms) sum += c * std::pow(t, p - q);
        return q * std::log(t) + std::log(sum);
    };
    A.abar_closed_form = [terms](double t) {
        if (t <= 0.0) return 0.0;
        double v = 0.0;
        for (auto& [c, p] : terms) v += c * std::pow(t, p) / p;
        return v;
    };
    A.asymptotics = std::pair{pmin, pmax};
    return A;
}

/// The non-Delta_2 family: A(t) = exp(-1/t^gamma) on (0, t0], continued for
/// t > t0 by its tangent line (the minimal convex finite-valued extension;
/// the density stays non-decreasing because it is constant beyond t0).
/// t0 must stay within (0, 1/(2e)], which sits inside the convexity interval
/// (0, (gamma/(gamma+1))^{1/gamma}) for every gamma > 1.
inline YoungFunction make_exp_counterexample(double gamma,
                                             double t0 = kExpCounterexampleDefaultT0) {
    require(gamma > 1.0, errc::invalid_parameter,
            "make_exp_counterexample: requires gamma > 1");
    require(t0 > 0.0 && t0 <= kExpCounterexampleDefaultT0 + 1e-15, errc::invalid_parameter,
            "make_exp_counterexample: t0 must lie in (0, 1/(2e)]");
    const double A0 = std::exp(-std::pow(t0, -gamma));
    const double a0 = gamma * std::pow(t0, -gamma - 1.0) * A0;

    YoungFunction A;
    A.family = Family::exp_counterexample;
    A.name = "exp_counterexample(gamma=" + std::to_string(gamma) + ")";
    A.eval = [gamma, t0, A0, a0](double t) {
        if (t <= 0.0) return 0.0;
        if (t <= t0) return std::exp(-std::pow(t, -gamma));
        return A0 + a0 * (t - t0);
    };
    A.deriv = [gamma, t0, a0](double t) {
        if (t <= 0.0) return 0.0;
        if (t <= t0) return gamma * std::pow(t, -gamma - 1.0) * std::exp(-std::pow(t, -gamma));
        return a0;
    };
    A.log_eval = [gamma, t0, A0, a0](double t) {
        if (t <= 0.0) return -std::numeric_limits<double>::infinity();
        if (t <= t0) return -std::pow(t, -gamma);
        return std::log(A0 + a0 * (t - t0));
    };
    // int_0^t A(tau)/tau dtau = E1(t^-gamma)/gamma on the exponential branch;
    // the affine continuation integrates in closed form.
    A.abar_closed_form = [gamma, t0, A0, a0](double t) {
        if (t <= 0.0) return 0.0;
        const double head = expint_e1(std::pow(std::min(t, t0), -gamma)) / gamma;
        if (t <= t0) return head;
        return head + (A0 - a0 * t0) * std::log(t / t0) + a0 * (t - t0);
    };
    return A;
}

/// Piecewise density descriptor: each segment fixes a(t) on [t_start, next).
/// kind "power": a(t) = c t^q. kind "affine": a(t) = c + q (t - t_start).
struct PiecewiseSegment {
    double t_start = 0.0;
    enum class Kind { power, affine } kind = Kind::power;
    double c = 1.0;
    double q = 0.0;
};

inline YoungFunction make_piecewise(std::vector<PiecewiseSegment> segs) {
    require(!segs.empty() && segs.front().t_start == 0.0, errc::invalid_parameter,
            "make_piecewise: first segment must start at 0");
    for (std::size_t i = 0; i + 1 < segs.size(); ++i)
        require(segs[i].t_start < segs[i + 1].t_start, errc::invalid_parameter,
                "make_piecewise: breakpoints must increase");
    auto density = [segs](double t) -> double {
        if (t <= 0.0) return 0.0;
        std::size_t i = segs.size();
        while (i > 0 && segs[i - 1].t_start > t) --i;
        const auto& s = segs[i - 1];
        return s.kind == PiecewiseSegment::Kind::power
                   ? s.c * std::pow(t, s.q)
                   : s.c + s.q * (t - s.t_start);
    };
    // validate monotone non-negative density at breakpoints and samples
    double prev = 0.0;
    for (std::size_t i = 0; i < segs.size(); ++i) {
        const double lo = segs[i].t_start;
        const double hi = i + 1 < segs.size() ? segs[i + 1].t_start : lo + std::max(lo, 1.0);
        for (double t : {lo + 1e-12 * (hi - lo), 0.5 * (lo + hi), hi}) {
            const double v = density(t);
            require(v >= prev - 1e-12 * std::max(1.0, prev), errc::invalid_parameter,
                    "make_piecewise: density must be non-negative and non-decreasing");
            prev = std::max(prev, v);
        }
    }
    require(prev > 0.0, errc::degenerate_input, "make_piecewise: density identically zero");

    auto segment_mass = [](const PiecewiseSegment& s, double lo, double hi) {
        if (hi <= lo) return 0.0;
        if (s.kind == PiecewiseSegment::Kind::power)
            return s.c * (std::pow(hi, s.q + 1.0) - std::pow(lo, s.q + 1.0)) / (s.q + 1.0);
        const double dl = lo - s.t_start, dh = hi - s.t_start;
        return s.c * (dh - dl) + 0.5 * s.q * (dh * dh - dl * dl);
    };
    auto cumulative = [segs, segment_mass](double t) -> double {
        if (t <= 0.0) return 0.0;
        double acc = 0.0;
        for (std::size_t i = 0; i < segs.size(); ++i) {
            const double lo = segs[i].t_start;
            const double hi = i + 1 < segs.size() ? segs[i + 1].t_start
                                                  : std::numeric_limits<double>::infinity();
            if (t <= lo) break;
            acc += segment_mass(segs[i], lo, std::min(t, hi));
        }
        return acc;
    };

    YoungFunction A;
    A.family = Family::custom;
    A.name = "piecewise(" + std::to_string(segs.size()) + " segments)";
    A.eval = cumulative;
    A.deriv = density;
    A.log_eval = [cumulative](double t) {
        const double v = cumulative(t);
        return v > 0.0 ? std::log(v) : -std::numeric_limits<double>::infinity();
    };
    return A;
}

/// Invariant checks on a log grid; throws on violation.
inline void validate(const YoungFunction& A, double t_min = 1e-4, double t_max = 1e4,
                     int points = 48) {
    require(A.eval && A.deriv && A.log_eval, errc::invalid_parameter,
            "YoungFunction: eval/deriv/log_eval must be set");
    require(A.eval(0.0) == 0.0, errc::invalid_parameter, "YoungFunction: A(0) != 0");
    const double step = std::log(t_max / t_min) / (points - 1);
    double prev_a = -std::numeric_limits<double>::infinity();
    bool positive = false;
    for (int i = 0; i < points; ++i) {
        const double t = t_min * std::exp(i * step);
        const double a = A.deriv(t);
        require(a >= prev_a * (1.0 - 1e-12) - 1e-300, errc::invalid_parameter,
                "YoungFunction: density must be non-decreasing");
        prev_a = a;
        positive = positive || a > 0.0;
        if (i + 1 < points) {
            const double t2 = t_min * std::exp((i + 1) * step);
            const double mid = 0.5 * (t + t2);
            const double lhs = A.eval(mid);
            const double rhs = 0.5 * (A.eval(t) + A.eval(t2));
            require(lhs <= rhs * (1.0 + 1e-10) + 1e-300, errc::invalid_parameter,
                    "YoungFunction: midpoint convexity violated");
        }
    }
    require(positive, errc::degenerate_input, "YoungFunction: density identically zero on grid");
    // A(t) must agree with the integral of its density
    for (double t : {t_min * 10.0, 1.0, t_max / 10.0}) {
        auto r = quad::adaptive([&](double u) { return A.deriv(u); }, 0.0, t,
                                {1e-9, 1e-14, 2000});
        const double ref = A.eval(t);
        require(std::abs(r.value - ref) <= 1e-6 * std::max(ref, 1e-12) + 1e-12,
                errc::invalid_parameter,
                "YoungFunction: eval inconsistent with integral of density");
    }
}

/// Abar(t) = int_0^t A(tau)/tau dtau. Closed form when the family provides
/// one; otherwise quadrature in sigma = log tau, which removes the 1/tau
/// weight and reaches arbitrarily small tau. The lower cutoff is bounded by
/// A(tau)/tau <= A(cut)/cut for tau <= cut, so the dropped head is <= A(cut).
inline double abar(const YoungFunction& A, double t, const QuadratureConfig& cfg = {}) {
    require(t >= 0.0, errc::invalid_parameter, "abar: requires t >= 0");
    if (t == 0.0) return 0.0;
    if (A.abar_closed_form) return (*A.abar_closed_form)(t);
    cfg.validate();
    const double scale = std::max(A.eval(t), std::numeric_limits<double>::min());
    const double tol = std::max(cfg.abs_tol, cfg.rel_tol * scale) * 0.25;
    double sig_lo = std::log(t);
    while (A.eval(std::exp(sig_lo)) > tol && sig_lo > std::log(t) - 800.0) sig_lo -= 4.0;
    auto r = quad::adaptive([&](double sig) { return A.eval(std::exp(sig)); }, sig_lo,
                            std::log(t),
                            {cfg.rel_tol * 0.1, cfg.abs_tol * 0.1, cfg.max_subdivisions});
    if (!r.converged)
        throw numeric_failure("abar: quadrature did not converge", r.value,
                              r.error + A.eval(std::exp(sig_lo)));
    return r.value;
}

/// Abar packaged as a Young function itself. Its density is A(t)/t, which is
/// non-decreasing by convexity of A.
inline YoungFunction abar_function(const YoungFunction& A, const QuadratureConfig& cfg = {}) {
    YoungFunction B;
    B.family = Family::custom;
    B.name = "abar_of(" + A.name + ")";
    B.eval = [A, cfg](double t) { return abar(A, t, cfg); };
    B.deriv = [A](double t) { return t <= 0.0 ? 0.0 : A.eval(t) / t; };
    B.log_eval = [A, cfg](double t) {
        const double v = abar(A, t, cfg);
        return v > 0.0 ? std::log(v) : -std::numeric_limits<double>::infinity();
    };
    B.asymptotics = A.asymptotics;
    return B;
}

struct YoungDiagnostics {
    double delta2_sup_ratio = 0.0;      // sup A(2t)/A(t); may overflow to +inf
    double delta2_sup_log_ratio = 0.0;  // log-space value, always finite
    bool delta2_unbounded_on_grid = false;
    double matuszewska_index = 1.0;
    bool index_unbounded_on_grid = false;
    double growth_constant = 1.0;  // C with A(lambda t) <= C lambda^{I+1} A(t) on grid
};

/// sup over a log grid of A(2t)/A(t), ratios taken in log space. The
/// "unbounded-on-grid" flag fires when the ratio keeps growing monotonically
/// toward t_min and gains more than a factor 10^3 across the bottom decade.
inline YoungDiagnostics delta2_diagnose(const YoungFunction& A, double t_min, double t_max,
                                        int grid_points) {
    require(t_min > 0.0 && t_min < t_max, errc::invalid_parameter,
            "delta2_diagnose: requires 0 < t_min < t_max");
    require(grid_points >= 16, errc::invalid_parameter,
            "delta2_diagnose: requires grid_points >= 16");
    const double step = std::log(t_max / t_min) / (grid_points - 1);
    std::vector<double> ts(grid_points), lr(grid_points);
    for (int i = 0; i < grid_points; ++i) {
        ts[i] = t_min * std::exp(i * step);
        const double l1 = A.log_eval(ts[i]);
        const double l2 = A.log_eval(2.0 * ts[i]);
        require(std::isfinite(l1) && std::isfinite(l2), errc::degenerate_input,
                "delta2_diagnose: A vanishes on grid interior");
        lr[i] = l2 - l1;
    }
    YoungDiagnostics d;
    d.delta2_sup_log_ratio = *std::max_element(lr.begin(), lr.end());
    d.delta2_sup_ratio = std::exp(d.delta2_sup_log_ratio);

    // bottom decade: indices with t <= 10 t_min (at least the lowest quarter)
    int top = 0;
    while (top + 1 < grid_points && ts[top + 1] <= 10.0 * t_min) ++top;
    top = std::max(top, grid_points / 4);
    bool monotone = top >= 1;
    for (int i = 0; i < top; ++i)
        if (lr[i] <= lr[i + 1]) { monotone = false; break; }
    if (monotone && lr[0] - lr[top] > std::log(1e3)) d.delta2_unbounded_on_grid = true;
    return d;
}

inline std::vector<double> default_lambda_list() {
    std::vector<double> l;
    for (int k = 1; k <= 44; ++k) l.push_back(std::ldexp(1.0, k));
    return l;
}

inline std::vector<double> default_index_grid() {
    std::vector<double> g;
    const int n = 481;
    for (int i = 0; i < n; ++i) g.push_back(std::pow(10.0, -6.0 + 12.0 * i / (n - 1)));
    return g;
}

struct IndexEstimate {
    double index = 1.0;
    bool unbounded_on_grid = false;
    double growth_constant = 1.0;
};

/// Upper Matuszewska-Orlicz index: the limit over lambda of
/// log(sup_t A(lambda t)/A(t)) / log lambda. Finite-lambda estimates carry an
/// O(1/log lambda) bias for log-perturbed powers, so the sequence is fitted
/// against 1/log lambda over the largest lambdas and the intercept reported.
inline IndexEstimate matuszewska_index(const YoungFunction& A,
                                       std::vector<double> lambdas = default_lambda_list(),
                                       std::vector<double> t_grid = default_index_grid()) {
    require(lambdas.size() >= 3, errc::invalid_parameter,
            "matuszewska_index: need at least 3 lambda values");
    std::sort(lambdas.begin(), lambdas.end());
    require(lambdas.front() <= 2.0 && lambdas.back() >= 1024.0, errc::invalid_parameter,
            "matuszewska_index: lambda list must span [2, 2^10]");
    require(lambdas.front() > 1.0, errc::invalid_parameter,
            "matuszewska_index: requires lambda > 1");

    std::vector<double> logA(t_grid.size());
    for (std::size_t i = 0; i < t_grid.size(); ++i) logA[i] = A.log_eval(t_grid[i]);

    IndexEstimate est;
    std::vector<double> m(lambdas.size());
    for (std::size_t k = 0; k < lambdas.size(); ++k) {
        const double lam = lambdas[k];
        double best = -std::numeric_limits<double>::infinity();
        std::size_t arg = 0;
        for (std::size_t i = 0; i < t_grid.size(); ++i) {
            const double v = A.log_eval(lam * t_grid[i]) - logA[i];
            if (v > best) { best = v; arg = i; }
        }
        m[k] = best / std::log(lam);
        // sup still strictly growing at the small-t grid edge: unbounded on grid
        if (arg == 0 && k + 1 == lambdas.size() && t_grid.size() >= 2) {
            const double next = A.log_eval(lam * t_grid[1]) - logA[1];
            if (best > next + 1e-9 * std::max(1.0, std::abs(best)))
                est.unbounded_on_grid = true;
        }
    }
    if (est.unbounded_on_grid) {
        est.index = std::numeric_limits<double>::infinity();
        est.growth_constant = std::numeric_limits<double>::infinity();
        return est;
    }

    // least-squares intercept of m(lambda) against x = 1/log(lambda),
    // restricted to the largest half of the list (>= 3 points)
    const std::size_t nfit = std::max<std::size_t>(3, lambdas.size() / 2);
    const std::size_t first = lambdas.size() - nfit;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t k = first; k < lambdas.size(); ++k) {
        const double x = 1.0 / std::log(lambdas[k]);
        sx += x; sy += m[k]; sxx += x * x; sxy += x * m[k];
    }
    const double nf = static_cast<double>(nfit);
    const double denom = nf * sxx - sx * sx;
    est.index = denom != 0.0 ? (sy * sxx - sx * sxy) / denom : m.back();

    // witness constant for A(lambda t) <= C lambda^{I+1} A(t) over the grid,
    // restricted to lambda <= 2^10 as in the growth-bound property
    double logC = 0.0;
    for (double lam : lambdas) {
        if (lam > 1024.0) break;
        for (std::size_t i = 0; i < t_grid.size(); ++i) {
            const double v = A.log_eval(lam * t_grid[i]) - logA[i] -
                             (est.index + 1.0) * std::log(lam);
            logC = std::max(logC, v);
        }
    }
    est.growth_constant = std::exp(logC);
    return est;
}

/// Combined diagnostics record.
inline YoungDiagnostics young_diagnose(const YoungFunction& A, double t_min = 1e-3,
                                       double t_max = 1e3, int grid_points = 64) {
    YoungDiagnostics d = delta2_diagnose(A, t_min, t_max, grid_points);
    IndexEstimate ie = matuszewska_index(A);
    d.matuszewska_index = ie.index;
    d.index_unbounded_on_grid = ie.unbounded_on_grid;
    d.growth_constant = ie.growth_constant;
    return d;
}

} // namespace orlicz::young
