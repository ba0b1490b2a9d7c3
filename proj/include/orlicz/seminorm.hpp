#pragma once

#include <array>
#include <cmath>
#include <random>

#include "orlicz/config.hpp"
#include "orlicz/errors.hpp"
#include "orlicz/modular.hpp"
#include "orlicz/parallel.hpp"
#include "orlicz/quadrature.hpp"
#include "orlicz/special.hpp"
#include "orlicz/testfn.hpp"
#include "orlicz/young.hpp"

namespace orlicz::seminorm {

namespace detail {

/// Largest tau_- with A(L e^{(1-s)tau}) / (1-s) <= eps. Solved through
/// log_eval so the counterexample family's underflow region stays exact.
/// This is the Lipschitz small-radius tail: |u(x)-u(x+r)| <= L r gives
/// integrand <= A(L e^{(1-s)tau}), and A(t)/t non-decreasing turns the
/// integral up to tau_- into the bound A(L e^{(1-s)tau_-}) / (1-s).
inline double left_window(const young::YoungFunction& A, double L, double s, double eps) {
    const double target = std::log(std::max(eps, 1e-290) * (1.0 - s));
    double tau = 0.0;
    while (tau > -2800.0 && A.log_eval(L * std::exp((1.0 - s) * tau)) > target) tau -= 6.0;
    return tau;
}

inline double left_tail_bound(const young::YoungFunction& A, double L, double s, double tau) {
    return A.eval(L * std::exp((1.0 - s) * tau)) / (1.0 - s);
}

inline double panel_width(double s) { return std::max(4.0, 1.5 / s); }

struct InnerResult {
    double value = 0.0;
    double error = 0.0;
    long long evaluations = 0;
};

} // namespace detail

/// J_s(u) for n = 1. Every unordered pair is parameterized by its point of
/// smaller modulus: J = 2 int_x int_{|y| >= |x|} A(|u(x)-u(y)|/|y-x|^s)
/// dy/|y-x| dx, with the y-integral taken in tau = log|y-x| over the two rays
/// leaving |x|. This keeps y on the far side of the bulk, so the outer decay
/// is driven by u(x) itself and no narrow log-radius features appear. The
/// r -> 0 tail uses the Lipschitz bound, the r -> infinity side log-radius
/// panels with a geometric closing bound and a machine-range cap.
inline ModularResult frac_modular_1d(const testfn::TestFunction& u,
                                     const young::YoungFunction& A, double s,
                                     const QuadratureConfig& cfg = {}) {
    require(s > 0.0 && s < 1.0, errc::invalid_parameter, "frac_modular_1d: requires s in (0,1)");
    require(u.dim == 1, errc::invalid_parameter, "frac_modular_1d: requires n = 1");
    require(u.lipschitz_constant.has_value() && u.sup_norm.has_value(), errc::invalid_parameter,
            "frac_modular_1d: deterministic engine needs Lipschitz and sup-norm data");
    cfg.validate();
    ModularResult out;
    if (u.is_zero()) return out;

    const double L = *u.lipschitz_constant;
    const quad::Options opt{cfg.rel_tol * 0.25, cfg.abs_tol * 0.25, cfg.max_subdivisions};
    const double eps_tail = cfg.abs_tol * 0.125;
    const double w = detail::panel_width(s);
    long long inner_evals = 0;

    // per-x budget for the analytic radius tails; integrates over x to O(eps_tail)
    auto eps_at = [&](double x) {
        const double lg = 1.0 + std::log1p(std::abs(x));
        return eps_tail / (16.0 * (1.0 + std::abs(x)) * lg * lg);
    };

    auto inner = [&](double x) -> double {
        const double ux = u.eval1(x);
        const double eps_x = eps_at(x);
        const double tau_m = cfg.window_is_auto() ? detail::left_window(A, L, s, eps_x)
                                                  : cfg.log_radius_lo;
        double total = 0.0;
        for (int dir : {+1, -1}) {
            // ray y = x + dir*r with |y| >= |x| forces r >= 2|x| on one side
            const double rmin = dir > 0 ? std::max(0.0, -2.0 * x) : std::max(0.0, 2.0 * x);
            const double lo = rmin > 0.0 ? std::log(rmin) : tau_m;
            auto f = [&](double tau) {
                const double r = std::exp(tau);
                return A.eval(std::abs(ux - u.eval1(x + dir * r)) * std::exp(-s * tau));
            };
            const double core_hi = std::max(std::log(std::abs(x) + 4.0), lo + 1.0);
            std::vector<double> bps;
            for (double k : u.kinks) {
                const double rk = dir * (k - x);
                if (rk > 0.0) {
                    const double tk = std::log(rk);
                    if (tk > lo && tk < core_hi) bps.push_back(tk);
                }
            }
            auto core = quad::adaptive(f, lo, core_hi, opt, bps);
            auto tail = quad::integrate_panels(f, core_hi, w, eps_x * 0.25, 3000.0, opt);
            inner_evals += core.evaluations + tail.evaluations;
            if (!tail.converged)
                throw numeric_failure("frac_modular_1d: radius tail not convergent",
                                      core.value + tail.value, tail.tail_bound);
            total += core.value + tail.value;
        }
        return total;
    };

    const double X0 = cfg.outer_truncation > 0.0
                          ? cfg.outer_truncation
                          : (u.support_radius ? *u.support_radius : 2.0);
    auto core = quad::adaptive(inner, -X0, X0, opt, u.kinks);
    out.evaluations = core.evaluations;
    double tail_value = 0.0, tail_error = 0.0, x_end = X0;
    bool tail_ok = true;
    double tail_bound = 0.0;
    if (!u.support_radius) {
        // pairs with both points outside the support vanish, so the outer
        // tail only exists for decaying, non-compact u
        auto tail_fn = [&](double sig) {
            const double x = std::exp(sig);
            return (inner(x) + inner(-x)) * x;
        };
        auto tail = quad::integrate_panels(tail_fn, std::log(X0), 3.0, eps_tail * 0.25, 600.0,
                                           opt);
        tail_value = tail.value;
        tail_error = tail.error;
        x_end = std::exp(tail.end);
        tail_ok = tail.converged;
        tail_bound = tail.tail_bound * x_end;
        out.evaluations += tail.evaluations;
    }
    out.value = 2.0 * (core.value + tail_value);
    out.abs_error_estimate = 2.0 * (core.error + tail_error + eps_tail);
    out.evaluations += inner_evals;
    out.truncation_radius = x_end;
    if (!core.converged)
        throw numeric_failure("frac_modular_1d: outer quadrature stalled", out.value,
                              core.error);
    if (!tail_ok)
        throw numeric_failure(
            "frac_modular_1d: outer integral truncated at the machine-range cap; "
            "captured value is a lower bound",
            out.value, tail_bound);
    return out;
}

/// J_s(u) for radial u with a non-increasing profile, n = 2 or 3. Pairs are
/// parameterized by the point of smaller modulus, which restricts the sphere
/// angle to theta <= theta_c(r, rho) = acos(-r / (2 rho)) clamped to [0, pi]:
/// J = 2 n omega_n int rho^{n-1} int_r (1/r) c_n
///       int_0^{theta_c} A(|u(rho) - u(rho')| r^{-s}) sin^{n-2}(theta) dtheta
/// with rho' = sqrt((rho-r)^2 + 4 rho r cos^2(theta/2)) >= rho. The outer
/// decay is then driven by u(rho) and truncates like u itself.
inline ModularResult frac_modular_radial(const testfn::TestFunction& u,
                                         const young::YoungFunction& A, double s, int n,
                                         const QuadratureConfig& cfg = {}) {
    require(s > 0.0 && s < 1.0, errc::invalid_parameter,
            "frac_modular_radial: requires s in (0,1)");
    require(n == 2 || n == 3, errc::invalid_parameter, "frac_modular_radial: requires n in {2,3}");
    require(u.dim == n, errc::invalid_parameter, "frac_modular_radial: u.dim must equal n");
    require(u.radial_profile.has_value(), errc::invalid_parameter,
            "frac_modular_radial: requires a radial profile");
    require(u.lipschitz_constant.has_value() && u.sup_norm.has_value(), errc::invalid_parameter,
            "frac_modular_radial: deterministic engine needs Lipschitz and sup-norm data");
    cfg.validate();
    ModularResult out;
    if (u.is_zero()) return out;

    const auto ur = *u.radial_profile;
    const double L = *u.lipschitz_constant;
    const double surf = unit_sphere_area(n);
    constexpr double pi = 3.14159265358979323846;
    const double cn = n == 2 ? 2.0 : 2.0 * pi;
    const quad::Options opt{cfg.rel_tol * 0.25, cfg.abs_tol * 0.25, cfg.max_subdivisions};
    const quad::Options opt_ang{cfg.rel_tol * 0.1, cfg.abs_tol * 0.05, 400};
    const double eps_tail = cfg.abs_tol * 0.125;
    const double w = detail::panel_width(s);

    long long evals = 0;

    auto mid = [&](double rho, double eps_x) -> double {
        const double urho = ur(rho);
        auto angular = [&](double tau) {
            const double r = std::exp(tau);
            const double es = std::exp(-s * tau);
            const double cosc = rho > 0.0 ? std::max(-1.0, -r / (2.0 * rho)) : -1.0;
            const double theta_c = std::acos(cosc);
            auto g = [&](double th) {
                const double c = std::cos(0.5 * th);
                const double rp = std::sqrt((rho - r) * (rho - r) + 4.0 * rho * r * c * c);
                const double v = A.eval(std::abs(urho - ur(rp)) * es);
                return n == 2 ? v : v * std::sin(th);
            };
            auto ra = quad::adaptive(g, 0.0, theta_c, opt_ang);
            evals += ra.evaluations;
            return cn * ra.value;
        };
        const double tau_m = cfg.window_is_auto() ? detail::left_window(A, L, s, eps_x)
                                                  : cfg.log_radius_lo;
        auto core = quad::adaptive(angular, tau_m, std::log(rho + 4.0), opt);
        auto tail = quad::integrate_panels(angular, std::log(rho + 4.0), w, eps_x * 0.25,
                                           2500.0, opt);
        if (!tail.converged)
            throw numeric_failure("frac_modular_radial: radius tail not convergent",
                                  core.value + tail.value, tail.tail_bound);
        return core.value + tail.value;
    };

    const double R0 = cfg.outer_truncation > 0.0 ? cfg.outer_truncation
                                                 : (u.support_radius ? *u.support_radius : 8.0);
    // per-rho tail budget eps_tail/64 integrates over the outer range to a
    // contribution comparable to eps_tail
    auto f = [&](double rho) { return surf * std::pow(rho, n - 1) * mid(rho, eps_tail / 64.0); };
    auto core = quad::adaptive(f, 0.0, R0, opt, u.kinks);
    out.value = core.value;
    out.abs_error_estimate = core.error;
    out.evaluations = evals + core.evaluations;
    out.truncation_radius = R0;
    if (!u.support_radius) {
        auto tail = quad::integrate_panels(f, R0, 4.0, eps_tail * 0.25, 400.0, opt);
        out.value += tail.value;
        out.abs_error_estimate += tail.error;
        out.evaluations += tail.evaluations;
        out.truncation_radius = tail.end;
        if (!tail.converged)
            throw numeric_failure("frac_modular_radial: outer tail not convergent", out.value,
                                  tail.tail_bound);
    }
    out.value *= 2.0;
    out.abs_error_estimate = 2.0 * out.abs_error_estimate + eps_tail;
    return out;
}

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

} // namespace detail

/// Monte Carlo estimate of J_s(u). The displacement z = y - x is sampled with
/// log-uniform radius on [e^{tau_-}, e^{tau_+}] and uniform direction, whose
/// density cancels the kernel 1/|z|^n exactly; x is uniform on [-X, X]^n.
/// Pairs are counted from their point of smaller modulus (J = 2 int over
/// |x| <= |y|), so the box only needs to cover the decay scale of u, not the
/// radius window. Truncation bias (radius window, box) is bounded
/// analytically and reported in abs_error_estimate. Batches use counter-based
/// RNG streams, so the estimate is bit-identical for a fixed seed regardless
/// of thread count.
inline ModularResult frac_modular_mc(const testfn::TestFunction& u,
                                     const young::YoungFunction& A, double s, int n,
                                     const QuadratureConfig& cfg = {}) {
    require(s > 0.0 && s < 1.0, errc::invalid_parameter, "frac_modular_mc: requires s in (0,1)");
    require(n == u.dim && n >= 1 && n <= 3, errc::invalid_parameter,
            "frac_modular_mc: requires u.dim = n in 1..3");
    require(u.sup_norm.has_value(), errc::invalid_parameter,
            "frac_modular_mc: needs a sup-norm bound");
    cfg.validate_mc();
    ModularResult out;
    out.method = Method::monte_carlo;
    if (u.is_zero()) {
        out.standard_error = 0.0;
        return out;
    }

    double Rr = 1.0;
    if (u.support_radius) {
        Rr = std::max(1.0, *u.support_radius);
    } else if (u.radial_envelope) {
        const auto& env = *u.radial_envelope;
        Rr = 1.0;
        while (env(Rr) > 1e-3 * *u.sup_norm && Rr < 1e6) Rr *= 2.0;
    }
    const double tau_lo = cfg.window_is_auto() ? std::log(1e-6 * Rr) : cfg.log_radius_lo;
    const double tau_hi = cfg.window_is_auto() ? std::log(4096.0 * Rr) : cfg.log_radius_hi;
    const double X = cfg.outer_truncation > 0.0 ? cfg.outer_truncation
                                                : (u.support_radius ? *u.support_radius
                                                                    : 2.0 * Rr);
    const double weight = std::pow(2.0 * X, n) * (tau_hi - tau_lo) * unit_sphere_area(n);

    const int batches = 256;
    const long long per_batch = (cfg.mc_samples + batches - 1) / batches;
    const long long total = static_cast<long long>(batches) * per_batch;

    auto batch_mean = [&](std::size_t b) -> double {
        std::mt19937_64 rng(detail::splitmix64(cfg.rng_seed ^ (0x5851f42d4c957f2dULL * (b + 1))));
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        double acc = 0.0;
        std::array<double, 3> xv{}, yv{};
        for (long long i = 0; i < per_batch; ++i) {
            const double tau = tau_lo + (tau_hi - tau_lo) * unit(rng);
            const double r = std::exp(tau);
            std::array<double, 3> dir{};
            if (n == 1) {
                dir[0] = unit(rng) < 0.5 ? -1.0 : 1.0;
            } else if (n == 2) {
                const double phi = 2.0 * 3.14159265358979323846 * unit(rng);
                dir = {std::cos(phi), std::sin(phi), 0.0};
            } else {
                const double c = 2.0 * unit(rng) - 1.0;
                const double sn = std::sqrt(std::max(0.0, 1.0 - c * c));
                const double phi = 2.0 * 3.14159265358979323846 * unit(rng);
                dir = {sn * std::cos(phi), sn * std::sin(phi), c};
            }
            double nx2 = 0.0, ny2 = 0.0;
            for (int d = 0; d < n; ++d) {
                xv[d] = X * (2.0 * unit(rng) - 1.0);
                yv[d] = xv[d] + r * dir[d];
                nx2 += xv[d] * xv[d];
                ny2 += yv[d] * yv[d];
            }
            if (nx2 > ny2) continue;  // pairs are counted from the smaller end
            const double du = u.eval(std::span<const double>(xv.data(), n)) -
                              u.eval(std::span<const double>(yv.data(), n));
            acc += 2.0 * A.eval(std::abs(du) * std::exp(-s * tau));
        }
        return acc / static_cast<double>(per_batch);
    };

    std::vector<double> means = par::map_indexed<double>(batches, batch_mean);
    double mean = 0.0;
    for (double m : means) mean += m;
    mean /= batches;
    double var = 0.0;
    for (double m : means) var += (m - mean) * (m - mean);
    var /= (batches - 1.0);

    out.value = weight * mean;
    out.standard_error = weight * std::sqrt(var / batches);
    out.evaluations = total;
    out.truncation_radius = X;

    // analytic truncation-bias bounds: the radius window via the exact
    // remainder identity with |u(x)-u(y)| <= 2 max |u| at the smaller end,
    // the box via the decay envelope, the small radii via the Lipschitz bound
    double bias = 0.0;
    try {
        auto far = modular::detail::integrate_of_u(
            u,
            [&](double t) {
                return young::abar(A, 2.0 * std::abs(t) * std::exp(-s * tau_hi), cfg);
            },
            cfg);
        bias += 2.0 * unit_sphere_area(n) / s * far.value;
    } catch (const error&) {
        bias += std::numeric_limits<double>::quiet_NaN();
    }
    if (u.radial_envelope && !u.support_radius) {
        const double envX = (*u.radial_envelope)(X);
        bias += 2.0 * unit_sphere_area(n) / s *
                young::abar(A, 2.0 * envX * std::exp(-s * tau_lo), cfg) * std::pow(2.0 * X, n);
    }
    if (u.lipschitz_constant)
        bias += std::pow(2.0 * X, n) * unit_sphere_area(n) *
                detail::left_tail_bound(A, *u.lipschitz_constant, s, tau_lo);
    out.abs_error_estimate = bias;

    const double rel_se = *out.standard_error / std::max(out.value, 1e-300);
    if (rel_se > cfg.rel_tol)
        out.warning = "relative standard error above rel_tol at sample budget";
    return out;
}

namespace detail {

/// Integrates h over R^n (h depends on the point only through |x| for n >= 2)
/// with log-radius panels toward both 0 and infinity. h1 is used on the line
/// (n = 1), where the two half-lines may differ.
inline quad::TailResult integrate_radialized(int n, const std::function<double(double)>& h_abs,
                                             const std::function<double(double)>& h1,
                                             double decade_anchor, const quad::Options& opt,
                                             double stop_abs) {
    auto g = [&](double sig) {
        const double x = std::exp(sig);
        if (n == 1) return (h1(x) + h1(-x)) * x;
        return unit_sphere_area(n) * std::pow(x, n) * h_abs(x);
    };
    quad::TailResult total;
    auto up = quad::integrate_panels(g, decade_anchor, 3.0, stop_abs, 700.0, opt);
    auto down = quad::integrate_panels([&](double sp) { return g(decade_anchor - (sp - decade_anchor)); },
                                       decade_anchor, 3.0, stop_abs, 700.0, opt);
    total.value = up.value + down.value;
    total.error = up.error + down.error;
    total.tail_bound = up.tail_bound + down.tail_bound;
    total.evaluations = up.evaluations + down.evaluations;
    total.converged = up.converged && down.converged;
    total.end = up.end;
    return total;
}

} // namespace detail

/// Relative residual of the exact shell identity: the reduced left-hand side
/// (omega_n/n) int_x int_{2|x|}^inf A(|u(x)|/r^s) dr/r dx against
/// (omega_n/(n s)) int_x Abar(|u(x)| / (2^s |x|^s)) dx. The radius integral on
/// the left and Abar on the right are evaluated by independent quadratures, so
/// the residual gauges quadrature quality only.
inline double shell_identity_residual(const testfn::TestFunction& u,
                                      const young::YoungFunction& A, double s, int n,
                                      const QuadratureConfig& cfg = {}) {
    require(s > 0.0 && s < 1.0, errc::invalid_parameter,
            "shell_identity_residual: requires s in (0,1)");
    require(n == u.dim, errc::invalid_parameter, "shell_identity_residual: u.dim must equal n");
    if (n >= 2)
        require(u.radial_profile.has_value(), errc::invalid_parameter,
                "shell_identity_residual: n >= 2 needs radial u");
    cfg.validate();
    const double wn = unit_ball_volume(n);
    const quad::Options opt{1e-11, 1e-15, cfg.max_subdivisions};
    const double w = detail::panel_width(s);

    auto uval_abs = [&](double rho) {
        return u.radial_profile ? std::abs((*u.radial_profile)(rho)) : std::abs(u.eval1(rho));
    };

    auto lhs_point = [&](double uval, double absx) -> double {
        if (uval == 0.0) return 0.0;
        auto f = [&](double tau) { return A.eval(uval * std::exp(-s * tau)); };
        auto t = quad::integrate_panels(f, std::log(2.0 * absx), w, 0.0, 3000.0, opt, 1e-13);
        return wn / n * t.value;
    };
    auto rhs_point = [&](double uval, double absx) -> double {
        if (uval == 0.0) return 0.0;
        return wn / (n * s) *
               young::abar(A, uval * std::pow(2.0 * absx, -s), cfg);
    };

    auto lhs_abs = [&](double rho) { return lhs_point(uval_abs(rho), rho); };
    auto lhs_1 = [&](double x) { return lhs_point(std::abs(u.eval1(x)), std::abs(x)); };
    auto rhs_abs = [&](double rho) { return rhs_point(uval_abs(rho), rho); };
    auto rhs_1 = [&](double x) { return rhs_point(std::abs(u.eval1(x)), std::abs(x)); };

    auto L = detail::integrate_radialized(n, lhs_abs, lhs_1, 0.0, opt, 1e-15);
    auto R = detail::integrate_radialized(n, rhs_abs, rhs_1, 0.0, opt, 1e-15);
    if (!L.converged || !R.converged)
        throw numeric_failure("shell_identity_residual: outer integral not convergent",
                              L.value, L.tail_bound + R.tail_bound);
    return std::abs(L.value - R.value) / std::max(R.value, 1e-300);
}

/// Relative residual of int_t^inf A((1+eps) rho / r^s) dr/r (quadrature in
/// log r) against (1/s) Abar((1+eps) rho / t^s).
inline double radial_identity_residual(const young::YoungFunction& A, double rho, double t,
                                       double s, double eps,
                                       const QuadratureConfig& cfg = {}) {
    require(rho > 0.0 && t > 0.0, errc::invalid_parameter,
            "radial_identity_residual: requires rho > 0 and t > 0");
    require(s > 0.0 && s < 1.0, errc::invalid_parameter,
            "radial_identity_residual: requires s in (0,1)");
    require(eps >= 0.0, errc::invalid_parameter, "radial_identity_residual: requires eps >= 0");
    cfg.validate();
    const double c = (1.0 + eps) * rho;
    const quad::Options opt{1e-12, 1e-320, cfg.max_subdivisions};
    auto f = [&](double tau) { return A.eval(c * std::exp(-s * tau)); };
    auto lhs = quad::integrate_panels(f, std::log(t), detail::panel_width(s), 0.0, 1e5, opt);
    const double rhs = young::abar(A, c * std::pow(t, -s), cfg) / s;
    return std::abs(lhs.value - rhs) / std::max(rhs, 1e-300);
}

} // namespace orlicz::seminorm
