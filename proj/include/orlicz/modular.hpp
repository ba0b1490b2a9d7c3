#pragma once

#include <cmath>
#include <functional>

#include "orlicz/config.hpp"
#include "orlicz/errors.hpp"
#include "orlicz/quadrature.hpp"
#include "orlicz/special.hpp"
#include "orlicz/testfn.hpp"
#include "orlicz/young.hpp"

namespace orlicz::modular {

namespace detail {

/// Integrates G(u(x)) over R^n, G(0) = 0, driven by u's structure:
/// compact support -> adaptive on the support; decaying -> core interval plus
/// log-radius panels with a geometric closing bound. Radial u in n = 2, 3 is
/// reduced to its profile. Non-radial u in n >= 2 has no deterministic path.
template <class G>
ModularResult integrate_of_u(const testfn::TestFunction& u, G&& g,
                             const QuadratureConfig& cfg) {
    cfg.validate();
    ModularResult out;
    if (u.is_zero()) return out;

    const quad::Options opt{cfg.rel_tol * 0.25, cfg.abs_tol * 0.25, cfg.max_subdivisions};
    const double stop_abs = cfg.abs_tol * 0.125;

    if (u.dim == 1 && !u.radial_profile) {
        auto f = [&](double x) { return g(u.eval1(x)); };
        if (u.support_radius) {
            const double R = *u.support_radius;
            auto r = quad::adaptive(f, -R, R, opt, u.kinks);
            if (!r.converged)
                throw numeric_failure("orlicz modular: core quadrature stalled", r.value, r.error);
            out.value = r.value;
            out.abs_error_estimate = r.error;
            out.evaluations = r.evaluations;
            out.truncation_radius = R;
            return out;
        }
        const double X0 = cfg.outer_truncation > 0.0 ? cfg.outer_truncation : 2.0;
        auto core = quad::adaptive(f, -X0, X0, opt, u.kinks);
        out.evaluations = core.evaluations;
        // both tails in sigma = log|x|
        auto tail_fn = [&](double sig) {
            const double x = std::exp(sig);
            return (f(x) + f(-x)) * x;
        };
        auto tail = quad::integrate_panels(tail_fn, std::log(X0), 3.0, stop_abs, 700.0, opt);
        out.evaluations += tail.evaluations;
        out.truncation_radius = std::exp(tail.end);
        out.value = core.value + tail.value;
        out.abs_error_estimate = core.error + tail.error;
        if (!tail.converged)
            throw numeric_failure("orlicz modular: tail not convergent within truncation policy",
                                  out.value, tail.tail_bound);
        return out;
    }

    if (u.radial_profile) {
        const int n = u.dim;
        const double surf = unit_sphere_area(n);
        auto rad = *u.radial_profile;
        auto f = [&](double rho) {
            return surf * std::pow(rho, n - 1) * g(rad(rho));
        };
        const double R0 = u.support_radius
                              ? *u.support_radius
                              : (cfg.outer_truncation > 0.0 ? cfg.outer_truncation : 4.0);
        auto core = quad::adaptive(f, 0.0, R0, opt, u.kinks);
        out.evaluations = core.evaluations;
        out.value = core.value;
        out.abs_error_estimate = core.error;
        out.truncation_radius = R0;
        if (!u.support_radius) {
            auto tail = quad::integrate_panels(f, R0, 4.0, stop_abs, 4000.0, opt);
            out.evaluations += tail.evaluations;
            out.value += tail.value;
            out.abs_error_estimate += tail.error;
            out.truncation_radius = tail.end;
            if (!tail.converged)
                throw numeric_failure(
                    "orlicz modular: radial tail not convergent within truncation policy",
                    out.value, tail.tail_bound);
        }
        return out;
    }

    throw error(errc::invalid_parameter,
                "orlicz modular: no deterministic path for non-radial u in n >= 2");
}

} // namespace detail

/// int_{R^n} A(|u(x)| / lambda) dx.
inline ModularResult orlicz_modular(const testfn::TestFunction& u,
                                    const young::YoungFunction& A, double lambda,
                                    const QuadratureConfig& cfg = {}) {
    require(lambda > 0.0, errc::invalid_parameter, "orlicz_modular: requires lambda > 0");
    require(static_cast<bool>(u.decay_log_measure), errc::invalid_parameter,
            "orlicz_modular: u carries no decay certificate");
    return detail::integrate_of_u(
        u, [&](double t) { return A.eval(std::abs(t) / lambda); }, cfg);
}

/// Luxemburg norm: inf{lambda > 0 : modular(u, A, lambda) <= 1} by
/// exponential bracketing and bisection to relative width 1e-8.
inline double luxemburg_norm(const testfn::TestFunction& u, const young::YoungFunction& A,
                             const QuadratureConfig& cfg = {}) {
    if (u.is_zero()) return 0.0;
    QuadratureConfig tight = cfg;
    tight.rel_tol = std::min(cfg.rel_tol, 1e-10);
    tight.abs_tol = std::min(cfg.abs_tol, 1e-13);
    auto modular_at = [&](double lam) {
        try {
            return orlicz_modular(u, A, lam, tight).value;
        } catch (const numeric_failure& nf) {
            // a divergent tail means the modular certainly exceeds 1 only if
            // the captured part already does; otherwise give up honestly
            if (nf.partial_value() > 1.0) return nf.partial_value();
            throw;
        }
    };

    double lo = 1.0, hi = 1.0;
    double m = modular_at(1.0);
    if (m > 1.0) {
        for (int i = 0; i < 200 && m > 1.0; ++i) {
            lo = hi;
            hi *= 2.0;
            m = modular_at(hi);
        }
        require(m <= 1.0, errc::unbounded_norm,
                "luxemburg_norm: modular exceeds 1 for all lambda up to bracket cap");
    } else {
        for (int i = 0; i < 1100 && m <= 1.0; ++i) {
            hi = lo;
            lo *= 0.5;
            if (lo < 1e-300) return 0.0;
            m = modular_at(lo);
        }
        if (m <= 1.0) return 0.0;
    }
    // invariant: modular(lo) > 1 >= modular(hi)
    while ((hi - lo) / hi > 1e-8) {
        const double mid = 0.5 * (lo + hi);
        if (modular_at(mid) <= 1.0)
            hi = mid;
        else
            lo = mid;
    }
    return 0.5 * (lo + hi);
}

/// The analytic s->0+ target (2 omega_n / n) int Abar(|u|) dx.
inline double limit_target(const testfn::TestFunction& u, const young::YoungFunction& A,
                           const QuadratureConfig& cfg = {}) {
    const young::YoungFunction Ab = young::abar_function(A, cfg);
    auto r = detail::integrate_of_u(u, [&](double t) { return Ab.eval(std::abs(t)); }, cfg);
    return 2.0 * unit_ball_volume(u.dim) / u.dim * r.value;
}

} // namespace orlicz::modular
