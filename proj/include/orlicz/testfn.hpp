#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "orlicz/errors.hpp"
#include "orlicz/special.hpp"

namespace orlicz::testfn {

enum class Structure { radial, compact, counterexample, general };

inline const char* structure_name(Structure s) {
    switch (s) {
        case Structure::radial: return "Radial";
        case Structure::compact: return "Compact";
        case Structure::counterexample: return "Counterexample";
        case Structure::general: return "General";
    }
    return "General";
}

/// An n-dimensional test function with the certificates the integration
/// engines need. The decay certificate is stored in log space: certificates
/// of the counterexample family grow like exp(n/t^gamma) and overflow double
/// precision long before the underlying bound stops being finite.
struct TestFunction {
    int dim = 1;
    std::string name = "custom";
    Structure structure = Structure::general;
    std::function<double(std::span<const double>)> eval;
    std::function<double(double)> decay_log_measure;  // log upper bound on |{|u|>t}|
    std::optional<double> lipschitz_constant;
    std::optional<double> sup_norm;
    std::optional<double> support_radius;
    std::optional<std::function<double(double)>> radial_profile;   // u(|x|), radial u only
    std::optional<std::function<double(double)>> radial_envelope;  // sup_{|x|>=rho} |u|
    std::vector<double> kinks;  // 1-D derivative breakpoints, for quadrature seeding
    std::vector<double> params;

    double eval1(double x) const { return eval(std::span<const double>(&x, 1)); }
    bool is_zero() const { return sup_norm && *sup_norm == 0.0; }
};

/// exp(decay_log_measure); may overflow to +inf in double even though the
/// bound itself is finite — use the log form for diagnostics.
inline double decay_certificate(const TestFunction& u, double t) {
    return std::exp(u.decay_log_measure(t));
}

inline TestFunction make_zero(int n = 1) {
    TestFunction u;
    u.dim = n;
    u.name = "zero";
    u.structure = Structure::general;
    u.eval = [](std::span<const double>) { return 0.0; };
    u.decay_log_measure = [](double) { return -std::numeric_limits<double>::infinity(); };
    u.lipschitz_constant = 0.0;
    u.sup_norm = 0.0;
    u.support_radius = 0.0;
    u.radial_profile = [](double) { return 0.0; };
    u.radial_envelope = [](double) { return 0.0; };
    return u;
}

/// u(x) = max(0, 1 - |x|) on the line.
inline TestFunction make_tent() {
    TestFunction u;
    u.dim = 1;
    u.name = "tent";
    u.structure = Structure::compact;
    u.eval = [](std::span<const double> x) { return std::max(0.0, 1.0 - std::abs(x[0])); };
    u.decay_log_measure = [](double t) {
        if (t >= 1.0) return -std::numeric_limits<double>::infinity();
        return std::log(2.0 * (1.0 - std::max(t, 0.0)));
    };
    u.lipschitz_constant = 1.0;
    u.sup_norm = 1.0;
    u.support_radius = 1.0;
    u.radial_profile = [](double r) { return std::max(0.0, 1.0 - r); };
    u.radial_envelope = [](double r) { return std::max(0.0, 1.0 - r); };
    u.kinks = {-1.0, 0.0, 1.0};
    return u;
}

/// u(x) = exp(-|x|), n in {1,2,3}. Level sets are balls of radius log(1/t).
inline TestFunction make_exp_decay(int n) {
    require(n >= 1 && n <= 3, errc::invalid_parameter, "make_exp_decay: requires 1 <= n <= 3");
    const double wn = unit_ball_volume(n);
    TestFunction u;
    u.dim = n;
    u.name = "exp_decay";
    u.structure = Structure::radial;
    u.eval = [](std::span<const double> x) {
        double s = 0.0;
        for (double xi : x) s += xi * xi;
        return std::exp(-std::sqrt(s));
    };
    u.decay_log_measure = [wn, n](double t) {
        if (t >= 1.0) return -std::numeric_limits<double>::infinity();
        return std::log(wn) + n * std::log(std::log(1.0 / t));
    };
    u.lipschitz_constant = 1.0;
    u.sup_norm = 1.0;
    u.radial_profile = [](double r) { return std::exp(-r); };
    u.radial_envelope = [](double r) { return std::exp(-std::max(r, 0.0)); };
    u.kinks = {0.0};
    u.params = {static_cast<double>(n)};
    return u;
}

/// The counterexample function: v(x) = x_1 / (|x| log^{1/gamma}(kappa+|x|))
/// outside the unit ball and its linear-in-x_1 continuation inside. Odd in
/// x_1, Lipschitz, decaying like log^{-1/gamma}(|x|).
inline TestFunction make_counterexample_v(int n, double gamma, double kappa = 1e6) {
    require(n >= 1, errc::invalid_parameter, "make_counterexample_v: requires n >= 1");
    require(gamma > 1.0, errc::invalid_parameter, "make_counterexample_v: requires gamma > 1");
    require(kappa > 1.0, errc::invalid_parameter, "make_counterexample_v: requires kappa > 1");
    const double inv_gamma = 1.0 / gamma;
    const double log_kp1 = std::pow(std::log(kappa + 1.0), inv_gamma);
    const double wn = n <= 3 ? unit_ball_volume(n) : 0.0;
    require(n <= 3, errc::invalid_parameter, "make_counterexample_v: supported dimensions 1..3");

    TestFunction u;
    u.dim = n;
    u.name = "counterexample_v";
    u.structure = Structure::counterexample;
    u.eval = [inv_gamma, kappa, log_kp1](std::span<const double> x) {
        double s = 0.0;
        for (double xi : x) s += xi * xi;
        const double r = std::sqrt(s);
        if (r < 1.0) return x[0] / log_kp1;
        return x[0] / (r * std::pow(std::log(kappa + r), inv_gamma));
    };
    // |v| <= log^{-1/gamma}(kappa+|x|) outside the unit ball, so the level set
    // {|v| > t} sits inside the ball of radius exp(t^-gamma). Crude but finite
    // for every t > 0, which is all that class membership requires.
    const double sup = 1.0 / log_kp1;
    u.decay_log_measure = [wn, n, gamma, sup](double t) {
        if (t >= sup) return -std::numeric_limits<double>::infinity();
        return std::log(wn) + n * std::pow(t, -gamma);
    };
    // paper-derived gradient bound outside the unit ball peaks at |x| = 1;
    // the explicit gradient inside is 1/log^{1/gamma}(kappa+1), dominated by it
    u.lipschitz_constant = kappa / log_kp1;
    u.sup_norm = sup;
    u.radial_envelope = [inv_gamma, kappa, sup](double r) {
        if (r <= 1.0) return sup;
        return 1.0 / std::pow(std::log(kappa + r), inv_gamma);
    };
    u.kinks = {-1.0, 0.0, 1.0};
    u.params = {static_cast<double>(n), gamma, kappa};
    return u;
}

/// The proof-side lower bound on kappa that keeps A_gamma on its exponential
/// branch: kappa > exp((2e/lambda)^gamma) - 1. Empty when the bound is not
/// representable in double precision (callers warn and proceed).
inline std::optional<double> counterexample_kappa_bound(double gamma, double lambda) {
    const double ex = std::pow(2.0 * 2.718281828459045 / lambda, gamma);
    if (ex > 700.0) return std::nullopt;
    return std::exp(ex) - 1.0;
}

/// u / lambda with certificates rescaled.
inline TestFunction scale(const TestFunction& u, double lambda) {
    require(lambda > 0.0, errc::invalid_parameter, "scale: requires lambda > 0");
    TestFunction v = u;
    v.name = u.name + "/" + std::to_string(lambda);
    auto base_eval = u.eval;
    v.eval = [base_eval, lambda](std::span<const double> x) { return base_eval(x) / lambda; };
    auto base_cert = u.decay_log_measure;
    v.decay_log_measure = [base_cert, lambda](double t) { return base_cert(lambda * t); };
    if (u.lipschitz_constant) v.lipschitz_constant = *u.lipschitz_constant / lambda;
    if (u.sup_norm) v.sup_norm = *u.sup_norm / lambda;
    if (u.radial_profile) {
        auto rp = *u.radial_profile;
        v.radial_profile = [rp, lambda](double r) { return rp(r) / lambda; };
    }
    if (u.radial_envelope) {
        auto re = *u.radial_envelope;
        v.radial_envelope = [re, lambda](double r) { return re(r) / lambda; };
    }
    return v;
}

} // namespace orlicz::testfn
