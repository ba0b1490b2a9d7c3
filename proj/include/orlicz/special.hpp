#pragma once

#include <cmath>

#include "orlicz/errors.hpp"

namespace orlicz {

/// Lebesgue measure of the unit ball in R^n. Exact half-integer Gamma values
/// for the supported dimensions; no general Gamma evaluation needed.
inline double unit_ball_volume(int n) {
    constexpr double pi = 3.14159265358979323846;
    switch (n) {
        case 1: return 2.0;
        case 2: return pi;
        case 3: return 4.0 * pi / 3.0;
    }
    throw error(errc::invalid_parameter, "unit_ball_volume: supported dimensions are 1..3");
}

/// (n-1)-measure of the unit sphere in R^n.
inline double unit_sphere_area(int n) { return n * unit_ball_volume(n); }

/// Exponential integral E1(x) = int_x^inf e^-w / w dw, x > 0.
/// Underflows to 0 for large x, which is the correct limit.
inline double expint_e1(double x) {
    if (x <= 0.0) throw error(errc::invalid_parameter, "expint_e1: requires x > 0");
    if (x > 740.0) return 0.0;
    return -std::expint(-x);
}

/// log(a + b) given la = log a, lb = log b, stable for wildly different scales.
inline double log_add(double la, double lb) {
    if (la == -std::numeric_limits<double>::infinity()) return lb;
    if (lb == -std::numeric_limits<double>::infinity()) return la;
    double hi = std::max(la, lb), lo = std::min(la, lb);
    return hi + std::log1p(std::exp(lo - hi));
}

} // namespace orlicz
