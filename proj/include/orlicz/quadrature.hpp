#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "orlicz/errors.hpp"

namespace orlicz::quad {

struct Result {
    double value = 0.0;
    double error = 0.0;      // estimated absolute error
    long long evaluations = 0;
    bool converged = true;
};

namespace detail {

// 15-point Kronrod extension of the 7-point Gauss rule (QUADPACK QK15).
inline constexpr double xgk[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};
inline constexpr double wgk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};
inline constexpr double wg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

template <class F>
Result kronrod15(F&& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);

    double fv[15];
    const double fc = f(c);
    double resg = wg[3] * fc;
    double resk = wgk[7] * fc;
    double resabs = std::abs(resk);
    for (int j = 0; j < 7; ++j) {
        const double dx = h * xgk[j];
        const double f1 = f(c - dx);
        const double f2 = f(c + dx);
        fv[j] = f1;
        fv[14 - j] = f2;
        if (j % 2 == 1) resg += wg[j / 2] * (f1 + f2);
        resk += wgk[j] * (f1 + f2);
        resabs += wgk[j] * (std::abs(f1) + std::abs(f2));
    }
    fv[7] = fc;
    const double mean = resk * 0.5;
    double resasc = wgk[7] * std::abs(fc - mean);
    for (int j = 0; j < 7; ++j)
        resasc += wgk[j] * (std::abs(fv[j] - mean) + std::abs(fv[14 - j] - mean));

    resabs *= std::abs(h);
    resasc *= std::abs(h);

    Result r;
    r.value = resk * h;
    r.evaluations = 15;
    double err = std::abs((resk - resg) * h);
    if (resasc != 0.0 && err != 0.0)
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    const double eps = std::numeric_limits<double>::epsilon();
    const double underflow = std::numeric_limits<double>::min();
    if (resabs > underflow / (50.0 * eps))
        err = std::max(err, 50.0 * eps * resabs);
    r.error = err;
    return r;
}

struct Interval {
    double a, b, value, error;
};

} // namespace detail

struct Options {
    double rel_tol = 1e-10;
    double abs_tol = 1e-14;
    int max_subdivisions = 4000;
};

/// Globally adaptive Gauss-Kronrod integration on [a, b], bisecting the
/// interval with the largest error estimate. `breakpoints` seeds the initial
/// partition (kinks, support edges); points outside (a, b) are ignored.
/// Deterministic: subdivision order depends only on f and the inputs.
template <class F>
Result adaptive(F&& f, double a, double b, const Options& opt = {},
                std::span<const double> breakpoints = {}) {
    Result total;
    if (!(a < b)) return total;

    std::vector<double> edges{a, b};
    for (double p : breakpoints)
        if (p > a && p < b) edges.push_back(p);
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

    std::vector<detail::Interval> segs;
    segs.reserve(64);
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
        auto r = detail::kronrod15(f, edges[i], edges[i + 1]);
        segs.push_back({edges[i], edges[i + 1], r.value, r.error});
        total.evaluations += r.evaluations;
    }

    auto sums = [&] {
        double v = 0.0, e = 0.0;
        for (const auto& s : segs) { v += s.value; e += s.error; }
        return std::pair{v, e};
    };

    int splits = 0;
    while (true) {
        auto [v, e] = sums();
        const double target = std::max(opt.abs_tol, opt.rel_tol * std::abs(v));
        if (e <= target) { total.value = v; total.error = e; return total; }
        if (splits >= opt.max_subdivisions) {
            total.value = v;
            total.error = e;
            total.converged = false;
            return total;
        }
        std::size_t worst = 0;
        for (std::size_t i = 1; i < segs.size(); ++i)
            if (segs[i].error > segs[worst].error) worst = i;
        const detail::Interval cur = segs[worst];
        const double mid = 0.5 * (cur.a + cur.b);
        if (!(cur.a < mid && mid < cur.b)) {
            // interval at rounding resolution; accept its contribution
            segs[worst].error = 0.0;
            ++splits;
            continue;
        }
        auto r1 = detail::kronrod15(f, cur.a, mid);
        auto r2 = detail::kronrod15(f, mid, cur.b);
        total.evaluations += r1.evaluations + r2.evaluations;
        segs[worst] = {cur.a, mid, r1.value, r1.error};
        segs.push_back({mid, cur.b, r2.value, r2.error});
        ++splits;
    }
}

/// Result of integrating toward +infinity by fixed-width panels.
struct TailResult {
    double value = 0.0;
    double error = 0.0;        // quadrature error + bound on the dropped tail
    double tail_bound = 0.0;   // bound on the mass beyond the last panel
    double end = 0.0;          // coordinate reached
    long long evaluations = 0;
    bool converged = true;
};

/// Integrates f on [start, cap) by panels of width `panel`, stopping once a
/// panel contributes less than max(stop_abs, stop_rel * |total so far|) and
/// panels are shrinking. The dropped remainder is bounded by the geometric
/// extrapolation of the panel decay. Not converged (with partial value) if
/// the cap is hit first.
template <class F>
TailResult integrate_panels(F&& f, double start, double panel, double stop_abs,
                            double cap, const Options& opt = {}, double stop_rel = 1e-14) {
    TailResult out;
    out.end = start;
    double prev = std::numeric_limits<double>::infinity();
    while (out.end < cap) {
        const double hi = std::min(out.end + panel, cap);
        auto r = adaptive(f, out.end, hi, opt);
        out.value += r.value;
        out.error += r.error;
        out.evaluations += r.evaluations;
        const double c = std::abs(r.value);
        out.end = hi;
        if (c == 0.0 && prev == 0.0) return out;  // integrand dead: nothing beyond
        if (c < std::max(stop_abs, stop_rel * std::abs(out.value)) && c < prev) {
            // geometric closing bound from the observed panel decay
            const double ratio = (prev > 0 && std::isfinite(prev)) ? c / prev : 0.5;
            if (ratio < 0.95) {
                out.tail_bound = c * ratio / (1.0 - ratio);
                out.error += out.tail_bound;
                return out;
            }
        }
        prev = c;
    }
    out.converged = false;
    out.tail_bound = std::max(prev, stop_abs);
    return out;
}

} // namespace orlicz::quad
