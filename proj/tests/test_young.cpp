#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "orlicz/young.hpp"

using namespace orlicz;
using Catch::Approx;

namespace {

// independent high-resolution oracle for Abar of A(t) = e^t - 1 at t = 1,
// frozen from a composite quadrature at 10x tighter tolerance:
// int_0^1 (e^tau - 1)/tau dtau
constexpr double kEin1 = 1.3179021514544039;

young::YoungFunction make_expm1() {
    young::YoungFunction A;
    A.name = "expm1";
    A.eval = [](double t) { return t <= 0.0 ? 0.0 : std::expm1(t); };
    A.deriv = [](double t) { return t <= 0.0 ? 1.0 : std::exp(t); };
    A.log_eval = [](double t) {
        return t <= 0.0 ? -std::numeric_limits<double>::infinity() : std::log(std::expm1(t));
    };
    return A;
}

std::vector<double> log_grid(double lo, double hi, int n) {
    std::vector<double> g(n);
    for (int i = 0; i < n; ++i) g[i] = lo * std::pow(hi / lo, static_cast<double>(i) / (n - 1));
    return g;
}

} // namespace

TEST_CASE("power family closed forms") {
    auto A = young::make_power(2.0);
    CHECK(A.eval(3.0) == 9.0);
    CHECK((*A.abar_closed_form)(2.0) == Approx(2.0).epsilon(1e-15));
    CHECK(young::make_power(1.0).deriv(5.0) == 1.0);
    CHECK(A.eval(0.0) == 0.0);
    CHECK_THROWS_AS(young::make_power(0.9), error);
}

TEST_CASE("all built-in families satisfy the Young invariants") {
    young::validate(young::make_power(1.0));
    young::validate(young::make_power(2.0));
    young::validate(young::make_power(3.0));
    young::validate(young::make_power_log(2.0));
    young::validate(young::make_power_sum({{1.0, 2.0}, {1.0, 3.0}}));
    young::validate(young::make_exp_counterexample(2.0), 1e-1, 1e4, 48);
}

TEST_CASE("abar: closed form, quadrature, and the empty integral") {
    auto P2 = young::make_power(2.0);
    CHECK(young::abar(P2, 2.0) == Approx(2.0).epsilon(1e-14));
    CHECK(young::abar(P2, 0.0) == 0.0);

    // quadrature path against the frozen independent oracle
    auto E = make_expm1();
    CHECK(young::abar(E, 1.0) == Approx(kEin1).epsilon(1e-9));

    // quadrature agrees with closed form where both exist
    young::YoungFunction P3 = young::make_power(3.0);
    auto closed = *P3.abar_closed_form;
    P3.abar_closed_form.reset();
    for (double t : {1e-3, 0.3, 1.0, 47.0})
        CHECK(young::abar(P3, t) == Approx(closed(t)).epsilon(1e-9));
}

TEST_CASE("abar exactness for powers over a wide range") {
    auto P = young::make_power(2.0);
    for (double t : log_grid(1e-3, 1e3, 61))
        CHECK(std::abs(young::abar(P, t) - t * t / 2.0) <= 1e-10 * t * t);
}

TEST_CASE("exp counterexample family: values, window, validation") {
    CHECK_THROWS_AS(young::make_exp_counterexample(1.0), error);
    CHECK_THROWS_AS(young::make_exp_counterexample(2.0, 0.25), error);

    auto A = young::make_exp_counterexample(2.0);
    CHECK(A.eval(0.0) == 0.0);
    // analytic log ratio (1 - 2^-gamma)/t^gamma at t = 0.05
    CHECK(A.log_eval(0.1) - A.log_eval(0.05) == Approx(300.0).epsilon(1e-12));
    const double t0 = young::kExpCounterexampleDefaultT0;
    CHECK(A.eval(t0) == Approx(std::exp(-29.556224395722598)).epsilon(1e-12));
    // affine continuation keeps the density constant beyond t0
    CHECK(A.deriv(t0 * 1.5) == Approx(A.deriv(t0)).epsilon(1e-12));
    CHECK(A.deriv(10.0) == Approx(A.deriv(t0)).epsilon(1e-12));

    // Abar closed form against direct log-substituted quadrature
    young::YoungFunction Aq = A;
    Aq.abar_closed_form.reset();
    for (double t : {0.05, 0.1, 0.18, 0.3, 1.0})
        CHECK(young::abar(Aq, t) ==
              Approx((*A.abar_closed_form)(t)).epsilon(1e-9).margin(1e-300));
}

TEST_CASE("piecewise descriptor builds a valid Young function") {
    using Seg = young::PiecewiseSegment;
    auto A = young::make_piecewise({Seg{0.0, Seg::Kind::power, 1.0, 1.0},
                                    Seg{1.0, Seg::Kind::affine, 1.0, 2.0}});
    young::validate(A);
    CHECK(A.eval(1.0) == Approx(0.5));                    // int_0^1 t dt
    CHECK(A.eval(2.0) == Approx(0.5 + 1.0 + 1.0));        // + int_1^2 (1 + 2(t-1)) dt
    CHECK(A.deriv(0.5) == Approx(0.5));
    CHECK(A.deriv(1.5) == Approx(2.0));
    // decreasing density rejected
    CHECK_THROWS_AS(young::make_piecewise({Seg{0.0, Seg::Kind::power, 1.0, 1.0},
                                           Seg{1.0, Seg::Kind::power, 0.1, 0.0}}),
                    error);
}

TEST_CASE("delta2 diagnostics: exact doubling constants and the unbounded flag") {
    for (double p : {1.0, 2.0, 3.0}) {
        auto d = young::delta2_diagnose(young::make_power(p), 1e-3, 1e3, 64);
        CHECK(d.delta2_sup_ratio == Approx(std::pow(2.0, p)).margin(1e-9));
        CHECK_FALSE(d.delta2_unbounded_on_grid);
    }
    auto d = young::delta2_diagnose(young::make_exp_counterexample(2.0), 0.01, 1.0, 64);
    CHECK(d.delta2_unbounded_on_grid);
    CHECK(d.delta2_sup_log_ratio == Approx(7500.0).epsilon(1e-10));

    CHECK_THROWS_AS(young::delta2_diagnose(young::make_power(2.0), 1e-3, 1e3, 8), error);
    CHECK_THROWS_AS(young::delta2_diagnose(young::make_power(2.0), 1.0, 0.5, 32), error);
}

TEST_CASE("Matuszewska index: powers exact, log-perturbed within tolerance, sentinel") {
    auto p2 = young::matuszewska_index(young::make_power(2.0));
    CHECK_FALSE(p2.unbounded_on_grid);
    CHECK(p2.index == Approx(2.0).margin(1e-9));

    // dense-grid oracle target for t^2 log(e+t): the index is exactly 2
    auto pl = young::matuszewska_index(young::make_power_log(2.0));
    CHECK_FALSE(pl.unbounded_on_grid);
    CHECK(pl.index == Approx(2.0).margin(0.05));

    auto ce = young::matuszewska_index(young::make_exp_counterexample(2.0));
    CHECK(ce.unbounded_on_grid);
    CHECK(std::isinf(ce.index));

    CHECK_THROWS_AS(
        young::matuszewska_index(young::make_power(2.0), std::vector<double>{2.0, 4.0, 8.0}),
        error);
}

TEST_CASE("growth bound witness: A(lambda t) <= C lambda^{I+1.05} A(t), C <= 1e6") {
    for (auto A : {young::make_power(2.0), young::make_power_log(2.0),
                   young::make_power_sum({{1.0, 2.0}, {1.0, 3.0}})}) {
        const double I = young::matuszewska_index(A).index;
        double logC = 0.0;
        for (double t : log_grid(1e-4, 1e4, 81))
            for (int k = 0; k <= 10; ++k) {
                const double lam = std::ldexp(1.0, k);
                logC = std::max(logC, A.log_eval(lam * t) - A.log_eval(t) -
                                          (I + 1.05) * std::log(lam));
            }
        CHECK(std::exp(logC) <= 1e6);
    }
}

TEST_CASE("sandwich A(t/2) <= Abar(t) <= A(t) and A(t) <= Abar(2t) on a log grid") {
    auto families = {young::make_power(1.0), young::make_power(2.0), young::make_power(3.0),
                     young::make_power_log(2.0),
                     young::make_power_sum({{1.0, 2.0}, {1.0, 3.0}}),
                     young::make_exp_counterexample(2.0)};
    for (const auto& A : families) {
        for (double t : log_grid(1e-3, 1e3, 101)) {
            const double ab = young::abar(A, t);
            const double lo = A.eval(t / 2.0);
            const double hi = A.eval(t);
            CHECK(lo <= ab * (1.0 + 1e-10) + 1e-300);
            CHECK(ab <= hi * (1.0 + 1e-10) + 1e-300);
            CHECK(hi <= young::abar(A, 2.0 * t) * (1.0 + 1e-10) + 1e-300);
        }
    }
}

TEST_CASE("convexity midpoint inequality across grids") {
    auto families = {young::make_power(1.5), young::make_power_log(3.0),
                     young::make_exp_counterexample(3.0)};
    for (const auto& A : families) {
        auto g = log_grid(1e-2, 1e2, 65);
        for (std::size_t i = 0; i + 1 < g.size(); ++i) {
            const double mid = 0.5 * (g[i] + g[i + 1]);
            CHECK(A.eval(mid) <= 0.5 * (A.eval(g[i]) + A.eval(g[i + 1])) * (1.0 + 1e-12) + 1e-300);
        }
    }
}
