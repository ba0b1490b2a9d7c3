#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "orlicz/modular.hpp"

using namespace orlicz;
using Catch::Approx;

TEST_CASE("orlicz modular: tent against closed forms") {
    auto u = testfn::make_tent();
    auto A = young::make_power(2.0);
    CHECK(modular::orlicz_modular(u, A, 1.0).value == Approx(2.0 / 3.0).epsilon(1e-10));
    CHECK(modular::orlicz_modular(u, A, 10.0).value ==
          Approx(2.0 / 300.0).epsilon(1e-10));
    CHECK_THROWS_AS(modular::orlicz_modular(u, A, 0.0), error);
}

TEST_CASE("orlicz modular: radial reductions against closed forms") {
    // n=1: int e^{-2|x|} dx = 1
    CHECK(modular::orlicz_modular(testfn::make_exp_decay(1), young::make_power(2.0), 1.0)
              .value == Approx(1.0).epsilon(1e-9));
    // n=2, p=1: int e^{-|x|} dx = 2 pi
    CHECK(modular::orlicz_modular(testfn::make_exp_decay(2), young::make_power(1.0), 1.0)
              .value == Approx(6.28318530717958648).epsilon(1e-9));
    // n=3, p=1: 4 pi int r^2 e^{-r} dr = 8 pi
    CHECK(modular::orlicz_modular(testfn::make_exp_decay(3), young::make_power(1.0), 1.0)
              .value == Approx(8.0 * 3.14159265358979323846).epsilon(1e-9));
}

TEST_CASE("orlicz modular is non-increasing and convexity-dominated in lambda") {
    auto u = testfn::make_exp_decay(1);
    auto A = young::make_power_sum({{1.0, 2.0}, {1.0, 3.0}});
    double prev = std::numeric_limits<double>::infinity();
    const double at1 = modular::orlicz_modular(u, A, 1.0).value;
    for (double lam : {0.5, 1.0, 1.5, 2.0, 4.0, 8.0}) {
        const double m = modular::orlicz_modular(u, A, lam).value;
        CHECK(m <= prev * (1.0 + 1e-12));
        if (lam >= 1.0) CHECK(m <= at1 / lam * (1.0 + 1e-12));  // A(t/l) <= A(t)/l
        prev = m;
    }
}

TEST_CASE("counterexample finiteness: modular of v under A_gamma at lambda = 1.5") {
    auto v = testfn::make_counterexample_v(1, 2.0, 1e6);
    auto A = young::make_exp_counterexample(2.0);
    auto r = modular::orlicz_modular(v, A, 1.5);
    // dominated by the closed-form outer integral 2 (kappa+1)^{1-lambda^2}/(lambda^2-1)
    CHECK(r.value == Approx(5.0596379317212017e-8).epsilon(1e-5));
    CHECK(r.abs_error_estimate < 1e-12);
}

TEST_CASE("divergent modular reports numeric-failure with the partial value") {
    auto v = testfn::make_counterexample_v(1, 2.0, 1e6);
    auto A = young::make_exp_counterexample(2.0);
    // at lambda = 1 the integrand is (kappa+|x|)^{-1}: logarithmically divergent
    try {
        modular::orlicz_modular(v, A, 1.0);
        FAIL("expected numeric_failure");
    } catch (const numeric_failure& e) {
        CHECK(e.partial_value() > 100.0);  // ~ 2(700 - log kappa)
        CHECK(e.error_bound() > 0.0);
    }
}

TEST_CASE("luxemburg norm: closed forms, scaling, consistency") {
    auto u = testfn::make_tent();
    auto A = young::make_power(2.0);
    CHECK(modular::luxemburg_norm(testfn::make_zero(1), A) == 0.0);

    const double norm = modular::luxemburg_norm(u, A);
    CHECK(norm == Approx(0.81649658092772603).epsilon(1e-7));  // sqrt(2/3)
    // modular at the returned norm is 1 within 1e-4
    CHECK(modular::orlicz_modular(u, A, norm).value == Approx(1.0).margin(1e-4));
    // scaling: ||u/2|| = ||u||/2
    CHECK(modular::luxemburg_norm(testfn::scale(u, 2.0), A) ==
          Approx(norm / 2.0).epsilon(1e-7));
}

TEST_CASE("luxemburg norm equals the p-norm for power gauges") {
    auto u = testfn::make_tent();
    for (double p : {1.0, 2.0, 3.0}) {
        // ||tent||_p = (2/(p+1))^{1/p} in closed form
        const double pnorm = std::pow(2.0 / (p + 1.0), 1.0 / p);
        CHECK(modular::luxemburg_norm(u, young::make_power(p)) ==
              Approx(pnorm).epsilon(1e-6));
    }
}

TEST_CASE("limit target: closed-form battery") {
    CHECK(modular::limit_target(testfn::make_tent(), young::make_power(2.0)) ==
          Approx(4.0 / 3.0).epsilon(1e-9));
    CHECK(modular::limit_target(testfn::make_zero(1), young::make_power(2.0)) == 0.0);
    // exp_decay n=2 with p=1: (2 omega_2 / 2) * int e^{-|x|} = pi * 2 pi = 2 pi^2
    CHECK(modular::limit_target(testfn::make_exp_decay(2), young::make_power(1.0)) ==
          Approx(19.739208802178717).epsilon(1e-9));
    // tent with A = t^2 + t^3: 4 * (1/6 + 1/12) * 2 = 2
    CHECK(modular::limit_target(testfn::make_tent(),
                                young::make_power_sum({{1.0, 2.0}, {1.0, 3.0}})) ==
          Approx(2.0).epsilon(1e-9));
}
