#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "orlicz/quadrature.hpp"
#include "orlicz/special.hpp"

using namespace orlicz;

TEST_CASE("adaptive integrates smooth functions to tight tolerance") {
    auto r = quad::adaptive([](double x) { return x * x; }, 0.0, 1.0);
    CHECK(r.converged);
    CHECK(r.value == Catch::Approx(1.0 / 3.0).epsilon(1e-13));

    auto rs = quad::adaptive([](double x) { return std::sin(x); }, 0.0, 3.14159265358979323846);
    CHECK(rs.value == Catch::Approx(2.0).epsilon(1e-13));
}

TEST_CASE("adaptive handles kinks, with and without seeded breakpoints") {
    auto f = [](double x) { return std::abs(x - 1.0 / 3.0); };
    const double exact = (1.0 / 9.0 + 4.0 / 9.0) / 2.0;
    auto blind = quad::adaptive(f, 0.0, 1.0);
    CHECK(blind.value == Catch::Approx(exact).epsilon(1e-11));
    const double bp[] = {1.0 / 3.0};
    auto seeded = quad::adaptive(f, 0.0, 1.0, {}, bp);
    CHECK(seeded.value == Catch::Approx(exact).epsilon(1e-14));
    CHECK(seeded.evaluations < blind.evaluations);
}

TEST_CASE("adaptive resolves an integrable endpoint singularity") {
    auto r = quad::adaptive([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0,
                            {1e-10, 1e-12, 4000});
    CHECK(r.value == Catch::Approx(2.0).epsilon(1e-8));
}

TEST_CASE("error estimates are honest on a battery of integrands") {
    auto check = [](auto&& f, double a, double b, double exact) {
        auto r = quad::adaptive(f, a, b, {1e-9, 1e-13, 4000});
        CHECK(std::abs(r.value - exact) <= std::max(r.error * 3.0, 1e-12));
    };
    check([](double x) { return std::exp(-x * x); }, -6.0, 6.0, std::sqrt(3.14159265358979323846));
    check([](double x) { return std::log(x); }, 0.0, 1.0, -1.0);
    check([](double x) { return std::cos(50.0 * x); }, 0.0, 1.0, std::sin(50.0) / 50.0);
}

TEST_CASE("panel extension integrates to infinity with a closing bound") {
    auto t = quad::integrate_panels([](double x) { return std::exp(-x); }, 0.0, 3.0, 1e-14,
                                    400.0);
    CHECK(t.converged);
    CHECK(t.value == Catch::Approx(1.0).epsilon(1e-10));
    CHECK(std::abs(t.value - 1.0) <= t.error + 1e-12);
}

TEST_CASE("panel extension reports non-convergence at the cap") {
    auto t = quad::integrate_panels([](double x) { return 1.0 / (1.0 + x); }, 0.0, 4.0, 1e-12,
                                    60.0);
    CHECK_FALSE(t.converged);
    CHECK(t.value > 0.0);
}

TEST_CASE("unit ball volumes are the exact half-integer Gamma values") {
    CHECK(unit_ball_volume(1) == 2.0);
    CHECK(unit_ball_volume(2) == Catch::Approx(3.14159265358979323846).epsilon(1e-15));
    CHECK(unit_ball_volume(3) == Catch::Approx(4.18879020478639098).epsilon(1e-15));
    CHECK_THROWS_AS(unit_ball_volume(4), error);
    CHECK(unit_sphere_area(2) == Catch::Approx(6.28318530717958648).epsilon(1e-15));
}

TEST_CASE("exponential integral E1 against quadrature") {
    for (double x : {0.5, 1.0, 3.0, 20.0, 131.8}) {
        auto ref = quad::integrate_panels(
            [x](double w) { return std::exp(-(x + w)) / (x + w); }, 0.0, 3.0, 0.0, 500.0,
            {1e-12, 1e-320, 2000});
        CHECK(expint_e1(x) == Catch::Approx(ref.value).epsilon(1e-10));
    }
    CHECK(expint_e1(800.0) == 0.0);
    CHECK_THROWS_AS(expint_e1(0.0), error);
}
