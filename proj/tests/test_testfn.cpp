#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "orlicz/testfn.hpp"

using namespace orlicz;
using Catch::Approx;

TEST_CASE("tent: values and level-set certificate") {
    auto u = testfn::make_tent();
    CHECK(u.eval1(0.0) == 1.0);
    CHECK(u.eval1(2.0) == 0.0);
    CHECK(testfn::decay_certificate(u, 0.5) == Approx(1.0));
    CHECK(*u.lipschitz_constant == 1.0);
    CHECK(*u.support_radius == 1.0);
}

TEST_CASE("exp decay: values, certificate, parameter validation") {
    auto u2 = testfn::make_exp_decay(2);
    const double origin[2] = {0.0, 0.0};
    CHECK(u2.eval(std::span<const double>(origin, 2)) == 1.0);
    // level set {u > 1/e} is the unit disk
    CHECK(testfn::decay_certificate(u2, std::exp(-1.0)) ==
          Approx(3.14159265358979323846).epsilon(1e-12));
    CHECK_THROWS_AS(testfn::make_exp_decay(0), error);
    CHECK_THROWS_AS(testfn::make_exp_decay(4), error);
}

TEST_CASE("counterexample v: closed-form values and antisymmetry") {
    auto v = testfn::make_counterexample_v(2, 2.0, 1e6);
    const double x1[2] = {2.0, 0.0};
    CHECK(v.eval(std::span<const double>(x1, 2)) ==
          Approx(0.26903977990647843).epsilon(1e-12));  // 1/log^{1/2}(1e6 + 2)
    // inside the unit ball the function is linear in x_1
    const double x2[2] = {0.25, 0.5};
    const double expected = 0.25 / std::sqrt(std::log(1e6 + 1.0));
    CHECK(v.eval(std::span<const double>(x2, 2)) == Approx(expected).epsilon(1e-13));
    CHECK(*v.sup_norm == Approx(0.26903978964333726).epsilon(1e-12));

    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> box(-30.0, 30.0);
    for (int i = 0; i < 200; ++i) {
        double x[2] = {box(rng), box(rng)};
        double mx[2] = {-x[0], -x[1]};
        CHECK(v.eval(std::span<const double>(x, 2)) ==
              Approx(-v.eval(std::span<const double>(mx, 2))).margin(1e-15));
    }
    CHECK_THROWS_AS(testfn::make_counterexample_v(1, 0.5), error);
    CHECK_THROWS_AS(testfn::make_counterexample_v(1, 2.0, 0.5), error);
}

TEST_CASE("scale: pointwise division and certificate rescaling") {
    auto tent = testfn::make_tent();
    auto half = testfn::scale(tent, 2.0);
    CHECK(half.eval1(0.0) == Approx(0.5));
    CHECK(*half.sup_norm == Approx(0.5));
    CHECK(*half.lipschitz_constant == Approx(0.5));
    // cert_{u/2}(t) = cert_u(2t)
    CHECK(half.decay_log_measure(0.25) == Approx(tent.decay_log_measure(0.5)));

    auto same = testfn::scale(tent, 1.0);
    for (double x : {-1.5, -0.3, 0.0, 0.7, 2.0}) CHECK(same.eval1(x) == tent.eval1(x));

    auto v = testfn::make_counterexample_v(1, 2.0, 1e6);
    auto vs = testfn::scale(v, 1.5);
    CHECK(*vs.sup_norm == Approx(*v.sup_norm / 1.5));
    CHECK_THROWS_AS(testfn::scale(tent, 0.0), error);
}

TEST_CASE("decay certificates are non-increasing and finite in log space") {
    for (auto u : {testfn::make_tent(), testfn::make_exp_decay(2),
                   testfn::make_counterexample_v(1, 2.0, 1e6)}) {
        double prev = std::numeric_limits<double>::infinity();
        for (double t = 0.01; t < 1.5; t += 0.01) {
            const double lm = u.decay_log_measure(t);
            CHECK(lm <= prev + 1e-12);
            CHECK(!(lm > 0 && std::isinf(lm)));  // finite bound for every t > 0
            prev = lm;
        }
    }
}

TEST_CASE("sampled difference quotients never exceed the Lipschitz constant") {
    std::mt19937_64 rng(42);
    auto check = [&](const testfn::TestFunction& u, double box) {
        std::uniform_real_distribution<double> d(-box, box);
        for (int i = 0; i < 2000; ++i) {
            double x[3] = {d(rng), d(rng), d(rng)};
            double y[3] = {d(rng), d(rng), d(rng)};
            double dist2 = 0.0;
            for (int k = 0; k < u.dim; ++k) dist2 += (x[k] - y[k]) * (x[k] - y[k]);
            if (dist2 == 0.0) continue;
            const double du = std::abs(u.eval(std::span<const double>(x, u.dim)) -
                                       u.eval(std::span<const double>(y, u.dim)));
            CHECK(du <= *u.lipschitz_constant * std::sqrt(dist2) * (1.0 + 1e-9));
        }
    };
    check(testfn::make_tent(), 3.0);
    check(testfn::make_exp_decay(2), 6.0);
    check(testfn::make_exp_decay(3), 6.0);
    check(testfn::make_counterexample_v(2, 2.0, 1e6), 40.0);
}

TEST_CASE("mean-value bound for v on segments outside the unit ball") {
    // |v(x)-v(y)| <= 3|x-y| / (m log^{1/gamma}(kappa+m)), m the smallest
    // modulus along the segment (conservative samplable form)
    const double gamma = 2.0, kappa = 1e6;
    auto v = testfn::make_counterexample_v(2, gamma, kappa);
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> shell(2.0, 60.0), ang(0.0, 6.28318530717958648),
        pert(-1.0, 1.0);
    int tested = 0;
    for (int i = 0; i < 4000 && tested < 500; ++i) {
        const double r = shell(rng), th = ang(rng);
        double x[2] = {r * std::cos(th), r * std::sin(th)};
        double y[2] = {x[0] + pert(rng), x[1] + pert(rng)};
        double m = std::numeric_limits<double>::infinity();
        bool outside = true;
        for (int k = 0; k <= 64; ++k) {
            const double t = k / 64.0;
            const double px = (1 - t) * x[0] + t * y[0];
            const double py = (1 - t) * x[1] + t * y[1];
            const double pm = std::hypot(px, py);
            m = std::min(m, pm);
            if (pm <= 1.0) outside = false;
        }
        if (!outside) continue;
        ++tested;
        const double dv = std::abs(v.eval(std::span<const double>(x, 2)) -
                                   v.eval(std::span<const double>(y, 2)));
        const double dist = std::hypot(x[0] - y[0], x[1] - y[1]);
        const double bound =
            3.0 * dist / (m * std::pow(std::log(kappa + m), 1.0 / gamma));
        CHECK(dv <= bound * (1.0 + 1e-9));
    }
    CHECK(tested >= 500);
}

TEST_CASE("certificate validity by Monte Carlo sampling of level sets") {
    std::mt19937_64 rng(5);
    auto mc_measure_1d = [&](const testfn::TestFunction& u, double t, double R) {
        std::uniform_real_distribution<double> d(-R, R);
        const int N = 400000;
        int hits = 0;
        for (int i = 0; i < N; ++i) {
            const double x = d(rng);
            if (std::abs(u.eval1(x)) > t) ++hits;
        }
        return 2.0 * R * hits / N;
    };
    auto tent = testfn::make_tent();
    for (double t : {0.1, 0.5, 0.9})
        CHECK(mc_measure_1d(tent, t, 1.5) <=
              testfn::decay_certificate(tent, t) * 1.05 + 0.01);

    auto v = testfn::make_counterexample_v(1, 2.0, 1e6);
    for (double t : {0.2, 0.25}) {
        const double R = std::exp(std::pow(t, -2.0));  // certificate's bounding ball
        CHECK(mc_measure_1d(v, t, R) <= testfn::decay_certificate(v, t) * 1.05);
    }

    auto u2 = testfn::make_exp_decay(2);
    std::uniform_real_distribution<double> d(-1.2, 1.2);
    int hits = 0;
    const int N = 400000;
    for (int i = 0; i < N; ++i) {
        double x[2] = {d(rng), d(rng)};
        if (u2.eval(std::span<const double>(x, 2)) > std::exp(-1.0)) ++hits;
    }
    const double est = 2.4 * 2.4 * static_cast<double>(hits) / N;
    CHECK(est <= testfn::decay_certificate(u2, std::exp(-1.0)) * 1.05);
}

TEST_CASE("proof-side kappa bound is reported and checks out where representable") {
    auto b = testfn::counterexample_kappa_bound(2.0, 1.5);
    REQUIRE(b.has_value());
    CHECK(*b == Approx(std::exp(std::pow(2.0 * 2.718281828459045 / 1.5, 2.0)) - 1.0));
    CHECK(*b < 1e6);  // the default kappa satisfies the bound at gamma=2, lambda=1.5
    CHECK_FALSE(testfn::counterexample_kappa_bound(8.0, 1.01).has_value());
}
