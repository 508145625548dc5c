#include "doctest.h"

#include <cmath>
#include <stdexcept>

#include "dofrac/grid.hpp"

using namespace dofrac;

TEST_CASE("make_grid validates its arguments") {
    CHECK_THROWS_AS(make_grid(0.0, 100), std::invalid_argument);
    CHECK_THROWS_AS(make_grid(-1.0, 100), std::invalid_argument);
    CHECK_THROWS_AS(make_grid(1.0, 1), std::invalid_argument);

    TimeGrid g = make_grid(2.0, 4);
    CHECK(g.node_count() == 5);
    CHECK(g.step() == doctest::Approx(0.5));
    CHECK(g.node(0) == 0.0);
    CHECK(g.node(4) == doctest::Approx(2.0));
}

TEST_CASE("GridFunction construction and norms") {
    TimeGrid g = make_grid(1.0, 10);
    GridFunction zero = GridFunction::zeros(g);
    CHECK(zero.sup_norm() == 0.0);

    GridFunction y = sample(g, [](double t) { return -t; });
    CHECK(y.sup_norm() == doctest::Approx(1.0));
    CHECK(y[10] == doctest::Approx(-1.0));

    Eigen::ArrayXd wrong(3);
    wrong.setZero();
    CHECK_THROWS_AS(GridFunction(g, wrong), std::invalid_argument);
}

TEST_CASE("causal convolution of two constants is linear in t") {
    TimeGrid g = make_grid(1.0, 200);
    GridFunction one = sample(g, [](double) { return 1.0; });
    GridFunction c = conv_causal(one, one);
    CHECK(c[0] == 0.0);
    for (int j = 0; j < g.node_count(); ++j) {
        CHECK(c[j] == doctest::Approx(g.node(j)).epsilon(1e-10));
    }
}

TEST_CASE("causal convolution matches a closed form with distinct factors") {
    // (t * t^2)(t) = integral of x (t-x)^2 dx = t^4 / 12.
    TimeGrid g = make_grid(1.0, 400);
    GridFunction u = sample(g, [](double t) { return t; });
    GridFunction v = sample(g, [](double t) { return t * t; });
    GridFunction c = conv_causal(u, v);
    double worst = 0;
    for (int j = 0; j < g.node_count(); ++j) {
        double t = g.node(j);
        worst = std::max(worst, std::abs(c[j] - t * t * t * t / 12.0));
    }
    CHECK(worst <= 1e-5);
}

TEST_CASE("Stieltjes convolution against the measure dK reproduces the integral") {
    // K(t) = t so dK = dt: the convolution is the running trapezoid integral.
    TimeGrid g = make_grid(1.0, 400);
    GridFunction K = sample(g, [](double t) { return t; });
    GridFunction y = sample(g, [](double t) { return std::sin(t); });
    GridFunction s = stieltjes_conv(K, y);
    CHECK(s[0] == 0.0);
    double worst = 0;
    for (int j = 0; j < g.node_count(); ++j) {
        double t = g.node(j);
        worst = std::max(worst, std::abs(s[j] - (1.0 - std::cos(t))));
    }
    CHECK(worst <= 1e-6);
}

TEST_CASE("Stieltjes convolution requires a kernel vanishing at zero") {
    TimeGrid g = make_grid(1.0, 10);
    GridFunction K = sample(g, [](double t) { return t + 1.0; });
    GridFunction y = sample(g, [](double) { return 1.0; });
    CHECK_THROWS_AS(stieltjes_conv(K, y), std::invalid_argument);
}

TEST_CASE("finite differences are exact on quadratics") {
    TimeGrid g = make_grid(1.0, 50);
    GridFunction y = sample(g, [](double t) { return 3.0 * t * t - 2.0 * t + 1.0; });
    GridFunction d1 = diff1(y);
    GridFunction d2 = diff2(y);
    for (int j = 0; j < g.node_count(); ++j) {
        double t = g.node(j);
        CHECK(d1[j] == doctest::Approx(6.0 * t - 2.0).epsilon(1e-9));
        CHECK(d2[j] == doctest::Approx(6.0).epsilon(1e-7));
    }
}

TEST_CASE("trapezoid rule integrates sine over a half period") {
    TimeGrid g = make_grid(3.141592653589793, 2000);
    GridFunction y = sample(g, [](double t) { return std::sin(t); });
    CHECK(trapezoid(y) == doctest::Approx(2.0).epsilon(1e-6));
}

TEST_CASE("grids compare by value") {
    CHECK(make_grid(1.0, 10) == make_grid(1.0, 10));
    CHECK_FALSE(make_grid(1.0, 10) == make_grid(1.0, 11));
}
