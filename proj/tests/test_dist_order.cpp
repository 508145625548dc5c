#include "doctest.h"

#include <cmath>
#include <complex>
#include <stdexcept>

#include "dofrac/order_weight.hpp"

using namespace dofrac;

TEST_CASE("atomic weights validate coefficients and order monotonicity") {
    CHECK_THROWS_WITH_AS(make_atomic({{1.0, 0.5}, {1.0, 0.5}}),
                         "orders must be strictly decreasing", std::invalid_argument);
    CHECK_THROWS_WITH_AS(make_atomic({{1.0, 0.3}, {1.0, 0.7}}),
                         "orders must be strictly decreasing", std::invalid_argument);
    CHECK_THROWS_AS(make_atomic({{0.0, 0.5}}), std::invalid_argument);

    AtomicWeight w = make_atomic({{2.0, 1.5}, {-1.0, 0.25}});
    CHECK(w.leading_order() == 1.5);
    CHECK(w.trailing_order() == 0.25);
}

TEST_CASE("strain weight classification covers every class") {
    CHECK(classify_weight(make_atomic({{1.0, 1.5}}), WeightRole::phi1).phi1_class ==
          Phi1Class::atomic);
    CHECK(classify_weight(make_atomic({{1.0, -0.5}}), WeightRole::phi1).phi1_class ==
          Phi1Class::atomic);
    CHECK(classify_weight(make_atomic({{1.0, 2.0}}), WeightRole::phi1).phi1_class ==
          Phi1Class::unclassified);

    CHECK(classify_weight(continuous_from_tag("const:1", 0.0, 0.9), WeightRole::phi1)
              .phi1_class == Phi1Class::continuous_sub1);
    CHECK(classify_weight(continuous_from_tag("const:1", 0.0, 1.5), WeightRole::phi1)
              .phi1_class == Phi1Class::continuous_sub2);
    CHECK(classify_weight(continuous_from_tag("const:1", -0.8, -0.2), WeightRole::phi1)
              .phi1_class == Phi1Class::continuous_negative);
    CHECK(classify_weight(continuous_from_tag("const:1", 0.0, 2.5), WeightRole::phi1)
              .phi1_class == Phi1Class::unclassified);
    CHECK(classify_weight(continuous_from_tag("const:1", -0.5, 0.5), WeightRole::phi1)
              .phi1_class == Phi1Class::unclassified);

    CHECK(classify_weight(make_exponential(2.0), WeightRole::phi1).phi1_class ==
          Phi1Class::exponential_family);
}

TEST_CASE("constitutive weight classification") {
    CHECK(classify_weight(make_atomic({{1.0, 0.5}, {1.0, 0.0}}), WeightRole::phi2)
              .phi2_class == Phi2Class::atomic_symbol);
    CHECK(classify_weight(make_atomic({{1.0, 2.0}}), WeightRole::phi2).phi2_class ==
          Phi2Class::unclassified);
    CHECK(classify_weight(AtomicWeight{}, WeightRole::phi2).phi2_class ==
          Phi2Class::unclassified);

    CHECK(classify_weight(continuous_from_tag("const:1", 0.0, 1.0), WeightRole::phi2)
              .phi2_class == Phi2Class::smooth_unit_interval);
    // Density gamma vanishes at 0 but has the admitted power behaviour there.
    CHECK(classify_weight(continuous_from_tag("affine:0:1", 0.0, 1.0), WeightRole::phi2)
              .phi2_class == Phi2Class::smooth_unit_interval);
    // Support must be exactly the unit interval for the continuous theory.
    CHECK(classify_weight(continuous_from_tag("const:1", 0.0, 0.9), WeightRole::phi2)
              .phi2_class == Phi2Class::unclassified);
    CHECK(classify_weight(make_exponential(1.2), WeightRole::phi2).phi2_class ==
          Phi2Class::smooth_unit_interval);
}

TEST_CASE("distributed derivative with a single atom reduces to one term") {
    TimeGrid g = make_grid(1.0, 400);
    GridFunction y = sample(g, [](double t) { return t * t; });

    GridFunction d0 = distributed_derivative(make_atomic({{1.0, 0.0}}), y);
    CHECK((d0.values - y.values).abs().maxCoeff() == 0.0);

    GridFunction d1 = distributed_derivative(make_atomic({{2.0, 1.0}}), y);
    double worst = 0;
    for (int j = 0; j < g.node_count(); ++j)
        worst = std::max(worst, std::abs(d1[j] - 4.0 * g.node(j)));
    CHECK(worst <= 2e-4);

    CHECK_THROWS_AS(distributed_derivative(make_atomic({{1.0, 2.0}}), y),
                    std::invalid_argument);
}

TEST_CASE("distributed derivative of a constant under the flat unit density") {
    // integral over gamma in [0,1] of D^gamma 1 = integral of t^-gamma/Gamma(1-gamma);
    // at t = 1 the value is the frozen quadrature constant.
    TimeGrid g = make_grid(1.0, 400);
    GridFunction one = sample(g, [](double) { return 1.0; });
    GridFunction d = distributed_derivative(continuous_from_tag("const:1", 0.0, 1.0), one);
    CHECK(d[g.node_count() - 1] == doctest::Approx(0.5412357343286706).epsilon(1e-3));
}

TEST_CASE("symbol evaluation for atomic weights is a power sum on the principal branch") {
    AtomicWeight w = make_atomic({{2.0, 1.5}, {-1.0, 0.5}, {3.0, 0.0}});
    std::complex<double> s(1.2, 0.7);
    std::complex<double> expect =
        2.0 * std::pow(s, 1.5) - std::pow(s, 0.5) + 3.0;
    std::complex<double> got = symbol_eval(w, s);
    CHECK(std::abs(got - expect) <= 1e-12 * std::abs(expect));

    CHECK_THROWS_AS(symbol_eval(w, std::complex<double>(-1.0, 0.0)), std::domain_error);
}

TEST_CASE("exponential symbol matches its closed form and its removable limit") {
    ExponentialWeight w = make_exponential(1.0);
    // (s - 1) / log s away from s = 1.
    std::complex<double> s(2.0, 0.0);
    CHECK(std::abs(symbol_eval(w, s) - std::complex<double>(1.4426950408889634, 0.0)) <=
          1e-12);
    // Near the removable singularity the series path takes over smoothly.
    std::complex<double> s2(1.05, 0.02);
    std::complex<double> direct = (s2 - 1.0) / std::log(s2);
    CHECK(std::abs(symbol_eval(w, s2) - direct) <= 1e-12 * std::abs(direct));
    // Exactly at s = 1 the limit is 1.
    CHECK(std::abs(symbol_eval(w, std::complex<double>(1.0, 0.0)) - 1.0) <= 1e-14);

    // Scaled base: integral of (b s)^gamma over [0,1] = (b s - 1)/log(b s).
    ExponentialWeight wb = make_exponential(1.2);
    std::complex<double> s3(0.9, 1.3);
    std::complex<double> expect = (1.2 * s3 - 1.0) / std::log(1.2 * s3);
    CHECK(std::abs(symbol_eval(wb, s3) - expect) <= 1e-12 * std::abs(expect));
}

TEST_CASE("continuous symbol agrees with quadrature of the integrand") {
    ContinuousWeight w = continuous_from_tag("const:1", 0.0, 1.0);
    std::complex<double> s(3.0, 0.0);
    // integral of s^gamma over [0,1] = (s - 1)/log s for real s > 0.
    std::complex<double> expect = (s - 1.0) / std::log(s);
    CHECK(std::abs(symbol_eval(OrderWeight{w}, s) - expect) <= 1e-10 * std::abs(expect));
}

TEST_CASE("continuous weights from sample tables interpolate monotonically") {
    CHECK_THROWS_AS(continuous_from_tag("samples:/nonexistent/file.tbl", 0.0, 1.0),
                    std::invalid_argument);
    CHECK_THROWS_AS(continuous_from_tag("mystery:1", 0.0, 1.0), std::invalid_argument);
}
