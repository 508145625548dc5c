#include "doctest.h"

#include <cmath>
#include <stdexcept>

#include "dofrac/errors.hpp"
#include "dofrac/laplace.hpp"
#include "dofrac/solver.hpp"

using namespace dofrac;

namespace {

const double kPi = 3.141592653589793;

ProblemSpec harmonic_problem() {
    ProblemSpec p;
    p.phi1 = make_atomic({{1.0, 0.0}});
    p.phi2 = make_atomic({{1.0, 0.0}});
    p.forcing = make_zero_forcing();
    p.y0 = 1.0;
    p.v0 = 0.0;
    p.horizon = 1.0;
    p.ball_radius = 2.0;
    return p;
}

}  // namespace

TEST_CASE("forcing factories set capability flags by construction") {
    ForcingTerm zero = make_zero_forcing();
    CHECK(zero.bounded_by_power);
    CHECK(zero.lipschitz_vanishing);
    CHECK(zero.lipschitz_joint);

    ForcingTerm time = make_time_forcing("const:1");
    CHECK(time.kind == ForcingKind::time_only);
    CHECK_FALSE(time.bounded_by_power);
    CHECK_FALSE(time.lipschitz_vanishing);
    CHECK(time.alpha == 0.0);
    CHECK(time(0.3, 42.0) == 1.0);

    ForcingTerm power = make_power_bound_forcing("const:2", 0.5);
    CHECK(power.bounded_by_power);
    CHECK_FALSE(power.lipschitz_vanishing);
    CHECK(power(0.0, 0.25) == doctest::Approx(2.0 * 0.5));
    CHECK(power(0.0, -0.25) == doctest::Approx(-1.0));
    CHECK_THROWS_AS(make_power_bound_forcing("const:1", 0.0), std::invalid_argument);

    ForcingTerm lip = make_lipschitz_forcing("linear:1");
    CHECK(lip.bounded_by_power);
    CHECK(lip.lipschitz_vanishing);
    CHECK(lip(0.5, 3.0) == doctest::Approx(1.5));

    // A Lipschitz modulus that does not vanish at zero loses the stronger flag.
    ForcingTerm lip2 = make_lipschitz_forcing("const:1");
    CHECK(lip2.bounded_by_power);
    CHECK_FALSE(lip2.lipschitz_vanishing);

    ForcingTerm pend = make_pendulum_forcing(0.5);
    CHECK(pend.bounded_by_power);
    CHECK_FALSE(pend.lipschitz_vanishing);
    CHECK(pend.alpha == 1.0);
    CHECK(pend.envelope(17.0) == doctest::Approx(0.5));
    CHECK(pend(0.0, 2.0) == doctest::Approx(0.5 * std::sin(2.0)));
}

TEST_CASE("memory operator on elementary weights") {
    TimeGrid g = make_grid(1.0, 400);
    GridFunction one = sample(g, [](double) { return 1.0; });

    GridFunction none = J_op(OrderWeight{AtomicWeight{}}, one);
    CHECK(none.sup_norm() == 0.0);

    // An order-zero atom turns J into the double integral: t^2/2 on constants.
    GridFunction j0 = J_op(OrderWeight{make_atomic({{1.0, 0.0}})}, one);
    double worst = 0;
    for (int j = 0; j < g.node_count(); ++j)
        worst = std::max(worst, std::abs(j0[j] - g.node(j) * g.node(j) / 2.0));
    CHECK(worst <= 1e-10);

    // Flat unit density: J 1 (t=1) = integral over gamma of 1/Gamma(3-gamma).
    GridFunction jc = J_op(OrderWeight{continuous_from_tag("const:1", 0.0, 1.0)}, one);
    CHECK(jc[g.node_count() - 1] == doctest::Approx(0.7518497084956386).epsilon(1e-4));
}

TEST_CASE("fixed-point operator on the trivial and harmonic configurations") {
    TimeGrid g = make_grid(1.0, 400);
    ProblemSpec p = harmonic_problem();
    p.y0 = 0.0;
    FundamentalSolution kernel = fundamental_solution(p.phi2, g);

    GridFunction one = sample(g, [](double) { return 1.0; });
    GridFunction ty = T_op(p, kernel, one);
    double worst = 0;
    for (int j = 0; j < g.node_count(); ++j)
        worst = std::max(worst, std::abs(ty[j] + g.node(j) * g.node(j) / 2.0));
    CHECK(worst <= 1e-10);

    // cos t is the fixed point of the harmonic configuration.
    ProblemSpec ph = harmonic_problem();
    GridFunction c = sample(g, [](double t) { return std::cos(t); });
    GridFunction tc = T_op(ph, kernel, c);
    CHECK((tc.values - c.values).abs().maxCoeff() <= 5e-3);
}

TEST_CASE("fixed-point operator is affine-linear in the state for zero forcing") {
    TimeGrid g = make_grid(1.0, 200);
    ProblemSpec p = harmonic_problem();
    FundamentalSolution kernel = fundamental_solution(p.phi2, g);

    GridFunction y1 = sample(g, [](double t) { return std::sin(3.0 * t); });
    GridFunction y2 = sample(g, [](double t) { return t * t - 0.4; });
    GridFunction zero = GridFunction::zeros(g);

    GridFunction t0 = T_op(p, kernel, zero);
    GridFunction ta = T_op(p, kernel, GridFunction(g, y1.values + y2.values));
    GridFunction tb = T_op(p, kernel, y1);
    GridFunction tc = T_op(p, kernel, y2);

    Eigen::ArrayXd lhs = ta.values - t0.values;
    Eigen::ArrayXd rhs = (tb.values - t0.values) + (tc.values - t0.values);
    CHECK((lhs - rhs).abs().maxCoeff() <= 1e-10);
}

TEST_CASE("certificate for drift-only motion caps at the ball exit time") {
    ProblemSpec p;
    p.phi1 = AtomicWeight{};
    p.phi2 = make_atomic({{1.0, 0.0}});
    p.forcing = make_zero_forcing();
    p.y0 = 0.0;
    p.v0 = 1.0;
    p.ball_radius = 2.0;

    // Horizon shorter than the exit time: the whole interval is certified.
    p.horizon = 1.0;
    FundamentalSolution k1 = fundamental_solution(p.phi2, make_grid(1.0, 100));
    DeltaEstimate e1 = delta_estimate(p, k1);
    CHECK(e1.delta == doctest::Approx(1.0));
    CHECK(e1.M_delta == 0.0);
    CHECK(e1.C_delta == 0.0);
    CHECK(e1.slack >= 0.0);

    // Long horizon: |v0| t <= r caps delta at t = 2.
    p.horizon = 4.0;
    FundamentalSolution k2 = fundamental_solution(p.phi2, make_grid(4.0, 400));
    DeltaEstimate e2 = delta_estimate(p, k2);
    CHECK(e2.delta == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(e2.slack >= 0.0);
}

TEST_CASE("certificate for the unit-order pair follows the closed-form bound") {
    // phi1 = phi2 = {1:1}: kernel l = 1, M_t = t, D_t = t, so delta solves
    // t^2 <= 1 at ball radius 1.
    ProblemSpec p;
    p.phi1 = make_atomic({{1.0, 1.0}});
    p.phi2 = make_atomic({{1.0, 1.0}});
    p.forcing = make_zero_forcing();
    p.y0 = 0.0;
    p.v0 = 0.0;
    p.ball_radius = 1.0;
    p.horizon = 2.0;
    FundamentalSolution k = fundamental_solution(p.phi2, make_grid(2.0, 400));
    DeltaEstimate e = delta_estimate(p, k);
    CHECK(e.delta == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(e.M_delta == doctest::Approx(e.delta).epsilon(1e-6));
    CHECK(e.D_delta == doctest::Approx(e.delta).epsilon(1e-3));
    CHECK(e.slack >= 0.0);
}

TEST_CASE("certificate failure at one grid step raises the dedicated error") {
    ProblemSpec p = harmonic_problem();
    p.y0 = 2.5; // exceeds the ball radius outright
    FundamentalSolution k = fundamental_solution(p.phi2, make_grid(1.0, 100));
    try {
        delta_estimate(p, k);
        FAIL("expected a no-ball error");
    } catch (const NoBallError& e) {
        CHECK(e.lhs_at_min_step > p.ball_radius);
    }
}

TEST_CASE("picard solver reproduces the harmonic oscillator") {
    TimeGrid g = make_grid(1.0, 400);
    SolveOptions opts;
    opts.tol = 1e-8;
    SolutionPair sol = picard_solve(harmonic_problem(), g, opts);

    CHECK(sol.converged);
    CHECK(sol.certified);
    CHECK(sol.picard_iters <= 60);
    CHECK(sol.fixed_point_residual <= 2e-8);
    CHECK(sol.y[0] == 1.0);

    double worst = 0;
    for (int j = 0; j < g.node_count(); ++j)
        worst = std::max(worst, std::abs(sol.y[j] - std::cos(g.node(j))));
    CHECK(worst <= 1e-3);
    CHECK((sol.z.values - sol.y.values).abs().maxCoeff() <= 1e-3);
    CHECK(sol.ode_residual <= 5e-3);

    // Discrete initial slope is within O(h) of v0.
    double h = g.step();
    CHECK(std::abs((sol.y[1] - sol.y[0]) / h - 0.0) <= 10.0 * h);
}

TEST_CASE("free motion is the exact fixed point after one sweep") {
    ProblemSpec p;
    p.phi1 = AtomicWeight{};
    p.phi2 = make_atomic({{1.0, 0.0}});
    p.forcing = make_zero_forcing();
    p.y0 = 0.3;
    p.v0 = -0.1;
    p.horizon = 1.0;
    p.ball_radius = 2.0;
    TimeGrid g = make_grid(1.0, 100);
    SolutionPair sol = picard_solve(p, g);
    CHECK(sol.converged);
    CHECK(sol.picard_iters == 1);
    double worst = 0;
    for (int j = 0; j < g.node_count(); ++j)
        worst = std::max(worst, std::abs(sol.y[j] - (0.3 - 0.1 * g.node(j))));
    CHECK(worst <= 1e-14);
    CHECK(sol.z.sup_norm() == 0.0);
}

TEST_CASE("picard solver with damping still converges") {
    TimeGrid g = make_grid(1.0, 200);
    SolveOptions opts;
    opts.tol = 1e-9;
    opts.damping = 0.5;
    SolutionPair sol = picard_solve(harmonic_problem(), g, opts);
    CHECK(sol.converged);
    double worst = 0;
    for (int j = 0; j < g.node_count(); ++j)
        worst = std::max(worst, std::abs(sol.y[j] - std::cos(g.node(j))));
    CHECK(worst <= 1e-3);
}

TEST_CASE("non-convergence is reported, not thrown") {
    TimeGrid g = make_grid(1.0, 100);
    SolveOptions opts;
    opts.tol = 1e-14;
    opts.max_iter = 2;
    SolutionPair sol = picard_solve(harmonic_problem(), g, opts);
    CHECK_FALSE(sol.converged);
    CHECK(sol.picard_iters == 2);
    CHECK(sol.y.size() == g.node_count());
}

TEST_CASE("solver options are validated") {
    TimeGrid g = make_grid(1.0, 100);
    SolveOptions opts;
    opts.tol = 0.0;
    CHECK_THROWS_AS(picard_solve(harmonic_problem(), g, opts), std::invalid_argument);
    opts.tol = 1e-10;
    opts.damping = 1.5;
    CHECK_THROWS_AS(picard_solve(harmonic_problem(), g, opts), std::invalid_argument);
}

TEST_CASE("stress recovery on trivial strain weights") {
    TimeGrid g = make_grid(1.0, 100);
    ProblemSpec p = harmonic_problem();
    FundamentalSolution kernel = fundamental_solution(p.phi2, g);
    GridFunction y = sample(g, [](double t) { return std::sin(t); });

    GridFunction z = recover_z(p, kernel, y);
    CHECK((z.values - y.values).abs().maxCoeff() == 0.0);

    p.phi1 = AtomicWeight{};
    GridFunction z0 = recover_z(p, kernel, y);
    CHECK(z0.sup_norm() == 0.0);
}

TEST_CASE("dissipation work on closed-form pairs") {
    TimeGrid g = make_grid(2.0 * kPi, 2000);
    GridFunction s = sample(g, [](double t) { return std::sin(t); });
    GridFunction c = sample(g, [](double t) { return std::cos(t); });
    GridFunction zero = GridFunction::zeros(g);

    CHECK(std::abs(dissipation_work(s, s)) <= 1e-3);
    CHECK(dissipation_work(s, c) == doctest::Approx(kPi).epsilon(1e-2 / kPi));
    CHECK(dissipation_work(s, zero) == 0.0);

    TimeGrid g2 = make_grid(1.0, 50);
    GridFunction other = GridFunction::zeros(g2);
    CHECK_THROWS_AS(dissipation_work(s, other), std::invalid_argument);
}

TEST_CASE("classification clauses on spot checks") {
    // Pendulum with nonzero displacement: mild only.
    ProblemSpec pend;
    pend.phi1 = make_atomic({{1.0, 1.0}});
    pend.phi2 = make_atomic({{1.0, 0.5}, {1.0, 0.0}});
    pend.forcing = make_pendulum_forcing(0.5);
    pend.y0 = 0.3;
    pend.ball_radius = 2.0;
    Classification c = classify_solution(pend);
    CHECK(c.mild);
    CHECK_FALSE(c.non_impact);
    CHECK_FALSE(c.classical);
    CHECK(c.classical_clause == "pendulum forcing has a non-vanishing Lipschitz modulus");

    // Exponential pair, vanishing-Lipschitz forcing, zero displacement: everything.
    ProblemSpec ex;
    ex.phi1 = make_exponential(2.0);
    ex.phi2 = make_exponential(1.2);
    ex.forcing = make_lipschitz_forcing("linear:1");
    ex.y0 = 0.0;
    ex.v0 = 1.0;
    ex.ball_radius = 2.0;
    Classification ce = classify_solution(ex);
    CHECK(ce.mild);
    CHECK(ce.non_impact);
    CHECK(ce.classical);

    // Inadmissible constitutive symbol blocks every flag.
    ProblemSpec bad = harmonic_problem();
    bad.phi2 = make_atomic({{1.0, 1.0}, {-1.0, 0.0}});
    Classification cb = classify_solution(bad);
    CHECK_FALSE(cb.mild);
    CHECK_FALSE(cb.non_impact);
    CHECK_FALSE(cb.classical);
    CHECK(cb.mild_clause == "constitutive symbol vanishes in the right half plane");
}

TEST_CASE("classification chain is monotone on a parameter sweep") {
    std::vector<ProblemSpec> specs;
    for (double y0 : {0.0, 0.3}) {
        for (int fi = 0; fi < 3; ++fi) {
            ProblemSpec p;
            p.phi1 = make_atomic({{1.0, 1.5}});
            p.phi2 = make_atomic({{1.0, 0.0}});
            p.forcing = fi == 0   ? make_zero_forcing()
                        : fi == 1 ? make_pendulum_forcing(0.3)
                                  : make_lipschitz_forcing("linear:1");
            p.y0 = y0;
            p.ball_radius = 2.0;
            specs.push_back(p);
        }
    }
    for (const ProblemSpec& p : specs) {
        Classification c = classify_solution(p);
        if (c.classical) CHECK(c.non_impact);
        if (c.non_impact) CHECK(c.mild);
    }
}
