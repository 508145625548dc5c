#pragma once

#include <functional>
#include <optional>
#include <string>

#include "dofrac/grid.hpp"
#include "dofrac/laplace.hpp"
#include "dofrac/order_weight.hpp"

namespace dofrac {

enum class ForcingKind { zero, time_only, power_bound, lipschitz, pendulum };

const char* to_string(ForcingKind k);

/// Right-hand side f(t, u) of the balance equation, together with the
/// envelope data the ball certificate and the classifier use:
///   bounded_by_power:    |f(t,u)| <= envelope(t) |u|^alpha
///   lipschitz_vanishing: |f(t,u)-f(t,v)| <= envelope(t)|u-v|, f(t,0)=0,
///                        envelope(0)=0
///   lipschitz_joint:     joint modulus in (t,u) vanishing at the origin
/// Zero forcing satisfies all three vacuously; a time-only term satisfies
/// none (its mass still enters the certificate with exponent 0).
struct ForcingTerm {
    ForcingKind kind = ForcingKind::zero;
    std::function<double(double, double)> f;
    std::function<double(double)> envelope;
    double alpha = 1.0; // growth exponent in the power bound (0 = time-only)
    double amp = 0.0;   // pendulum amplitude
    std::string tag;    // function tag of g or h (round-trip emission)
    bool bounded_by_power = false;
    bool lipschitz_vanishing = false;
    bool lipschitz_joint = false;

    double operator()(double t, double u) const { return f(t, u); }
    friend bool operator==(const ForcingTerm& a, const ForcingTerm& b) {
        return a.kind == b.kind && a.alpha == b.alpha && a.amp == b.amp && a.tag == b.tag;
    }
};

/// Scalar time function from a tag:
///   const:<c>, linear:<c> (c*t), sqrt:<c> (c*sqrt(t)), sin:<w>, cos:<w>, zero
std::function<double(double)> time_function_from_tag(const std::string& tag);

ForcingTerm make_zero_forcing();
ForcingTerm make_time_forcing(const std::string& g_tag);               // f = g(t)
ForcingTerm make_power_bound_forcing(const std::string& h_tag, double alpha);
                                        // f = h(t) sign(u) |u|^alpha
ForcingTerm make_lipschitz_forcing(const std::string& h_tag);          // f = h(t) u
ForcingTerm make_pendulum_forcing(double amp);                         // f = amp sin(u)

/// The coupled problem: D^2 y + z = f(t, y) with the distributed-order
/// constitutive law <phi1, D^gamma y> = <phi2, D^gamma z>, initial
/// displacement y0 and velocity v0, solved on [0, horizon] inside the ball
/// |y| <= ball_radius.
struct ProblemSpec {
    OrderWeight phi1;
    OrderWeight phi2;
    ForcingTerm forcing;
    double y0 = 0.0;
    double v0 = 0.0;
    double horizon = 1.0;
    double ball_radius = 2.0;

    friend bool operator==(const ProblemSpec& a, const ProblemSpec& b) {
        return a.phi1 == b.phi1 && a.phi2 == b.phi2 && a.forcing == b.forcing && a.y0 == b.y0 &&
               a.v0 == b.v0 && a.horizon == b.horizon && a.ball_radius == b.ball_radius;
    }
};

/// Certified interval data: the largest delta <= horizon with
///   D_delta * M_delta * r + C_delta * r^alpha + |v0| delta + |y0| <= r,
/// where M is the strain-memory mass, D the kernel mass, C the forcing mass.
struct DeltaEstimate {
    double delta = 0.0;
    double M_delta = 0.0;
    double D_delta = 0.0;
    double C_delta = 0.0;
    double slack = 0.0; // r - lhs at delta, >= 0
};

/// Solvability classes granted by hypothesis checking alone (never inferred
/// from numerical smoothness), with the clause that granted or refused each.
struct Classification {
    bool mild = false;
    bool non_impact = false;
    bool classical = false;
    std::string mild_clause;
    std::string non_impact_clause;
    std::string classical_clause;
};

struct SolutionPair {
    GridFunction y;
    GridFunction z;
    GridFunction z_ode; // cross-check stress f(.,y) - y'' from the balance law
    double delta_used = 0.0;
    int picard_iters = 0;
    double fixed_point_residual = 0.0;
    double constitutive_residual = 0.0;
    double ode_residual = 0.0;
    double dissipation = 0.0; // A_d = int z y' dt over the run
    bool converged = false;
    bool certified = false; // delta_used came from a valid ball certificate
    std::optional<DeltaEstimate> estimate;
    Classification classification;
};

/// Memory operator J y = <phi1(gamma), I^{2-gamma} y>; support must stay
/// below 2 so only fractional integrals are invoked.
GridFunction J_op(const OrderWeight& phi1, const GridFunction& y, int q = 32);

/// Convolution with the fundamental solution, dispatched on its regularity:
/// direct scaling (algebraic), Stieltjes sum on the cumulative (locally
/// integrable), trapezoid product rule on the density (absolutely
/// continuous).
GridFunction kernel_convolve(const FundamentalSolution& kernel, const GridFunction& g);

/// One application of the fixed-point map
///   T y = -(l * J y) + I^2 f(., y) + v0 t + y0.
GridFunction T_op(const ProblemSpec& p, const FundamentalSolution& kernel,
                  const GridFunction& y);

/// Largest certified delta for the problem's ball radius; throws NoBallError
/// when the inequality already fails over a single grid step.
DeltaEstimate delta_estimate(const ProblemSpec& p, const FundamentalSolution& kernel);

/// Stress recovery z = l * <phi1(gamma), D^gamma y>.
GridFunction recover_z(const ProblemSpec& p, const FundamentalSolution& kernel,
                       const GridFunction& y);

/// Hypothesis-driven classification of the pair the problem admits.
Classification classify_solution(const ProblemSpec& p);

/// Dissipation work A_d = int z(t) y'(t) dt over the whole grid.
double dissipation_work(const GridFunction& y, const GridFunction& z);

struct SolveOptions {
    double tol = 1e-10;
    int max_iter = 200;
    double damping = 1.0; // in (0,1]: y <- (1-w) y + w T y
};

/// Damped Picard iteration of T from y0 + v0 t. Non-convergence within
/// max_iter is reported in the result, not thrown; non-finite iterates throw
/// DivergenceError. The certificate is attempted first: on NoBallError the
/// run proceeds uncertified with delta_used = 0.
SolutionPair picard_solve(const ProblemSpec& p, const TimeGrid& grid,
                          const SolveOptions& opts = {});

} // namespace dofrac
