#include "dofrac/solver.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "dofrac/errors.hpp"
#include "dofrac/fracops.hpp"
#include "dofrac/quadrature.hpp"

namespace dofrac {

namespace {

double parse_tag_value(const std::string& tag, size_t colon) {
    const std::string body = tag.substr(colon + 1);
    size_t pos = 0;
    double v = 0.0;
    try {
        v = std::stod(body, &pos);
    } catch (const std::exception&) {
        pos = std::string::npos;
    }
    if (pos != body.size())
        throw std::invalid_argument("malformed function tag value: " + tag);
    return v;
}

} // namespace

const char* to_string(ForcingKind k) {
    switch (k) {
        case ForcingKind::zero: return "zero";
        case ForcingKind::time_only: return "time_only";
        case ForcingKind::power_bound: return "power_bound";
        case ForcingKind::lipschitz: return "lipschitz";
        case ForcingKind::pendulum: return "pendulum";
    }
    return "zero";
}

std::function<double(double)> time_function_from_tag(const std::string& tag) {
    if (tag == "zero") return [](double) { return 0.0; };
    const size_t colon = tag.find(':');
    if (colon == std::string::npos)
        throw std::invalid_argument("unknown function tag: " + tag);
    const std::string name = tag.substr(0, colon);
    const double c = parse_tag_value(tag, colon);
    if (name == "const") return [c](double) { return c; };
    if (name == "linear") return [c](double t) { return c * t; };
    if (name == "sqrt") return [c](double t) { return c * std::sqrt(t); };
    if (name == "sin") return [c](double t) { return std::sin(c * t); };
    if (name == "cos") return [c](double t) { return std::cos(c * t); };
    throw std::invalid_argument("unknown function tag: " + tag);
}

ForcingTerm make_zero_forcing() {
    ForcingTerm out;
    out.kind = ForcingKind::zero;
    out.f = [](double, double) { return 0.0; };
    out.envelope = [](double) { return 0.0; };
    out.alpha = 1.0;
    out.tag = "zero";
    out.bounded_by_power = true;
    out.lipschitz_vanishing = true;
    out.lipschitz_joint = true;
    return out;
}

ForcingTerm make_time_forcing(const std::string& g_tag) {
    ForcingTerm out;
    out.kind = ForcingKind::time_only;
    auto g = time_function_from_tag(g_tag);
    out.f = [g](double t, double) { return g(t); };
    out.envelope = [g](double t) { return std::abs(g(t)); };
    out.alpha = 0.0; // state-independent mass
    out.tag = g_tag;
    return out;
}

ForcingTerm make_power_bound_forcing(const std::string& h_tag, double alpha) {
    if (!(alpha > 0.0))
        throw std::invalid_argument("power-bound forcing: alpha must be positive");
    ForcingTerm out;
    out.kind = ForcingKind::power_bound;
    auto h = time_function_from_tag(h_tag);
    out.f = [h, alpha](double t, double u) {
        return h(t) * std::copysign(std::pow(std::abs(u), alpha), u);
    };
    out.envelope = [h](double t) { return std::abs(h(t)); };
    out.alpha = alpha;
    out.tag = h_tag;
    out.bounded_by_power = true;
    return out;
}

ForcingTerm make_lipschitz_forcing(const std::string& h_tag) {
    ForcingTerm out;
    out.kind = ForcingKind::lipschitz;
    auto h = time_function_from_tag(h_tag);
    out.f = [h](double t, double u) { return h(t) * u; };
    out.envelope = [h](double t) { return std::abs(h(t)); };
    out.alpha = 1.0;
    out.tag = h_tag;
    out.bounded_by_power = true;
    out.lipschitz_vanishing = (h(0.0) == 0.0);
    return out;
}

ForcingTerm make_pendulum_forcing(double amp) {
    ForcingTerm out;
    out.kind = ForcingKind::pendulum;
    out.f = [amp](double, double u) { return amp * std::sin(u); };
    out.envelope = [amp](double) { return std::abs(amp); };
    out.alpha = 1.0;
    out.amp = amp;
    out.tag = "pendulum";
    out.bounded_by_power = true; // |amp sin u| <= |amp| |u|
    return out;
}

GridFunction J_op(const OrderWeight& phi1, const GridFunction& y, int q) {
    GridFunction out = GridFunction::zeros(y.grid);
    if (const auto* a = std::get_if<AtomicWeight>(&phi1)) {
        for (const Atom& atom : a->atoms) {
            if (atom.order >= 2.0) throw std::invalid_argument("J_op: strain order reaches 2");
            out.values += atom.coef * frac_integral(y, 2.0 - atom.order).values;
        }
        return out;
    }
    if (const auto* c = std::get_if<ContinuousWeight>(&phi1)) {
        if (c->hi >= 2.0) throw std::invalid_argument("J_op: strain support reaches 2");
        const GaussRule rule = gauss_legendre_on(q, c->lo, c->hi);
        for (int i = 0; i < q; ++i)
            out.values += rule.weights[i] * c->density(rule.nodes[i]) *
                          frac_integral(y, 2.0 - rule.nodes[i]).values;
        return out;
    }
    const auto& e = std::get<ExponentialWeight>(phi1);
    const GaussRule rule = gauss_legendre_on(q, 0.0, 1.0);
    for (int i = 0; i < q; ++i)
        out.values += rule.weights[i] * std::pow(e.base, rule.nodes[i]) *
                      frac_integral(y, 2.0 - rule.nodes[i]).values;
    return out;
}

GridFunction kernel_convolve(const FundamentalSolution& kernel, const GridFunction& g) {
    if (!(kernel.regular.grid == g.grid))
        throw std::invalid_argument("kernel_convolve: grid mismatch");
    switch (kernel.regularity) {
        case KernelRegularity::algebraic:
            return GridFunction(g.grid, kernel.atomic_coef * g.values);
        case KernelRegularity::absolutely_continuous:
            return conv_causal(kernel.regular, g);
        case KernelRegularity::locally_integrable:
            return stieltjes_conv(kernel.cumulative, g);
    }
    throw std::logic_error("kernel_convolve: unknown regularity");
}

GridFunction T_op(const ProblemSpec& p, const FundamentalSolution& kernel,
                  const GridFunction& y) {
    const TimeGrid& grid = y.grid;
    const GridFunction conv = kernel_convolve(kernel, J_op(p.phi1, y));
    GridFunction fv = GridFunction::zeros(grid);
    for (int j = 0; j < grid.node_count(); ++j) fv[j] = p.forcing(grid.node(j), y[j]);
    const GridFunction i2f = frac_integral(fv, 2.0);
    GridFunction out = GridFunction::zeros(grid);
    out.values = -conv.values + i2f.values + p.v0 * grid.nodes() + p.y0;
    return out;
}

namespace {

/// Mass of the memory operator at time t:
/// <|phi1(gamma)|, t^{2-gamma}/Gamma(3-gamma)>.
double memory_mass(const OrderWeight& phi1, double t) {
    auto term = [t](double weight, double order) {
        return std::abs(weight) * std::pow(t, 2.0 - order) / std::tgamma(3.0 - order);
    };
    if (const auto* a = std::get_if<AtomicWeight>(&phi1)) {
        double acc = 0.0;
        for (const Atom& atom : a->atoms) acc += term(atom.coef, atom.order);
        return acc;
    }
    if (const auto* c = std::get_if<ContinuousWeight>(&phi1)) {
        const GaussRule rule = gauss_legendre_on(32, c->lo, c->hi);
        double acc = 0.0;
        for (int i = 0; i < 32; ++i)
            acc += rule.weights[i] * term(c->density(rule.nodes[i]), rule.nodes[i]);
        return acc;
    }
    const auto& e = std::get<ExponentialWeight>(phi1);
    const GaussRule rule = gauss_legendre_on(32, 0.0, 1.0);
    double acc = 0.0;
    for (int i = 0; i < 32; ++i)
        acc += rule.weights[i] * term(std::pow(e.base, rule.nodes[i]), rule.nodes[i]);
    return acc;
}

/// Nodewise int_0^{t_j} |regular|, then linear interpolation in t. Uses the
/// transform-computed cumulative when the density is nonnegative (tighter
/// than requadrature), a |.|-trapezoid with cell-averaged first cell
/// otherwise.
class KernelMass {
public:
    explicit KernelMass(const FundamentalSolution& kernel)
        : atom_(std::abs(kernel.atomic_coef)), grid_(kernel.regular.grid) {
        if (kernel.regularity == KernelRegularity::algebraic) return;
        const Eigen::ArrayXd& reg = kernel.regular.values;
        const double floor = -1e-12 * std::max(1.0, reg.abs().maxCoeff());
        if (kernel.regular.values.minCoeff() >= floor) {
            mass_ = kernel.cumulative.values;
        } else {
            const double h = grid_.step();
            mass_.resize(reg.size());
            mass_[0] = 0.0;
            mass_[1] = h * std::abs(reg[0]);
            for (int j = 2; j < reg.size(); ++j)
                mass_[j] = mass_[j - 1] + 0.5 * h * (std::abs(reg[j - 1]) + std::abs(reg[j]));
        }
    }

    double operator()(double t) const {
        if (mass_.size() == 0) return atom_;
        const double h = grid_.step();
        const double clamped = std::min(std::max(t, 0.0), grid_.horizon);
        const int j = std::min(int(clamped / h), grid_.n_steps - 1);
        const double frac = clamped / h - j;
        return atom_ + mass_[j] + frac * (mass_[j + 1] - mass_[j]);
    }

private:
    double atom_;
    TimeGrid grid_;
    Eigen::ArrayXd mass_;
};

} // namespace

DeltaEstimate delta_estimate(const ProblemSpec& p, const FundamentalSolution& kernel) {
    const double r = p.ball_radius;
    if (!(r > 0.0)) throw std::invalid_argument("delta_estimate: ball_radius must be positive");
    const TimeGrid& grid = kernel.regular.grid;
    const KernelMass kernel_mass(kernel);
    const bool no_forcing = p.forcing.kind == ForcingKind::zero;
    const double alpha = p.forcing.kind == ForcingKind::time_only ? 0.0 : p.forcing.alpha;
    auto forcing_mass = [&](double t) {
        if (no_forcing || t == 0.0) return 0.0;
        return adaptive_simpson(
            [&](double x) { return std::abs(p.forcing.envelope(x)) * (t - x); }, 0.0, t);
    };
    auto lhs = [&](double t) {
        return kernel_mass(t) * memory_mass(p.phi1, t) * r +
               forcing_mass(t) * std::pow(r, alpha) + std::abs(p.v0) * t + std::abs(p.y0);
    };

    const double h = grid.step();
    const double at_step = lhs(h);
    if (at_step > r)
        throw NoBallError("ball certificate fails over a single grid step; enlarge ball_radius",
                          at_step);
    double delta = grid.horizon;
    if (lhs(grid.horizon) > r) {
        double lo = h, hi = grid.horizon;
        for (int i = 0; i < 200 && hi - lo > 1e-15 * grid.horizon; ++i) {
            const double mid = 0.5 * (lo + hi);
            (lhs(mid) <= r ? lo : hi) = mid;
        }
        delta = lo;
    }
    return {delta, memory_mass(p.phi1, delta), kernel_mass(delta), forcing_mass(delta),
            r - lhs(delta)};
}

GridFunction recover_z(const ProblemSpec& p, const FundamentalSolution& kernel,
                       const GridFunction& y) {
    return kernel_convolve(kernel, distributed_derivative(p.phi1, y));
}

double dissipation_work(const GridFunction& y, const GridFunction& z) {
    if (!(y.grid == z.grid)) throw std::invalid_argument("dissipation_work: grid mismatch");
    return trapezoid(GridFunction(y.grid, z.values * diff1(y).values));
}

Classification classify_solution(const ProblemSpec& p) {
    Classification c;
    const WeightClass w1 = classify_weight(p.phi1, WeightRole::phi1);
    const WeightClass w2 = classify_weight(p.phi2, WeightRole::phi2);
    const Phi1Class c1 = w1.phi1_class;
    const ForcingTerm& f = p.forcing;
    const bool y0_zero = p.y0 == 0.0;
    const bool v0_zero = p.v0 == 0.0;

    // The constitutive law must be uniquely solvable for the stress.
    bool phi2_ok = false;
    std::string phi2_note;
    if (w2.phi2_class == Phi2Class::atomic_symbol) {
        const AdmissibilityReport rep = check_A0(std::get<AtomicWeight>(p.phi2));
        if (rep.indeterminate)
            phi2_note = "constitutive admissibility could not be decided";
        else if (!rep.admissible)
            phi2_note = "constitutive symbol vanishes in the right half plane";
        else
            phi2_ok = true;
    } else if (w2.phi2_class == Phi2Class::smooth_unit_interval) {
        phi2_ok = true;
    } else {
        phi2_note = "constitutive weight not in a covered class (" + w2.reason + ")";
    }
    if (!phi2_ok) {
        c.mild_clause = c.non_impact_clause = c.classical_clause = phi2_note;
        return c;
    }

    const bool exp_pair = std::holds_alternative<ExponentialWeight>(p.phi1) &&
                          std::holds_alternative<ExponentialWeight>(p.phi2) &&
                          std::get<ExponentialWeight>(p.phi1).base >
                              std::get<ExponentialWeight>(p.phi2).base;
    const bool phi1_covered =
        c1 == Phi1Class::atomic || c1 == Phi1Class::continuous_sub2 ||
        c1 == Phi1Class::continuous_sub1 || c1 == Phi1Class::exponential_family;
    double beta0 = -std::numeric_limits<double>::infinity();
    if (const auto* a1 = std::get_if<AtomicWeight>(&p.phi1); a1 && !a1->atoms.empty())
        beta0 = a1->leading_order();
    bool kernel_ac = false;
    if (const auto* a2 = std::get_if<AtomicWeight>(&p.phi2))
        kernel_ac = a2->leading_order() - a2->trailing_order() > 1.0;

    // Mild: power-bounded forcing with a covered strain weight.
    if (!f.bounded_by_power) {
        c.mild_clause = "forcing admits no power-type state bound";
    } else if (c1 == Phi1Class::continuous_negative) {
        c.mild_clause = "strain weight of negative orders is covered only together with "
                        "vanishing Lipschitz forcing";
    } else if (!phi1_covered) {
        c.mild_clause = "strain weight not in a covered class (" + w1.reason + ")";
    } else {
        c.mild = true;
        c.mild_clause = "power-bounded forcing with covered strain and constitutive weights";
    }

    // Non-impact: continuity of the velocity at the initial time.
    if (!c.mild) {
        c.non_impact_clause = "requires mild solvability first";
    } else if (exp_pair) {
        c.non_impact = true;
        c.non_impact_clause = "exponential weight pair always yields a continuous velocity";
    } else if (c1 == Phi1Class::continuous_sub1) {
        c.non_impact = true;
        c.non_impact_clause = "strain orders stay below one";
    } else if (c1 == Phi1Class::atomic && beta0 < 1.0) {
        c.non_impact = true;
        c.non_impact_clause = "leading strain order below one";
    } else if (y0_zero && kernel_ac) {
        c.non_impact = true;
        c.non_impact_clause = "zero initial displacement with an absolutely continuous kernel";
    } else {
        c.non_impact_clause = y0_zero
                                  ? "no continuity criterion for the initial velocity applies"
                                  : "initial displacement may excite a velocity jump";
    }

    // Classical: vanishing Lipschitz forcing with compatible data.
    if (!f.lipschitz_vanishing) {
        c.classical_clause = f.kind == ForcingKind::pendulum
                                 ? "pendulum forcing has a non-vanishing Lipschitz modulus"
                                 : "forcing is not Lipschitz with vanishing modulus";
    } else if (exp_pair) {
        if (y0_zero) {
            c.classical = true;
            c.classical_clause = "exponential weight pair with zero initial displacement";
        } else {
            c.classical_clause = "exponential weight pair needs zero initial displacement";
        }
    } else if (c1 == Phi1Class::continuous_negative ||
               (c1 == Phi1Class::atomic && beta0 < 0.0)) {
        c.classical = true;
        c.classical_clause = "strain weight of negative orders smooths the stress for any data";
    } else if ((c1 == Phi1Class::continuous_sub1 ||
                (c1 == Phi1Class::atomic && beta0 < 1.0)) &&
               y0_zero) {
        c.classical = true;
        c.classical_clause = "strain orders below one with zero initial displacement";
    } else if (y0_zero && v0_zero && phi1_covered) {
        c.classical = true;
        c.classical_clause = "zero initial data";
    } else {
        c.classical_clause = "initial data outside the covered classical cases";
    }

    // classical => non_impact => mild.
    if (c.classical && !c.non_impact) {
        c.non_impact = true;
        c.non_impact_clause = "implied by classical solvability";
    }
    if ((c.non_impact || c.classical) && !c.mild) {
        c.mild = true;
        c.mild_clause = "implied by classical solvability";
    }
    return c;
}

SolutionPair picard_solve(const ProblemSpec& p, const TimeGrid& grid,
                          const SolveOptions& opts) {
    if (!(opts.tol > 0.0)) throw std::invalid_argument("picard_solve: tol must be positive");
    if (!(opts.damping > 0.0 && opts.damping <= 1.0))
        throw std::invalid_argument("picard_solve: damping must lie in (0,1]");
    const FundamentalSolution kernel = fundamental_solution(p.phi2, grid);

    SolutionPair sol;
    try {
        const DeltaEstimate est = delta_estimate(p, kernel);
        sol.estimate = est;
        sol.delta_used = std::min(est.delta, grid.horizon);
        sol.certified = true;
    } catch (const NoBallError&) {
        sol.delta_used = 0.0;
        sol.certified = false;
    }

    const double w = opts.damping;
    GridFunction y = sample(grid, [&](double t) { return p.y0 + p.v0 * t; });
    for (int it = 1; it <= opts.max_iter; ++it) {
        const GridFunction ty = T_op(p, kernel, y);
        Eigen::ArrayXd next = (1.0 - w) * y.values + w * ty.values;
        if (!next.allFinite())
            throw DivergenceError("picard iterate became non-finite", it);
        const double diff = (next - y.values).abs().maxCoeff();
        y.values = std::move(next);
        sol.picard_iters = it;
        if (diff < opts.tol) {
            sol.converged = true;
            break;
        }
    }

    sol.fixed_point_residual = (T_op(p, kernel, y).values - y.values).abs().maxCoeff();
    GridFunction z = recover_z(p, kernel, y);
    GridFunction fv = GridFunction::zeros(grid);
    for (int j = 0; j < grid.node_count(); ++j) fv[j] = p.forcing(grid.node(j), y[j]);
    GridFunction z_ode(grid, fv.values - diff2(y).values);
    sol.ode_residual = (z.values - z_ode.values).abs().maxCoeff();
    sol.constitutive_residual = (distributed_derivative(p.phi1, y).values -
                                 distributed_derivative(p.phi2, z).values)
                                    .abs()
                                    .maxCoeff();
    sol.dissipation = dissipation_work(y, z);
    sol.classification = classify_solution(p);
    sol.y = std::move(y);
    sol.z = std::move(z);
    sol.z_ode = std::move(z_ode);
    return sol;
}

} // namespace dofrac
