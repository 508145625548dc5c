// Command line front end: weight checking, kernel tabulation, solving,
// and comparison against the direct-discretization oracle.

#include "CLI11.hpp"

#include <fstream>
#include <iostream>
#include <string>
#include <variant>

#include "dofrac/errors.hpp"
#include "dofrac/format.hpp"
#include "dofrac/laplace.hpp"
#include "dofrac/oracles.hpp"
#include "dofrac/problem_io.hpp"
#include "dofrac/solver.hpp"

namespace {

using namespace dofrac;

struct CommonFlags {
    std::string file;
    std::string out;
    int grid_n = 0;
    double horizon = 0;
    double tol = 0;
    int max_iter = 0;
    double damping = 0;
    CLI::Option* grid_n_opt = nullptr;
    CLI::Option* horizon_opt = nullptr;
    CLI::Option* tol_opt = nullptr;
    CLI::Option* max_iter_opt = nullptr;
    CLI::Option* damping_opt = nullptr;
};

void add_common(CLI::App* cmd, CommonFlags& fl, bool solver_flags) {
    cmd->add_option("file", fl.file, "problem file")->required();
    cmd->add_option("--out", fl.out, "write output to this path instead of stdout");
    fl.grid_n_opt = cmd->add_option("--grid-n", fl.grid_n, "override [run] n_steps");
    fl.horizon_opt = cmd->add_option("--horizon", fl.horizon, "override [run] horizon");
    if (solver_flags) {
        fl.tol_opt = cmd->add_option("--tol", fl.tol, "override [run] tol");
        fl.max_iter_opt = cmd->add_option("--max-iter", fl.max_iter, "override [run] max_iter");
        fl.damping_opt = cmd->add_option("--damping", fl.damping, "override [run] damping");
    }
}

ParsedProblem load(const CommonFlags& fl) {
    ParsedProblem p = parse_problem_file(fl.file);
    if (fl.grid_n_opt && fl.grid_n_opt->count() > 0) {
        if (fl.grid_n < 2) throw ParseError("n_steps must be at least 2", "grid-n", 0);
        p.run.n_steps = fl.grid_n;
    }
    if (fl.horizon_opt && fl.horizon_opt->count() > 0) {
        if (!(fl.horizon > 0)) throw ParseError("horizon must be positive", "horizon", 0);
        p.run.horizon = fl.horizon;
        p.spec.horizon = fl.horizon;
    }
    if (fl.tol_opt && fl.tol_opt->count() > 0) {
        if (!(fl.tol > 0)) throw ParseError("tol must be positive", "tol", 0);
        p.run.tol = fl.tol;
    }
    if (fl.max_iter_opt && fl.max_iter_opt->count() > 0) {
        if (fl.max_iter < 1) throw ParseError("max_iter must be at least 1", "max-iter", 0);
        p.run.max_iter = fl.max_iter;
    }
    if (fl.damping_opt && fl.damping_opt->count() > 0) {
        if (!(fl.damping > 0) || fl.damping > 1)
            throw ParseError("damping must lie in (0, 1]", "damping", 0);
        p.run.damping = fl.damping;
    }
    return p;
}

/// Stream sink that writes either to stdout or to --out.
class Output {
public:
    explicit Output(const std::string& path) {
        if (!path.empty()) {
            file_.open(path, std::ios::binary);
            if (!file_) throw std::runtime_error("cannot open output file: " + path);
        }
    }
    std::ostream& os() { return file_.is_open() ? file_ : std::cout; }

private:
    std::ofstream file_;
};

const char* bool_str(bool b) { return b ? "true" : "false"; }

int run_check(const CommonFlags& fl) {
    ParsedProblem p = load(fl);
    Output out(fl.out);
    std::ostream& os = out.os();

    WeightClass w1 = classify_weight(p.spec.phi1, WeightRole::phi1);
    WeightClass w2 = classify_weight(p.spec.phi2, WeightRole::phi2);
    os << "phi1_class = " << to_string(w1.phi1_class);
    if (!w1.reason.empty()) os << " (" << w1.reason << ")";
    os << "\n";
    os << "phi2_class = " << to_string(w2.phi2_class);
    if (!w2.reason.empty()) os << " (" << w2.reason << ")";
    os << "\n";

    if (const auto* atomic = std::get_if<AtomicWeight>(&p.spec.phi2)) {
        AdmissibilityReport rep = check_A0(*atomic);
        os << "admissible = " << bool_str(rep.admissible) << "\n";
        os << "boundary_degenerate = " << bool_str(rep.boundary_degenerate) << "\n";
        os << "indeterminate = " << bool_str(rep.indeterminate) << "\n";
        os << "r_inner = " << format_double(rep.r_inner) << "\n";
        os << "R_outer = " << format_double(rep.R_outer) << "\n";
        os << "winding_count = " << rep.winding_count << "\n";
        for (const AxisZero& z : rep.axis_zeros) {
            os << "axis_zero = " << format_double(z.ordinate)
               << " residual " << format_double(z.residual) << "\n";
        }
        os << "notes = " << rep.notes << "\n";
        if (rep.boundary_degenerate || rep.indeterminate) return 4;
        return rep.admissible ? 0 : 3;
    }

    const bool family_ok = w2.phi2_class == Phi2Class::smooth_unit_interval;
    os << "admissible = " << bool_str(family_ok) << "\n";
    os << "notes = "
       << (family_ok ? "admissible by continuous-family classification" : w2.reason) << "\n";
    return family_ok ? 0 : 3;
}

int run_kernel(const CommonFlags& fl) {
    ParsedProblem p = load(fl);
    TimeGrid grid = make_grid(p.run.horizon, p.run.n_steps);
    FundamentalSolution kernel = fundamental_solution(p.spec.phi2, grid);
    Output out(fl.out);
    std::ostream& os = out.os();

    os << "t,l,cumulative\n";
    for (int j = 0; j < grid.node_count(); ++j) {
        os << format_double(grid.node(j)) << ','
           << format_double(kernel.regular[j]) << ','
           << format_double(kernel.cumulative[j]) << "\n";
    }
    os << "# regularity = " << to_string(kernel.regularity) << "\n";
    os << "# atomic_coef = " << format_double(kernel.atomic_coef) << "\n";
    return 0;
}

void print_classification(std::ostream& os, const Classification& c) {
    os << "# mild = " << bool_str(c.mild);
    if (!c.mild_clause.empty()) os << " (" << c.mild_clause << ")";
    os << "\n";
    os << "# non_impact = " << bool_str(c.non_impact);
    if (!c.non_impact_clause.empty()) os << " (" << c.non_impact_clause << ")";
    os << "\n";
    os << "# classical = " << bool_str(c.classical);
    if (!c.classical_clause.empty()) os << " (" << c.classical_clause << ")";
    os << "\n";
}

int run_solve(const CommonFlags& fl) {
    ParsedProblem p = load(fl);
    TimeGrid grid = make_grid(p.run.horizon, p.run.n_steps);
    SolveOptions opts;
    opts.tol = p.run.tol;
    opts.max_iter = p.run.max_iter;
    opts.damping = p.run.damping;
    SolutionPair sol = picard_solve(p.spec, grid, opts);

    if (!sol.certified) {
        std::cerr << "warning: no contraction ball certificate at radius "
                  << format_double(p.spec.ball_radius) << "; run is uncertified\n";
    } else if (sol.delta_used < grid.horizon) {
        std::cerr << "warning: horizon " << format_double(grid.horizon)
                  << " exceeds certified interval " << format_double(sol.delta_used)
                  << "; the tail is uncertified\n";
    }

    Output out(fl.out);
    std::ostream& os = out.os();
    os << "t,y,z,z_ode_residual\n";
    for (int j = 0; j < grid.node_count(); ++j) {
        os << format_double(grid.node(j)) << ','
           << format_double(sol.y[j]) << ','
           << format_double(sol.z[j]) << ','
           << format_double(sol.z[j] - sol.z_ode[j]) << "\n";
    }
    os << "# delta_used = " << format_double(sol.delta_used) << "\n";
    os << "# certified = " << bool_str(sol.certified) << "\n";
    if (sol.estimate) {
        os << "# certificate_slack = " << format_double(sol.estimate->slack) << "\n";
    }
    os << "# iterations = " << sol.picard_iters << "\n";
    os << "# converged = " << bool_str(sol.converged) << "\n";
    os << "# fixed_point_residual = " << format_double(sol.fixed_point_residual) << "\n";
    os << "# constitutive_residual = " << format_double(sol.constitutive_residual) << "\n";
    os << "# ode_residual = " << format_double(sol.ode_residual) << "\n";
    os << "# A_d = " << format_double(sol.dissipation) << "\n";
    print_classification(os, sol.classification);
    return sol.converged ? 0 : 2;
}

int run_oracle_compare(const CommonFlags& fl, double agree_tol) {
    ParsedProblem p = load(fl);
    TimeGrid grid = make_grid(p.run.horizon, p.run.n_steps);
    SolveOptions opts;
    opts.tol = p.run.tol;
    opts.max_iter = p.run.max_iter;
    opts.damping = p.run.damping;
    SolutionPair sol = picard_solve(p.spec, grid, opts);
    SolutionPair ref = direct_coupled_solve(p.spec, grid);

    double sup_diff = 0;
    for (int j = 0; j < grid.node_count(); ++j) {
        sup_diff = std::max(sup_diff, std::abs(sol.y[j] - ref.y[j]));
    }

    Output out(fl.out);
    std::ostream& os = out.os();
    os << "t,y_solver,y_oracle,abs_diff\n";
    for (int j = 0; j < grid.node_count(); ++j) {
        os << format_double(grid.node(j)) << ','
           << format_double(sol.y[j]) << ','
           << format_double(ref.y[j]) << ','
           << format_double(std::abs(sol.y[j] - ref.y[j])) << "\n";
    }
    os << "# sup_diff = " << format_double(sup_diff) << "\n";
    os << "# agree_tol = " << format_double(agree_tol) << "\n";
    os << "# agree = " << bool_str(sup_diff <= agree_tol) << "\n";
    return sup_diff <= agree_tol ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"distributed-order viscoelastic pair: check, kernel, solve, compare"};
    app.require_subcommand(1);

    CommonFlags fl_check, fl_kernel, fl_solve, fl_oracle;
    double agree_tol = 5e-3;

    CLI::App* c_check =
        app.add_subcommand("check", "classify the weights and test symbol admissibility");
    add_common(c_check, fl_check, false);
    CLI::App* c_kernel =
        app.add_subcommand("kernel", "tabulate the fundamental-solution kernel as CSV");
    add_common(c_kernel, fl_kernel, false);
    CLI::App* c_solve =
        app.add_subcommand("solve", "run the fixed-point solver and print CSV plus diagnostics");
    add_common(c_solve, fl_solve, true);
    CLI::App* c_oracle = app.add_subcommand(
        "oracle-compare", "compare the solver against a direct coupled discretization");
    add_common(c_oracle, fl_oracle, true);
    c_oracle->add_option("--agree-tol", agree_tol, "sup-norm agreement tolerance")
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (c_check->parsed()) return run_check(fl_check);
        if (c_kernel->parsed()) return run_kernel(fl_kernel);
        if (c_solve->parsed()) return run_solve(fl_solve);
        if (c_oracle->parsed()) return run_oracle_compare(fl_oracle, agree_tol);
    } catch (const ParseError& e) {
        std::cerr << "parse error";
        if (e.line > 0) std::cerr << " (line " << e.line << ")";
        std::cerr << ": " << e.what() << "\n";
        return 1;
    } catch (const IndeterminateAdmissibilityError& e) {
        std::cerr << "admissibility: " << e.what() << "\n";
        return 4;
    } catch (const AdmissibilityError& e) {
        std::cerr << "admissibility: " << e.what() << "\n";
        return 3;
    } catch (const DivergenceError& e) {
        std::cerr << "solver divergence at iteration " << e.iteration << ": " << e.what() << "\n";
        return 2;
    } catch (const OracleFailure& e) {
        std::cerr << "oracle failure: " << e.what() << "\n";
        return 2;
    } catch (const UnsupportedKernelError& e) {
        std::cerr << "unsupported problem: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
