#pragma once

#include <string>

#include "dofrac/solver.hpp"

namespace dofrac {

/// Numerical run parameters from the [run] section.
struct RunOptions {
    double horizon = 1.0;
    int n_steps = 400;
    double tol = 1e-10;
    int max_iter = 200;
    double damping = 1.0;
    double ball_radius = 2.0;

    friend bool operator==(const RunOptions&, const RunOptions&) = default;
};

struct ParsedProblem {
    ProblemSpec spec;
    RunOptions run;

    friend bool operator==(const ParsedProblem& a, const ParsedProblem& b) {
        return a.spec == b.spec && a.run == b.run;
    }
};

/// Strict key-value problem-file parser. Sections [phi1], [phi2] (kind =
/// atomic | continuous | exponential with atoms / density+support / base),
/// [forcing] (kind = zero | time_only | power_bound | lipschitz | pendulum
/// with g / h, alpha / amp), [initial] (y0, v0), [run] (horizon, n_steps
/// required; tol, max_iter, damping, ball_radius optional). Unknown sections,
/// unknown or duplicate keys, malformed numbers, and invariant violations
/// raise ParseError naming the key and line.
ParsedProblem parse_problem_text(const std::string& text);
ParsedProblem parse_problem_file(const std::string& path);

/// Canonical emission; parse_problem_text(emit_problem(p)) == p.
std::string emit_problem(const ParsedProblem& p);

} // namespace dofrac
