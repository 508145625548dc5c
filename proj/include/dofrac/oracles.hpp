#pragma once

#include <complex>
#include <vector>

#include "dofrac/grid.hpp"
#include "dofrac/order_weight.hpp"
#include "dofrac/solver.hpp"

namespace dofrac {

/// Mittag-Leffler E_{alpha,beta}(x) = sum_k x^k / Gamma(alpha k + beta) by
/// direct series (terms in log space, compensated summation). Supported
/// domain |x| <= 10; truncation at relative 1e-16 or 500 terms.
double mittag_leffler(double alpha, double beta, double x);

/// Closed form of the fractional integral on monomials:
/// I^gamma t^p = Gamma(p+1)/Gamma(p+1+gamma) t^{p+gamma}; gamma > 0, p >= 0.
double power_rule_reference(double gamma, double p, double t);

/// Roots of the atomic symbol sum a_i s^{gamma_i} with Re s > 0, found
/// independently of the winding check: substitute w = s^{1/q} for a common
/// rational denominator q <= 12, take companion-matrix eigenvalues of the
/// resulting polynomial, keep |arg w| < pi/(2q), map back s = w^q. Sorted by
/// (Re, Im) for determinism.
std::vector<std::complex<double>> halfplane_roots_oracle(const AtomicWeight& w);

/// Brute-force reference solver for atomic weights: discretize the balance
/// law with a backward second difference and the constitutive law with
/// Grünwald-Letnikov sums, march in time solving a scalar step equation
/// (Newton for state-dependent forcing). A deliberately different
/// discretization family from the kernel/fixed-point path, so disagreement
/// signals real defects.
///
/// Accuracy limit: when the leading strain order exceeds 1 and y0 != 0 the
/// stress has a non-integrable singularity at 0 and the marching start
/// carries O(1) relative error; keep comparisons away from that regime.
SolutionPair direct_coupled_solve(const ProblemSpec& p, const TimeGrid& grid);

} // namespace dofrac
