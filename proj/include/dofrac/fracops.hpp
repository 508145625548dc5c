#pragma once

#include "dofrac/grid.hpp"

namespace dofrac {

/// Samples of the causal power kernel H(t) t^{alpha-1} / Gamma(alpha).
/// Node 0 stores: 0 for alpha > 1, 1 for alpha = 1, and the first-cell
/// average h^{alpha-1}/Gamma(alpha+1) for alpha < 1 (preserves the kernel
/// mass over the first cell instead of sampling the singularity).
GridFunction f_alpha(double alpha, const TimeGrid& grid);

/// Riemann-Liouville fractional integral of order gamma >= 0:
///   (I^gamma y)(t) = (1/Gamma(gamma)) int_0^t (t-s)^{gamma-1} y(s) ds,
/// gamma = 0 returns y unchanged. Product-trapezoid discretization
/// (piecewise-linear y against the exact kernel moments), valid across the
/// singular-kernel range gamma < 1.
GridFunction frac_integral(const GridFunction& y, double gamma);

/// Riemann-Liouville fractional derivative of order gamma in [0,2):
///   D^gamma y = d^k/dt^k I^{k-gamma} y,  k = 1 for gamma in (0,1],
///                                        k = 2 for gamma in (1,2);
/// gamma = 0 is the identity. Note D^gamma of a nonzero constant is not zero.
GridFunction frac_derivative(const GridFunction& y, double gamma);

} // namespace dofrac
