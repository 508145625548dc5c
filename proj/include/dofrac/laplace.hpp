#pragma once

#include <complex>
#include <functional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "dofrac/grid.hpp"
#include "dofrac/order_weight.hpp"

namespace dofrac {

/// A near-vanishing point of the symbol on the imaginary axis, found by the
/// admissibility scan. `ordinate` is the positive imaginary part (conjugate
/// symmetry makes the negative mirror implicit), `residual` is |F| there.
struct AxisZero {
    double ordinate;
    double residual;
};

struct AdmissibilityReport {
    bool admissible = false;
    /// Symbol vanishes on the imaginary axis but (as far as the scan can
    /// tell) not strictly inside the half plane. Kernel inversion is refused.
    bool boundary_degenerate = false;
    /// The boundary phase walk could not be resolved; no verdict.
    bool indeterminate = false;
    double r_inner = 0.0;
    double R_outer = 0.0;
    int winding_count = 0;
    std::vector<AxisZero> axis_zeros;
    std::string notes;
};

class AdmissibilityError : public std::runtime_error {
public:
    AdmissibilityError(const std::string& what, AdmissibilityReport report)
        : std::runtime_error(what), report_(std::move(report)) {}
    const AdmissibilityReport& report() const { return report_; }

private:
    AdmissibilityReport report_;
};

class IndeterminateAdmissibilityError : public std::runtime_error {
public:
    IndeterminateAdmissibilityError(const std::string& what, AdmissibilityReport report)
        : std::runtime_error(what), report_(std::move(report)) {}
    const AdmissibilityReport& report() const { return report_; }

private:
    AdmissibilityReport report_;
};

/// Radii (r_inner, R_outer) such that every zero of the atomic symbol lies in
/// the open annulus r_inner < |s| < R_outer: outside it one term strictly
/// dominates the sum of the others. A single atom has no zeros away from the
/// origin and reports (1, 1).
std::pair<double, double> bracket_zero_region(const AtomicWeight& w);

/// Admissibility of the atomic symbol F(s) = sum coef * s^order for kernel
/// inversion: F must not vanish for Re s > 0. Scans the imaginary axis for
/// boundary zeros first, then counts interior zeros by tracking the argument
/// of F around the boundary of the right-half-plane annulus that brackets all
/// zeros.
AdmissibilityReport check_A0(const AtomicWeight& w);

/// Inverse Laplace transform at time t > 0 by the midpoint rule on a fixed
/// Talbot contour (Dingfelder-Weideman parameterization), using node_count
/// quadrature points. The transform must be analytic to the right of the
/// negative real axis and decay along the contour.
double talbot_ilt(const std::function<std::complex<double>(std::complex<double>)>& transform,
                  double t, int node_count = 64);

enum class KernelRegularity {
    algebraic,             // pure point mass at zero, no regular part
    locally_integrable,    // integrable density, possibly unbounded at zero
    absolutely_continuous, // continuous density vanishing at zero
};

const char* to_string(KernelRegularity r);

/// Convolution kernel with transform 1/F(s), split as
///   atomic_coef * (point mass at 0) + regular density.
/// `regular` holds node samples of the density (node 0 is the cell average
/// over the first step when the density is singular there); `cumulative`
/// holds its running integral from 0, evaluated independently via the
/// transform 1/(s F(s)).
struct FundamentalSolution {
    double atomic_coef;
    GridFunction regular;
    GridFunction cumulative;
    KernelRegularity regularity;
};

/// Kernel of the constitutive law on the given grid. Throws
/// UnsupportedKernelError for weights outside the representable families,
/// AdmissibilityError when the symbol has right-half-plane zeros, and
/// IndeterminateAdmissibilityError when the admissibility check refuses or
/// cannot reach a verdict.
FundamentalSolution fundamental_solution(const OrderWeight& phi2, const TimeGrid& grid);

} // namespace dofrac
