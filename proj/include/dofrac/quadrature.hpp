#pragma once

#include <functional>
#include <vector>

namespace dofrac {

/// Gauss-Legendre rule on [-1,1]. Computed by Newton iteration on the
/// Legendre recurrence and cached per point count.
struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

const GaussRule& gauss_legendre(int q);

/// Same rule mapped onto [a,b].
GaussRule gauss_legendre_on(int q, double a, double b);

/// Adaptive Simpson quadrature of f over [a,b] to the given absolute
/// tolerance.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double tol = 1e-12);

} // namespace dofrac
