#include "dofrac/fracops.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace dofrac {

GridFunction f_alpha(double alpha, const TimeGrid& grid) {
    if (!(alpha > 0.0)) throw std::invalid_argument("f_alpha: alpha must be positive");
    const double ga = std::tgamma(alpha);
    GridFunction out = GridFunction::zeros(grid);
    if (alpha < 1.0) {
        const double h = grid.step();
        out[0] = std::pow(h, alpha - 1.0) / std::tgamma(alpha + 1.0);
    } else if (alpha == 1.0) {
        out[0] = 1.0;
    }
    for (int j = 1; j <= grid.n_steps; ++j)
        out[j] = std::pow(grid.node(j), alpha - 1.0) / ga;
    return out;
}

GridFunction frac_integral(const GridFunction& y, double gamma) {
    if (gamma < 0.0) throw std::invalid_argument("frac_integral: order must be >= 0");
    if (gamma == 0.0) return y;
    const int n = y.grid.n_steps;
    const double h = y.grid.step();
    const double scale = std::pow(h, gamma) / std::tgamma(gamma + 2.0);

    // Interior weights b_m = (m+1)^{g+1} - 2 m^{g+1} + (m-1)^{g+1}, b_0 = 1.
    std::vector<double> b(static_cast<size_t>(n) + 1);
    b[0] = 1.0;
    for (int m = 1; m <= n; ++m)
        b[m] = std::pow(m + 1.0, gamma + 1.0) - 2.0 * std::pow(double(m), gamma + 1.0) +
               std::pow(m - 1.0, gamma + 1.0);

    GridFunction out = GridFunction::zeros(y.grid);
    for (int i = 1; i <= n; ++i) {
        const double a0 =
            std::pow(i - 1.0, gamma + 1.0) - std::pow(double(i), gamma) * (i - gamma - 1.0);
        double acc = a0 * y[0];
        for (int j = 1; j <= i; ++j) acc += b[i - j] * y[j];
        out[i] = scale * acc;
    }
    return out;
}

GridFunction frac_derivative(const GridFunction& y, double gamma) {
    if (gamma < 0.0 || gamma >= 2.0)
        throw std::invalid_argument("frac_derivative: order must lie in [0,2)");
    if (gamma == 0.0) return y;
    const int k = gamma <= 1.0 ? 1 : 2;
    GridFunction w = frac_integral(y, k - gamma);
    return k == 1 ? diff1(w) : diff2(w);
}

} // namespace dofrac
