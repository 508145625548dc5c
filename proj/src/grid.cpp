#include "dofrac/grid.hpp"

#include <stdexcept>
#include <utility>

namespace dofrac {

namespace {

void require_same_grid(const GridFunction& a, const GridFunction& b, const char* op) {
    if (!(a.grid == b.grid))
        throw std::invalid_argument(std::string(op) + ": operands on different grids");
}

} // namespace

GridFunction::GridFunction(TimeGrid g, Eigen::ArrayXd v) : grid(g), values(std::move(v)) {
    if (values.size() != grid.node_count())
        throw std::invalid_argument("GridFunction: sample count does not match grid");
}

TimeGrid make_grid(double horizon, int n_steps) {
    if (!(horizon > 0.0)) throw std::invalid_argument("make_grid: horizon must be positive");
    if (n_steps < 2) throw std::invalid_argument("make_grid: need at least 2 steps");
    return TimeGrid{horizon, n_steps};
}

GridFunction conv_causal(const GridFunction& u, const GridFunction& v) {
    require_same_grid(u, v, "conv_causal");
    const int n = u.grid.n_steps;
    const double h = u.grid.step();
    GridFunction out = GridFunction::zeros(u.grid);
    for (int i = 1; i <= n; ++i) {
        double acc = 0.5 * (u[0] * v[i] + u[i] * v[0]);
        for (int j = 1; j < i; ++j) acc += u[j] * v[i - j];
        out[i] = acc * h;
    }
    return out;
}

GridFunction stieltjes_conv(const GridFunction& K, const GridFunction& g) {
    require_same_grid(K, g, "stieltjes_conv");
    if (K[0] != 0.0) throw std::invalid_argument("stieltjes_conv: K(0) must be 0");
    const int n = K.grid.n_steps;
    GridFunction out = GridFunction::zeros(K.grid);
    for (int i = 1; i <= n; ++i) {
        double acc = 0.0;
        for (int j = 0; j < i; ++j) {
            const double gmid = 0.5 * (g[i - j] + g[i - j - 1]);
            acc += gmid * (K[j + 1] - K[j]);
        }
        out[i] = acc;
    }
    return out;
}

GridFunction diff1(const GridFunction& y) {
    const int n = y.grid.n_steps;
    if (n < 2) throw std::invalid_argument("diff1: need at least 2 steps");
    const double h = y.grid.step();
    GridFunction out = GridFunction::zeros(y.grid);
    out[0] = (-3.0 * y[0] + 4.0 * y[1] - y[2]) / (2.0 * h);
    for (int j = 1; j < n; ++j) out[j] = (y[j + 1] - y[j - 1]) / (2.0 * h);
    out[n] = (3.0 * y[n] - 4.0 * y[n - 1] + y[n - 2]) / (2.0 * h);
    return out;
}

GridFunction diff2(const GridFunction& y) {
    const int n = y.grid.n_steps;
    if (n < 4) throw std::invalid_argument("diff2: need at least 4 steps");
    const double h2 = y.grid.step() * y.grid.step();
    GridFunction out = GridFunction::zeros(y.grid);
    out[0] = (2.0 * y[0] - 5.0 * y[1] + 4.0 * y[2] - y[3]) / h2;
    for (int j = 1; j < n; ++j) out[j] = (y[j + 1] - 2.0 * y[j] + y[j - 1]) / h2;
    out[n] = (2.0 * y[n] - 5.0 * y[n - 1] + 4.0 * y[n - 2] - y[n - 3]) / h2;
    return out;
}

double trapezoid(const GridFunction& y) {
    const int n = y.grid.n_steps;
    const double h = y.grid.step();
    double acc = 0.5 * (y[0] + y[n]);
    for (int j = 1; j < n; ++j) acc += y[j];
    return acc * h;
}

} // namespace dofrac
