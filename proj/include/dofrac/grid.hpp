#pragma once

#include <Eigen/Dense>

namespace dofrac {

/// Uniform time grid on [0, T] with N steps (N+1 nodes t_j = j*T/N).
struct TimeGrid {
    double horizon = 0.0;
    int n_steps = 0;

    double step() const { return horizon / n_steps; }
    int node_count() const { return n_steps + 1; }
    double node(int j) const { return j * horizon / n_steps; }

    /// All nodes as an array (ascending).
    Eigen::ArrayXd nodes() const {
        Eigen::ArrayXd t(node_count());
        for (int j = 0; j <= n_steps; ++j) t[j] = node(j);
        return t;
    }

    friend bool operator==(const TimeGrid& a, const TimeGrid& b) {
        return a.horizon == b.horizon && a.n_steps == b.n_steps;
    }
};

/// Real samples on a TimeGrid. Represents a causal function (zero for t < 0).
struct GridFunction {
    TimeGrid grid;
    Eigen::ArrayXd values;

    GridFunction() = default;
    GridFunction(TimeGrid g, Eigen::ArrayXd v);

    /// Zero samples on a grid.
    static GridFunction zeros(const TimeGrid& g) {
        return GridFunction(g, Eigen::ArrayXd::Zero(g.node_count()));
    }

    double operator[](int j) const { return values[j]; }
    double& operator[](int j) { return values[j]; }
    int size() const { return static_cast<int>(values.size()); }
    double sup_norm() const { return values.abs().maxCoeff(); }
};

/// Validated grid construction: T > 0, N >= 2.
TimeGrid make_grid(double horizon, int n_steps);

/// Sample a callable on a grid.
template <typename F>
GridFunction sample(const TimeGrid& g, F&& f) {
    Eigen::ArrayXd v(g.node_count());
    for (int j = 0; j < g.node_count(); ++j) v[j] = f(g.node(j));
    return GridFunction(g, std::move(v));
}

/// Causal convolution (u*v)(t_n) = int_0^{t_n} u(s) v(t_n - s) ds by
/// trapezoidal product quadrature. Value at t_0 is 0 by convention.
GridFunction conv_causal(const GridFunction& u, const GridFunction& v);

/// Riemann-Stieltjes convolution against a kernel given through its
/// cumulative K(t) = int_0^t l (K(0) = 0):
///   (l*g)(t_n) ~ sum_j g(t_n - s_{j+1/2}) (K(s_{j+1}) - K(s_j)),
/// with midpoint interpolation of g (average of adjacent samples).
/// Tolerates integrable kernel singularities at 0. Value at t_0 is 0.
GridFunction stieltjes_conv(const GridFunction& K, const GridFunction& g);

/// First derivative: central interior, first-order one-sided at the ends.
GridFunction diff1(const GridFunction& y);

/// Second derivative: central interior, second-order one-sided at the ends.
/// Requires N >= 4.
GridFunction diff2(const GridFunction& y);

/// Trapezoidal integral over the whole grid.
double trapezoid(const GridFunction& y);

} // namespace dofrac
