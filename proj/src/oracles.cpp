#include "dofrac/oracles.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "dofrac/errors.hpp"

namespace dofrac {

double mittag_leffler(double alpha, double beta, double x) {
    if (!(alpha > 0.0) || !(beta > 0.0))
        throw std::invalid_argument("mittag_leffler: alpha and beta must be positive");
    if (std::abs(x) > 10.0)
        throw std::domain_error("mittag_leffler: |x| > 10 outside supported domain");
    double sum = 0.0, comp = 0.0;
    const double logx = x == 0.0 ? 0.0 : std::log(std::abs(x));
    for (int k = 0; k <= 500; ++k) {
        double term;
        if (k == 0) {
            term = 1.0 / std::tgamma(beta);
        } else if (x == 0.0) {
            break;
        } else {
            const double mag = std::exp(k * logx - std::lgamma(alpha * k + beta));
            term = (x < 0.0 && (k % 2 == 1)) ? -mag : mag;
        }
        const double t = sum + term;
        if (std::abs(sum) >= std::abs(term))
            comp += (sum - t) + term;
        else
            comp += (term - t) + sum;
        sum = t;
        if (k > 0 && std::abs(term) < 1e-16 * std::abs(sum)) break;
    }
    return sum + comp;
}

double power_rule_reference(double gamma, double p, double t) {
    if (!(gamma > 0.0) || p < 0.0 || t < 0.0)
        throw std::invalid_argument("power_rule_reference: need gamma > 0, p >= 0, t >= 0");
    return std::tgamma(p + 1.0) / std::tgamma(p + 1.0 + gamma) * std::pow(t, p + gamma);
}

std::vector<std::complex<double>> halfplane_roots_oracle(const AtomicWeight& w) {
    if (w.atoms.empty())
        throw std::invalid_argument("halfplane_roots_oracle: empty weight");
    int q = 0;
    for (int cand = 1; cand <= 12 && q == 0; ++cand) {
        bool ok = true;
        for (const Atom& a : w.atoms)
            if (std::abs(a.order * cand - std::round(a.order * cand)) > 1e-9) ok = false;
        if (ok) q = cand;
    }
    if (q == 0)
        throw std::invalid_argument(
            "halfplane_roots_oracle: orders have no common denominator <= 12");

    int degree = 0;
    for (const Atom& a : w.atoms)
        degree = std::max(degree, int(std::lround(a.order * q)));
    Eigen::VectorXd coef = Eigen::VectorXd::Zero(degree + 1);
    for (const Atom& a : w.atoms) coef[int(std::lround(a.order * q))] += a.coef;
    if (coef[degree] == 0.0)
        throw std::invalid_argument("halfplane_roots_oracle: vanishing leading coefficient");

    std::vector<std::complex<double>> roots;
    if (degree > 0) {
        Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(degree, degree);
        for (int i = 1; i < degree; ++i) companion(i, i - 1) = 1.0;
        for (int i = 0; i < degree; ++i) companion(i, degree - 1) = -coef[i] / coef[degree];
        Eigen::EigenSolver<Eigen::MatrixXd> solver(companion);
        const auto eig = solver.eigenvalues();
        for (int i = 0; i < eig.size(); ++i) {
            const std::complex<double> root = eig[i];
            if (std::abs(root) < 1e-12) continue;
            if (std::abs(std::arg(root)) < std::numbers::pi / (2.0 * q) - 1e-10)
                roots.push_back(std::pow(root, q));
        }
    }
    std::sort(roots.begin(), roots.end(), [](const auto& a, const auto& b) {
        return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
    });
    return roots;
}

namespace {

/// Grünwald-Letnikov weights g_m for order gamma: g_0 = 1,
/// g_m = g_{m-1} (1 - (gamma+1)/m).
std::vector<double> gl_weights(double gamma, int n) {
    std::vector<double> g(static_cast<size_t>(n) + 1);
    g[0] = 1.0;
    for (int m = 1; m <= n; ++m) g[m] = g[m - 1] * (1.0 - (gamma + 1.0) / m);
    return g;
}

} // namespace

SolutionPair direct_coupled_solve(const ProblemSpec& p, const TimeGrid& grid) {
    const auto* phi1 = std::get_if<AtomicWeight>(&p.phi1);
    const auto* phi2 = std::get_if<AtomicWeight>(&p.phi2);
    if (phi1 == nullptr || phi2 == nullptr)
        throw std::invalid_argument("direct_coupled_solve: atomic weights only");
    if (phi2->atoms.empty())
        throw std::invalid_argument("direct_coupled_solve: constitutive weight must be nonzero");

    const int n = grid.n_steps;
    const double h = grid.step();
    std::vector<std::vector<double>> gw1, gw2;
    std::vector<double> scale1, scale2;
    for (const Atom& a : phi1->atoms) {
        gw1.push_back(gl_weights(a.order, n));
        scale1.push_back(a.coef * std::pow(h, -a.order));
    }
    for (const Atom& a : phi2->atoms) {
        gw2.push_back(gl_weights(a.order, n));
        scale2.push_back(a.coef * std::pow(h, -a.order));
    }
    double cy = 0.0, cz = 0.0;
    for (double s : scale1) cy += s;
    for (double s : scale2) cz += s;
    if (cz == 0.0 || !std::isfinite(cz))
        throw OracleFailure("direct_coupled_solve: degenerate constitutive column");

    Eigen::ArrayXd y = Eigen::ArrayXd::Zero(n + 1), z = Eigen::ArrayXd::Zero(n + 1);
    auto history = [&](const Eigen::ArrayXd& u, const std::vector<std::vector<double>>& gw,
                       const std::vector<double>& scale, int at) {
        double acc = 0.0;
        for (size_t j = 0; j < gw.size(); ++j) {
            double inner = 0.0;
            for (int m = 1; m <= at; ++m) inner += gw[j][m] * u[at - m];
            acc += scale[j] * inner;
        }
        return acc;
    };

    y[0] = p.y0;
    z[0] = cy * y[0] / cz;
    if (n >= 1) {
        y[1] = p.y0 + h * p.v0;
        z[1] = (cy * y[1] + history(y, gw1, scale1, 1) - history(z, gw2, scale2, 1)) / cz;
    }
    const double step_coef = 1.0 / (h * h) + cy / cz;
    for (int k = 2; k <= n; ++k) {
        const double t = grid.node(k);
        const double rhs_prev = (2.0 * y[k - 1] - y[k - 2]) / (h * h);
        const double mem = (history(y, gw1, scale1, k) - history(z, gw2, scale2, k)) / cz;
        // Solve step_coef*u - f(t,u) = rhs_prev - mem by Newton from the
        // previous node.
        double u = y[k - 1];
        bool done = false;
        for (int it = 0; it < 60 && !done; ++it) {
            const double g = step_coef * u - p.forcing(t, u) - rhs_prev + mem;
            const double e = 1e-7 * std::max(1.0, std::abs(u));
            const double dfdu = (p.forcing(t, u + e) - p.forcing(t, u - e)) / (2.0 * e);
            const double dg = step_coef - dfdu;
            if (!std::isfinite(dg) || std::abs(dg) < 1e-14 * step_coef)
                throw OracleFailure("direct_coupled_solve: singular step system");
            const double du = g / dg;
            u -= du;
            done = std::abs(du) <= 1e-14 * std::max(1.0, std::abs(u));
        }
        if (!std::isfinite(u))
            throw OracleFailure("direct_coupled_solve: step iteration diverged");
        y[k] = u;
        z[k] = (cy * y[k] + history(y, gw1, scale1, k) - history(z, gw2, scale2, k)) / cz;
    }

    SolutionPair sol;
    sol.y = GridFunction(grid, std::move(y));
    sol.z = GridFunction(grid, std::move(z));
    GridFunction fv = GridFunction::zeros(grid);
    for (int j = 0; j <= n; ++j) fv[j] = p.forcing(grid.node(j), sol.y[j]);
    sol.z_ode = GridFunction(grid, fv.values - diff2(sol.y).values);
    sol.ode_residual = (sol.z.values - sol.z_ode.values).abs().maxCoeff();
    sol.dissipation = dissipation_work(sol.y, sol.z);
    sol.delta_used = grid.horizon;
    sol.converged = true;
    return sol;
}

} // namespace dofrac
