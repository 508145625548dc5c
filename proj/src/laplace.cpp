#include "dofrac/laplace.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "dofrac/errors.hpp"

namespace dofrac {

namespace {

using Complex = std::complex<double>;

/// Geometric bisection for the radius where `ratio` (strictly monotone in
/// the radius) crosses 1.
double ratio_crossing(const std::function<double(double)>& ratio) {
    double lo = 1.0, hi = 1.0;
    if (ratio(1.0) > 1.0) {
        for (int i = 0; i < 200 && ratio(hi) > 1.0; ++i) hi *= 2.0;
    } else {
        for (int i = 0; i < 200 && ratio(lo) <= 1.0; ++i) lo *= 0.5;
    }
    for (int i = 0; i < 200 && hi / lo > 1.0 + 1e-12; ++i) {
        const double mid = std::sqrt(lo * hi);
        (ratio(mid) > 1.0 ? lo : hi) = mid;
    }
    return std::sqrt(lo * hi);
}

double abs_symbol_scale(const AtomicWeight& w, double r) {
    double acc = 0.0;
    for (const Atom& a : w.atoms) acc += std::abs(a.coef) * std::pow(r, a.order);
    return acc;
}

Complex atomic_symbol(const AtomicWeight& w, Complex s) {
    Complex acc = 0.0;
    for (const Atom& a : w.atoms) acc += a.coef * std::pow(s, a.order);
    return acc;
}

/// Golden-section refinement of a local minimum of f on [a, b].
double refine_minimum(const std::function<double(double)>& f, double a, double b) {
    constexpr double inv_phi = 0.6180339887498949;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = f(c), fd = f(d);
    for (int i = 0; i < 80; ++i) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    return 0.5 * (a + b);
}

struct ContourPiece {
    std::function<Complex(double)> point; // u in [0, 1]
};

/// Accumulated change of arg F along the contour pieces, with adaptive step
/// halving so each increment stays below pi/4. Returns false when the walk
/// cannot be resolved.
bool track_argument(const AtomicWeight& w, const std::vector<ContourPiece>& pieces,
                    double& total_phase) {
    constexpr double du_init = 1.0 / 64.0;
    const double du_min = du_init / double(1 << 24);
    total_phase = 0.0;
    for (const ContourPiece& piece : pieces) {
        double u = 0.0;
        Complex fu = atomic_symbol(w, piece.point(0.0));
        double du = du_init;
        while (u < 1.0) {
            const double v = std::min(u + du, 1.0);
            const Complex fv = atomic_symbol(w, piece.point(v));
            if (fv == 0.0 || fu == 0.0) return false;
            const double dphase = std::arg(fv / fu);
            if (std::abs(dphase) < std::numbers::pi / 4.0) {
                total_phase += dphase;
                u = v;
                fu = fv;
                du = std::min(du * 2.0, du_init);
            } else {
                du *= 0.5;
                if (du < du_min) return false;
            }
        }
    }
    return true;
}

} // namespace

std::pair<double, double> bracket_zero_region(const AtomicWeight& w) {
    if (w.atoms.empty()) throw std::invalid_argument("bracket_zero_region: empty weight");
    const size_t n = w.atoms.size();
    if (n == 1) return {1.0, 1.0};
    const double lead_coef = std::abs(w.atoms.front().coef);
    const double lead_order = w.atoms.front().order;
    const double trail_coef = std::abs(w.atoms.back().coef);
    const double trail_order = w.atoms.back().order;

    auto ratio_out = [&](double r) {
        double rest = 0.0;
        for (size_t i = 1; i < n; ++i)
            rest += std::abs(w.atoms[i].coef) * std::pow(r, w.atoms[i].order);
        return rest / (lead_coef * std::pow(r, lead_order));
    };
    auto ratio_in = [&](double r) {
        double rest = 0.0;
        for (size_t i = 0; i + 1 < n; ++i)
            rest += std::abs(w.atoms[i].coef) * std::pow(r, w.atoms[i].order);
        return (trail_coef * std::pow(r, trail_order)) / rest;
    };

    const double outer = ratio_crossing(ratio_out) * 1.05;
    // ratio_in decays from +inf to 0 as the radius grows, so the crossing
    // helper can consume it directly; shrink the result for margin.
    const double inner = ratio_crossing(ratio_in) / 1.05;
    return {std::min(inner, outer), outer};
}

AdmissibilityReport check_A0(const AtomicWeight& w) {
    if (w.atoms.empty()) throw std::invalid_argument("check_A0: empty weight");
    AdmissibilityReport report;
    const auto [r_in, r_out] = bracket_zero_region(w);
    report.r_inner = r_in;
    report.R_outer = r_out;

    // Boundary scan: look for zeros of F on the imaginary axis inside the
    // annulus that brackets all zeros (conjugate symmetry: positive ordinates
    // suffice).
    const double lo = r_in / 2.0, hi = 2.0 * r_out;
    constexpr int samples = 2048;
    auto modulus = [&](double y) { return std::abs(atomic_symbol(w, Complex(0.0, y))); };
    std::vector<double> ys(samples), ms(samples);
    for (int j = 0; j < samples; ++j) {
        ys[j] = lo * std::exp(std::log(hi / lo) * j / double(samples - 1));
        ms[j] = modulus(ys[j]);
    }
    for (int j = 1; j + 1 < samples; ++j) {
        if (ms[j] < ms[j - 1] && ms[j] <= ms[j + 1]) {
            const double y_min = refine_minimum(modulus, ys[j - 1], ys[j + 1]);
            const double residual = modulus(y_min);
            if (residual < 1e-6 * abs_symbol_scale(w, y_min))
                report.axis_zeros.push_back({y_min, residual});
        }
    }
    if (!report.axis_zeros.empty()) {
        report.admissible = true;
        report.boundary_degenerate = true;
        report.winding_count = 0;
        report.notes = "symbol vanishes on the imaginary axis; interior winding not evaluated";
        return report;
    }

    // Interior count by the argument principle on the boundary of
    // {Re s > eps, lo < |s| < hi}, traversed counterclockwise.
    const double eps = 1e-9 * r_in;
    const double y_outer = std::sqrt(hi * hi - eps * eps);
    const double y_inner = std::sqrt(lo * lo - eps * eps);
    const double ang_outer = std::atan2(y_outer, eps);
    const double ang_inner = std::atan2(y_inner, eps);
    std::vector<ContourPiece> pieces;
    pieces.push_back({[=](double u) {
        const double th = -ang_outer + 2.0 * ang_outer * u;
        return Complex(hi * std::cos(th), hi * std::sin(th));
    }});
    pieces.push_back({[=](double u) { return Complex(eps, y_outer + (y_inner - y_outer) * u); }});
    pieces.push_back({[=](double u) {
        const double th = ang_inner - 2.0 * ang_inner * u;
        return Complex(lo * std::cos(th), lo * std::sin(th));
    }});
    pieces.push_back({[=](double u) { return Complex(eps, -y_inner + (-y_outer + y_inner) * u); }});

    double total_phase = 0.0;
    if (!track_argument(w, pieces, total_phase)) {
        report.indeterminate = true;
        report.notes = "argument tracking along the boundary could not be resolved";
        return report;
    }
    const double turns = total_phase / (2.0 * std::numbers::pi);
    const int count = int(std::lround(turns));
    if (std::abs(turns - count) > 0.25 || count < 0) {
        report.indeterminate = true;
        report.notes = "boundary phase did not close to a whole number of turns";
        return report;
    }
    report.winding_count = count;
    report.admissible = (count == 0);
    report.notes = count == 0 ? "no zeros in the right half plane"
                              : "symbol has zeros in the right half plane";
    return report;
}

double talbot_ilt(const std::function<Complex(Complex)>& transform, double t, int node_count) {
    if (!(t > 0.0)) throw std::invalid_argument("talbot_ilt: t must be positive");
    if (node_count < 8) throw std::invalid_argument("talbot_ilt: node_count too small");
    constexpr double alpha = 0.6407, sigma = 0.6122, mu = 0.5017, nu = 0.2645;
    const double m = double(node_count);
    double acc = 0.0;
    for (int k = 0; k < node_count; ++k) {
        const double th = (k + 0.5) * std::numbers::pi / m;
        const double s = std::sin(alpha * th);
        const double cot = std::cos(alpha * th) / s;
        const Complex z = (m / t) * Complex(-sigma + mu * th * cot, nu * th);
        const Complex zp = (m / t) * Complex(mu * cot - mu * alpha * th / (s * s), nu);
        acc += std::imag(std::exp(z * t) * transform(z) * zp);
    }
    const double value = acc / m;
    if (!std::isfinite(value)) throw std::runtime_error("talbot_ilt: evaluation failed");
    return value;
}

const char* to_string(KernelRegularity r) {
    switch (r) {
        case KernelRegularity::algebraic: return "algebraic";
        case KernelRegularity::locally_integrable: return "locally_integrable";
        case KernelRegularity::absolutely_continuous: return "absolutely_continuous";
    }
    return "locally_integrable";
}

FundamentalSolution fundamental_solution(const OrderWeight& phi2, const TimeGrid& grid) {
    const double h = grid.step();
    const int n = grid.node_count();
    GridFunction regular = GridFunction::zeros(grid);
    GridFunction cumulative = GridFunction::zeros(grid);

    if (const auto* a = std::get_if<AtomicWeight>(&phi2)) {
        if (a->atoms.empty()) throw UnsupportedKernelError("constitutive weight must be nonzero");
        for (const Atom& atom : a->atoms)
            if (atom.order < 0.0 || atom.order >= 2.0)
                throw UnsupportedKernelError("constitutive orders must lie in [0,2)");
        const double lead_order = a->leading_order();
        const double lead_coef = a->atoms.front().coef;

        if (lead_order == 0.0) {
            if (a->atoms.size() > 1)
                throw UnsupportedKernelError(
                    "zero leading order with additional terms is not representable");
            const double coef = 1.0 / lead_coef;
            for (int j = 1; j < n; ++j) cumulative.values[j] = coef;
            return {coef, std::move(regular), std::move(cumulative),
                    KernelRegularity::algebraic};
        }

        AdmissibilityReport report = check_A0(*a);
        if (report.indeterminate)
            throw IndeterminateAdmissibilityError("admissibility undecided: " + report.notes,
                                                  std::move(report));
        if (report.boundary_degenerate)
            throw IndeterminateAdmissibilityError(
                "symbol vanishes on the imaginary axis; kernel inversion refused",
                std::move(report));
        if (!report.admissible)
            throw AdmissibilityError("symbol has zeros in the right half plane",
                                     std::move(report));

        regular.values[0] =
            std::pow(h, lead_order - 1.0) / (lead_coef * std::tgamma(lead_order + 1.0));
        for (int j = 1; j < n; ++j) {
            const double t = grid.node(j);
            regular.values[j] =
                talbot_ilt([&](Complex s) { return 1.0 / symbol_eval(phi2, s); }, t);
            cumulative.values[j] =
                talbot_ilt([&](Complex s) { return 1.0 / (s * symbol_eval(phi2, s)); }, t);
        }
        const KernelRegularity reg = (lead_order - a->trailing_order() > 1.0)
                                         ? KernelRegularity::absolutely_continuous
                                         : KernelRegularity::locally_integrable;
        return {0.0, std::move(regular), std::move(cumulative), reg};
    }

    const WeightClass cls = classify_weight(phi2, WeightRole::phi2);
    if (cls.phi2_class != Phi2Class::smooth_unit_interval)
        throw UnsupportedKernelError("unsupported constitutive weight: " + cls.reason);
    for (int j = 1; j < n; ++j) {
        const double t = grid.node(j);
        regular.values[j] =
            talbot_ilt([&](Complex s) { return 1.0 / symbol_eval(phi2, s); }, t);
        cumulative.values[j] =
            talbot_ilt([&](Complex s) { return 1.0 / (s * symbol_eval(phi2, s)); }, t);
    }
    regular.values[0] = cumulative.values[1] / h;
    return {0.0, std::move(regular), std::move(cumulative),
            KernelRegularity::locally_integrable};
}

} // namespace dofrac
