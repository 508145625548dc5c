#include "dofrac/order_weight.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <memory>
#include <sstream>
#include <stdexcept>

#include "dofrac/fracops.hpp"
#include "dofrac/quadrature.hpp"

namespace dofrac {

namespace {

/// Monotone cubic (Fritsch-Carlson) interpolant over sample pairs.
class MonotoneCubic {
public:
    MonotoneCubic(std::vector<double> xs, std::vector<double> ys)
        : xs_(std::move(xs)), ys_(std::move(ys)) {
        const size_t n = xs_.size();
        if (n < 2) throw std::invalid_argument("sample table needs at least 2 points");
        for (size_t i = 1; i < n; ++i)
            if (!(xs_[i] > xs_[i - 1]))
                throw std::invalid_argument("sample table abscissae must be strictly increasing");
        std::vector<double> h(n - 1), m(n - 1);
        for (size_t i = 0; i + 1 < n; ++i) {
            h[i] = xs_[i + 1] - xs_[i];
            m[i] = (ys_[i + 1] - ys_[i]) / h[i];
        }
        d_.assign(n, 0.0);
        d_[0] = m[0];
        d_[n - 1] = m[n - 2];
        for (size_t i = 1; i + 1 < n; ++i) {
            if (m[i - 1] * m[i] <= 0.0) {
                d_[i] = 0.0;
            } else {
                const double w1 = 2.0 * h[i] + h[i - 1];
                const double w2 = h[i] + 2.0 * h[i - 1];
                d_[i] = (w1 + w2) / (w1 / m[i - 1] + w2 / m[i]);
            }
        }
    }

    double operator()(double x) const {
        const size_t n = xs_.size();
        if (x <= xs_.front()) return ys_.front();
        if (x >= xs_.back()) return ys_.back();
        size_t i = std::upper_bound(xs_.begin(), xs_.end(), x) - xs_.begin() - 1;
        const double h = xs_[i + 1] - xs_[i];
        const double t = (x - xs_[i]) / h;
        const double t2 = t * t, t3 = t2 * t;
        return ys_[i] * (2 * t3 - 3 * t2 + 1) + h * d_[i] * (t3 - 2 * t2 + t) +
               ys_[i + 1] * (-2 * t3 + 3 * t2) + h * d_[i + 1] * (t3 - t2);
    }

private:
    std::vector<double> xs_, ys_, d_;
};

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    parts.push_back(cur);
    return parts;
}

double parse_num(const std::string& s, const char* what) {
    size_t pos = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &pos);
    } catch (const std::exception&) {
        throw std::invalid_argument(std::string(what) + ": malformed number '" + s + "'");
    }
    if (pos != s.size())
        throw std::invalid_argument(std::string(what) + ": malformed number '" + s + "'");
    return v;
}

GridFunction apply_order(const GridFunction& y, double gamma) {
    return gamma < 0.0 ? frac_integral(y, -gamma) : frac_derivative(y, gamma);
}

} // namespace

AtomicWeight make_atomic(std::vector<Atom> atoms) {
    for (size_t i = 0; i < atoms.size(); ++i) {
        if (atoms[i].coef == 0.0)
            throw std::invalid_argument("atomic weight: coefficients must be nonzero");
        if (i > 0 && !(atoms[i].order < atoms[i - 1].order))
            throw std::invalid_argument("orders must be strictly decreasing");
    }
    return AtomicWeight{std::move(atoms)};
}

ContinuousWeight make_continuous(std::function<double(double)> density, double lo, double hi,
                                 std::string tag) {
    if (!(lo < hi)) throw std::invalid_argument("continuous weight: support must satisfy lo < hi");
    if (!density) throw std::invalid_argument("continuous weight: density required");
    return ContinuousWeight{std::move(density), lo, hi, std::move(tag)};
}

ExponentialWeight make_exponential(double base) {
    if (!(base > 0.0)) throw std::invalid_argument("exponential weight: base must be positive");
    return ExponentialWeight{base};
}

ContinuousWeight continuous_from_tag(const std::string& tag, double lo, double hi) {
    const auto parts = split(tag, ':');
    const std::string& name = parts[0];
    if (name == "const" && parts.size() == 2) {
        const double v = parse_num(parts[1], "const density");
        return make_continuous([v](double) { return v; }, lo, hi, tag);
    }
    if (name == "affine" && parts.size() == 3) {
        const double a = parse_num(parts[1], "affine density");
        const double b = parse_num(parts[2], "affine density");
        return make_continuous([a, b](double g) { return a + b * g; }, lo, hi, tag);
    }
    if (name == "samples" && parts.size() == 2) {
        std::ifstream in(parts[1]);
        if (!in) throw std::invalid_argument("sample table not readable: " + parts[1]);
        std::vector<double> xs, ys;
        double x, y;
        while (in >> x >> y) {
            xs.push_back(x);
            ys.push_back(y);
        }
        auto interp = std::make_shared<MonotoneCubic>(std::move(xs), std::move(ys));
        return make_continuous([interp](double g) { return (*interp)(g); }, lo, hi, tag);
    }
    throw std::invalid_argument("unknown density tag: " + tag);
}

const char* to_string(Phi1Class c) {
    switch (c) {
        case Phi1Class::atomic: return "atomic";
        case Phi1Class::continuous_sub2: return "continuous_sub2";
        case Phi1Class::continuous_sub1: return "continuous_sub1";
        case Phi1Class::continuous_negative: return "continuous_negative";
        case Phi1Class::exponential_family: return "exponential_family";
        case Phi1Class::unclassified: return "unclassified";
    }
    return "unclassified";
}

const char* to_string(Phi2Class c) {
    switch (c) {
        case Phi2Class::atomic_symbol: return "atomic_symbol";
        case Phi2Class::smooth_unit_interval: return "smooth_unit_interval";
        case Phi2Class::unclassified: return "unclassified";
    }
    return "unclassified";
}

WeightClass classify_weight(const OrderWeight& w, WeightRole role) {
    WeightClass out;
    out.role = role;
    if (role == WeightRole::phi1) {
        if (const auto* a = std::get_if<AtomicWeight>(&w)) {
            for (const Atom& atom : a->atoms) {
                if (atom.order >= 2.0) {
                    out.reason = "atomic order reaches 2";
                    return out;
                }
            }
            out.phi1_class = Phi1Class::atomic;
            return out;
        }
        if (const auto* c = std::get_if<ContinuousWeight>(&w)) {
            if (c->hi < 0.0) {
                out.phi1_class = Phi1Class::continuous_negative;
            } else if (c->lo >= 0.0 && c->hi < 1.0) {
                out.phi1_class = Phi1Class::continuous_sub1;
            } else if (c->lo >= 0.0 && c->hi < 2.0) {
                out.phi1_class = Phi1Class::continuous_sub2;
            } else if (c->hi >= 2.0) {
                out.reason = "continuous support reaches 2";
            } else {
                out.reason = "continuous support straddles 0";
            }
            return out;
        }
        out.phi1_class = Phi1Class::exponential_family;
        return out;
    }

    if (const auto* a = std::get_if<AtomicWeight>(&w)) {
        if (a->atoms.empty()) {
            out.reason = "constitutive weight must be nonzero";
            return out;
        }
        for (const Atom& atom : a->atoms) {
            if (atom.order < 0.0 || atom.order >= 2.0) {
                out.reason = "constitutive orders must lie in [0,2)";
                return out;
            }
        }
        out.phi2_class = Phi2Class::atomic_symbol;
        return out;
    }
    if (const auto* c = std::get_if<ContinuousWeight>(&w)) {
        if (c->lo != 0.0 || c->hi != 1.0) {
            out.reason = "continuous constitutive support must be [0,1]";
            return out;
        }
        if (c->density(1.0) == 0.0) {
            out.reason = "density must be nonzero at 1";
            return out;
        }
        if (c->density(0.0) != 0.0) {
            out.phi2_class = Phi2Class::smooth_unit_interval;
            return out;
        }
        // Vanishing at 0 is admissible only for verifiable power-law behavior
        // p*gamma^q (p>0, q>0); the affine tag with zero intercept is the one
        // sampled form we can certify.
        const auto parts = split(c->tag, ':');
        if (parts.size() == 3 && parts[0] == "affine" && parse_num(parts[1], "affine") == 0.0 &&
            parse_num(parts[2], "affine") > 0.0) {
            out.phi2_class = Phi2Class::smooth_unit_interval;
            return out;
        }
        out.reason = "density vanishes at 0 and power-law behavior is not verifiable";
        return out;
    }
    out.phi2_class = Phi2Class::smooth_unit_interval; // base^gamma: 1 at 0, base at 1
    return out;
}

GridFunction distributed_derivative(const OrderWeight& w, const GridFunction& y, int q) {
    if (const auto* a = std::get_if<AtomicWeight>(&w)) {
        GridFunction out = GridFunction::zeros(y.grid);
        for (const Atom& atom : a->atoms) {
            if (atom.order >= 2.0)
                throw std::invalid_argument("distributed_derivative: order reaches 2");
            out.values += atom.coef * apply_order(y, atom.order).values;
        }
        return out;
    }
    if (const auto* c = std::get_if<ContinuousWeight>(&w)) {
        if (c->hi >= 2.0)
            throw std::invalid_argument("distributed_derivative: support reaches 2");
        GridFunction out = GridFunction::zeros(y.grid);
        const GaussRule rule = gauss_legendre_on(q, c->lo, c->hi);
        for (int i = 0; i < q; ++i)
            out.values += rule.weights[i] * c->density(rule.nodes[i]) *
                          apply_order(y, rule.nodes[i]).values;
        return out;
    }
    const auto& e = std::get<ExponentialWeight>(w);
    GridFunction out = GridFunction::zeros(y.grid);
    const GaussRule rule = gauss_legendre_on(q, 0.0, 1.0);
    for (int i = 0; i < q; ++i)
        out.values += rule.weights[i] * std::pow(e.base, rule.nodes[i]) *
                      apply_order(y, rule.nodes[i]).values;
    return out;
}

std::complex<double> symbol_eval(const OrderWeight& w, std::complex<double> s, int q) {
    if (s.imag() == 0.0 && s.real() <= 0.0)
        throw std::domain_error("symbol_eval: s lies on the branch cut");
    if (const auto* a = std::get_if<AtomicWeight>(&w)) {
        std::complex<double> acc = 0.0;
        for (const Atom& atom : a->atoms) acc += atom.coef * std::pow(s, atom.order);
        return acc;
    }
    if (const auto* c = std::get_if<ContinuousWeight>(&w)) {
        std::complex<double> acc = 0.0;
        const GaussRule rule = gauss_legendre_on(q, c->lo, c->hi);
        for (int i = 0; i < q; ++i)
            acc += rule.weights[i] * c->density(rule.nodes[i]) * std::pow(s, rule.nodes[i]);
        return acc;
    }
    const auto& e = std::get<ExponentialWeight>(w);
    const std::complex<double> ws = e.base * s;
    const std::complex<double> u = ws - 1.0;
    if (std::abs(u) < 0.25) {
        // 1/symbol = ln(ws)/(ws-1) = sum_k (-1)^k u^k/(k+1); invert the series sum.
        std::complex<double> recip = 0.0, term = 1.0;
        for (int k = 0; k < 40; ++k) {
            recip += term / double(k + 1);
            term *= -u;
        }
        return 1.0 / recip;
    }
    return u / std::log(ws);
}

} // namespace dofrac
