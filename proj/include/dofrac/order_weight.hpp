#pragma once

#include <complex>
#include <functional>
#include <string>
#include <variant>
#include <vector>

#include "dofrac/grid.hpp"

namespace dofrac {

/// One weighted order of an atomic measure sum a_i delta(. - gamma_i).
struct Atom {
    double coef;
    double order;
    friend bool operator==(const Atom& a, const Atom& b) {
        return a.coef == b.coef && a.order == b.order;
    }
};

/// phi = sum_i a_i delta(. - gamma_i), orders strictly decreasing, a_i != 0.
/// An empty atom list is the zero weight (allowed for phi1 only).
struct AtomicWeight {
    std::vector<Atom> atoms;
    double leading_order() const { return atoms.front().order; }
    double trailing_order() const { return atoms.back().order; }
    friend bool operator==(const AtomicWeight& a, const AtomicWeight& b) {
        return a.atoms == b.atoms;
    }
};

/// Continuous density on [lo, hi], zero outside. `tag` is the closed-form or
/// sample-table description it was built from (kept for round-trip emission).
struct ContinuousWeight {
    std::function<double(double)> density;
    double lo;
    double hi;
    std::string tag;
    friend bool operator==(const ContinuousWeight& a, const ContinuousWeight& b) {
        return a.lo == b.lo && a.hi == b.hi && a.tag == b.tag;
    }
};

/// The closed-form family phi(gamma) = base^gamma on [0,1].
struct ExponentialWeight {
    double base;
    friend bool operator==(const ExponentialWeight& a, const ExponentialWeight& b) {
        return a.base == b.base;
    }
};

using OrderWeight = std::variant<AtomicWeight, ContinuousWeight, ExponentialWeight>;

/// Validating constructors.
AtomicWeight make_atomic(std::vector<Atom> atoms);
ContinuousWeight make_continuous(std::function<double(double)> density, double lo, double hi,
                                 std::string tag);
ExponentialWeight make_exponential(double base);

/// Builds a ContinuousWeight density from a tag:
///   const:<v>        constant v
///   affine:<a>:<b>   a + b*gamma
///   samples:<path>   two-column (gamma, value) table, monotone-cubic interpolated
ContinuousWeight continuous_from_tag(const std::string& tag, double lo, double hi);

enum class WeightRole { phi1, phi2 };

/// Structural class of a phi1 weight, named by what the support is.
enum class Phi1Class {
    atomic,              // finite sum of orders below 2 (negative orders allowed)
    continuous_sub2,     // continuous density, support in [0,2)
    continuous_sub1,     // continuous density, support in [0,1)
    continuous_negative, // continuous density, support in (-inf,0)
    exponential_family,  // base^gamma on [0,1]
    unclassified
};

/// Structural class of a phi2 weight.
enum class Phi2Class {
    atomic_symbol,        // finite sum, orders in [0,2): symbol sum a_i s^gamma_i
    smooth_unit_interval, // smooth density on [0,1], nonzero at 1 and regular at 0
    unclassified
};

const char* to_string(Phi1Class c);
const char* to_string(Phi2Class c);

/// Result of classify_weight: exactly one of the class fields is meaningful
/// for the requested role; `reason` holds the first violated requirement when
/// the weight is unclassified.
struct WeightClass {
    WeightRole role;
    Phi1Class phi1_class = Phi1Class::unclassified;
    Phi2Class phi2_class = Phi2Class::unclassified;
    std::string reason;
};

/// Determines (never asserts) the structural class of a weight in a role.
WeightClass classify_weight(const OrderWeight& w, WeightRole role);

/// Distributed-order derivative int phi(gamma) D^gamma y dgamma.
/// Atomic weights reduce to the finite sum; continuous densities are
/// integrated by Gauss-Legendre in gamma (Q = 32); negative orders route to
/// fractional integrals of order -gamma. Support must stay below 2.
GridFunction distributed_derivative(const OrderWeight& w, const GridFunction& y, int q = 32);

/// Laplace symbol <phi(gamma), s^gamma> on the principal branch:
/// atomic -> sum a_i s^{gamma_i}; continuous -> Gauss-Legendre in gamma
/// (Q = 64); exponential base a -> ((a s) - 1)/ln(a s) with the removable
/// singularity at a s = 1 evaluated by series. s must be off (-inf, 0].
std::complex<double> symbol_eval(const OrderWeight& w, std::complex<double> s, int q = 64);

} // namespace dofrac
