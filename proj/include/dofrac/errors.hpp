#pragma once

#include <stdexcept>
#include <string>

namespace dofrac {

/// Kernel outside the locally integrable regime (e.g. leading order 0 with
/// several atoms, or orders outside [0,2)): refused rather than guessed.
class UnsupportedKernelError : public std::runtime_error {
public:
    explicit UnsupportedKernelError(const std::string& what) : std::runtime_error(what) {}
};

/// The self-mapping inequality of the delta estimate fails even over a single
/// grid step; the caller may enlarge the ball radius.
class NoBallError : public std::runtime_error {
public:
    NoBallError(const std::string& what, double lhs_at_min_step)
        : std::runtime_error(what), lhs_at_min_step(lhs_at_min_step) {}
    double lhs_at_min_step;
};

/// Picard iterate became non-finite.
class DivergenceError : public std::runtime_error {
public:
    DivergenceError(const std::string& what, int iteration)
        : std::runtime_error(what), iteration(iteration) {}
    int iteration;
};

/// The direct coupled-discretization oracle hit a singular step system.
class OracleFailure : public std::runtime_error {
public:
    explicit OracleFailure(const std::string& what) : std::runtime_error(what) {}
};

/// Problem-file rejection; carries the offending key and 1-based line.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::string key, int line)
        : std::runtime_error(what), key(std::move(key)), line(line) {}
    std::string key;
    int line;
};

} // namespace dofrac
