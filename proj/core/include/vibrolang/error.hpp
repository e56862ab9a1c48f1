// error.hpp — exception types shared by all vibrolang modules
#pragma once

#include <stdexcept>
#include <string>

namespace vibrolang {

// Invalid argument or wrong parameter variant.
struct DomainError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Malformed run configuration (unknown keys, bad step size, ...).
struct ConfigError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Base for failures that happen while computing, not while validating.
struct NumericError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Approximation used outside its stated validity range.
struct RegimeError : NumericError {
    using NumericError::NumericError;
};

// Requested quantity is not defined by the model (e.g. out-of-band collective kernel).
struct UnsupportedError : NumericError {
    using NumericError::NumericError;
};

struct ConvergenceError : NumericError {
    ConvergenceError(const std::string& what, double achieved)
        : NumericError(what), achieved_tolerance(achieved) {}
    double achieved_tolerance;
};

struct TruncationError : NumericError {
    TruncationError(const std::string& what, double tail)
        : NumericError(what), tail_bound(tail) {}
    double tail_bound;
};

struct ResolutionError : NumericError {
    using NumericError::NumericError;
};

struct DivergenceError : NumericError {
    using NumericError::NumericError;
};

struct InstabilityError : NumericError {
    using NumericError::NumericError;
};

struct CombinatorialLimitError : NumericError {
    using NumericError::NumericError;
};

} // namespace vibrolang
