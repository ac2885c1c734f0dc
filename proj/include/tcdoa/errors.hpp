#pragma once

#include <stdexcept>
#include <string>

namespace tcdoa {

// Contract violation: bad dimensions, out-of-range indices, invalid arguments.
struct DimensionError : std::invalid_argument {
    explicit DimensionError(const std::string& what) : std::invalid_argument(what) {}
};

// Numerical failure: non-positive-definite factorization input, singular system.
struct NumericalError : std::runtime_error {
    explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

// Malformed or inconsistent configuration input.
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace tcdoa
