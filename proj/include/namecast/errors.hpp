#pragma once

#include <stdexcept>
#include <string>

namespace namecast {

// Malformed input data (SRT blocks, CSV rows, out-of-range indices).
struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

// Bad or missing configuration (unknown key, unparsable value).
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Non-finite values reached the solver.
struct NumericalError : std::runtime_error {
    explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace namecast
