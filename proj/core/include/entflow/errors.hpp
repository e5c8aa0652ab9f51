#pragma once

#include <stdexcept>
#include <string>

namespace entflow {

// Bad input to an operation: wrong dimensions, non-Hermitian matrices,
// unnormalized states, out-of-range parameters.
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A numerical configuration that cannot deliver the requested accuracy
// (reservoir too coarse, integration step too large, scan grid too sparse).
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace entflow
