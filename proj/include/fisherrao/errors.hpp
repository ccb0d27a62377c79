#pragma once

#include <stdexcept>
#include <string>

namespace fisherrao {

/// Domain violation: invalid parameter values, broken type invariants,
/// dimension mismatches, degenerate inputs.
class invalid_parameter : public std::invalid_argument {
public:
    explicit invalid_parameter(const std::string& what) : std::invalid_argument(what) {}
};

/// An iterative or quadrature routine failed to reach its tolerance.
class numeric_failure : public std::runtime_error {
public:
    explicit numeric_failure(const std::string& what) : std::runtime_error(what) {}
};

} // namespace fisherrao
