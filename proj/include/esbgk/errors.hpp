#pragma once

#include <stdexcept>
#include <string>

namespace esbgk {

// Bad user-facing configuration (flag ranges, grid sizes, stability gates
// checked before a run starts). CLI maps this to exit code 2.
struct InvalidConfig : std::runtime_error {
    explicit InvalidConfig(const std::string& what) : std::runtime_error(what) {}
};

// State that cannot be realized as kinetic data: nonpositive mass or
// temperature, indefinite temperature tensor, degenerate stress.
struct NonRealizable : std::runtime_error {
    explicit NonRealizable(const std::string& what) : std::runtime_error(what) {}
};

// ln f requested where f <= 0 and no floor policy is active.
struct SupportViolation : std::runtime_error {
    explicit SupportViolation(const std::string& what) : std::runtime_error(what) {}
};

// Iteration failed to converge, quadrature produced non-finite values,
// runtime stability violation. CLI maps this (and the two above) to exit 3.
struct NumericalFailure : std::runtime_error {
    explicit NumericalFailure(const std::string& what) : std::runtime_error(what) {}
};

} // namespace esbgk
