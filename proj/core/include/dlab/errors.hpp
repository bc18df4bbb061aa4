#pragma once

#include <stdexcept>
#include <string>

namespace dlab {

// Input rejected before any computation ran (bad sizes, unknown keys,
// out-of-range arguments, unsorted time grids, ...).
struct InvalidConfig : std::runtime_error {
    explicit InvalidConfig(const std::string& what_arg) : std::runtime_error(what_arg) {}
};

// The back-substitution pivot lambda_plus[2*jstar - 1] is numerically zero,
// so the tail-correction weights have no solution.
struct DegenerateBeta : std::runtime_error {
    double pivot;
    DegenerateBeta(double pivot_, const std::string& what_arg)
        : std::runtime_error(what_arg), pivot(pivot_) {}
};

// A mode evolution would leave the double exponent range.  Thrown before the
// exponential is evaluated; log_modulus is the predicted natural-log modulus.
struct ModeOverflow : std::runtime_error {
    double xi;
    double log_modulus;
    ModeOverflow(double xi_, double log_modulus_, const std::string& what_arg)
        : std::runtime_error(what_arg), xi(xi_), log_modulus(log_modulus_) {}
};

} // namespace dlab
