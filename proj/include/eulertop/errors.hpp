#pragma once

#include <stdexcept>
#include <string>

namespace eulertop {

// A matrix required to be positive definite missed the relative
// eigenvalue margin (1e-10 * max(1, ||M||_F)).
struct NotPositiveDefinite : std::runtime_error {
    explicit NotPositiveDefinite(const std::string& msg) : std::runtime_error(msg) {}
};

// Determinant below the scale-relative invertibility threshold.
struct Singular : std::runtime_error {
    explicit Singular(const std::string& msg) : std::runtime_error(msg) {}
};

// No point on the unit circle (alpha, beta) makes the searched matrix
// pencil positive definite.
struct NoDefiniteCombination : std::runtime_error {
    explicit NoDefiniteCombination(const std::string& msg) : std::runtime_error(msg) {}
};

// A 2x2 mixing matrix was required to have determinant 1.
struct NotUnimodular : std::runtime_error {
    explicit NotUnimodular(const std::string& msg) : std::runtime_error(msg) {}
};

// A trajectory state overflowed or turned into NaN.
struct NonFinite : std::runtime_error {
    explicit NonFinite(const std::string& msg) : std::runtime_error(msg) {}
};

// The implicit midpoint fixed-point iteration failed to converge;
// the step size is too large for the field being integrated.
struct StepSizeError : std::runtime_error {
    explicit StepSizeError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace eulertop
