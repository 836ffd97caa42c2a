#pragma once
#include <stdexcept>
#include <string>

namespace cinv {

struct SingularMatrix : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A sample point violates a genericity requirement (repeated critical values,
// vanishing f^i, non-distinct roots).
struct DegeneratePoint : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NonLinearInLambda : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct IntegrabilityFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct FixtureError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct TruncationMismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct UnknownAlgebra : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// kappa_11 + kappa_12 * lambda vanishes, or det kappa = 0.
struct SingularChange : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct BadCartanData : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// eta_ij = d_i d_j (e F) is not constant or is singular.
struct NonConstantEta : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DecompositionFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Internal consistency check failed (a computed identity did not hold).
struct InvariantViolation : std::logic_error {
    using std::logic_error::logic_error;
};

} // namespace cinv
