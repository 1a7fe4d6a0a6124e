#pragma once

#include <stdexcept>
#include <string>

namespace rollform {

/// Base class for all domain errors raised by the library.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Induced metric is isotropic/degenerate at the requested point.
struct DegenerateMetricError : Error {
    using Error::Error;
};

/// The two surfaces of a rolling pair are not isometric within tolerance.
struct IsometryViolationError : Error {
    using Error::Error;
};

/// Requested derivative exceeds the truncation order of a jet.
struct JetOrderError : Error {
    using Error::Error;
};

/// Input does not satisfy the structural precondition of an operation.
struct MalformedInputError : Error {
    using Error::Error;
};

/// sqrt requested on the negative real axis (no principal branch).
struct BranchCutError : Error {
    using Error::Error;
};

/// Contact distribution fails the genericity requirement.
struct NonGenericError : Error {
    using Error::Error;
};

/// Pfaffian denominator vanishes at the requested point.
struct DegeneratePfaffianError : Error {
    using Error::Error;
};

/// A direction the operation must divide by is numerically degenerate.
struct DegenerateDirectionError : Error {
    using Error::Error;
};

/// Probe system for the A/B/C extraction is numerically singular.
struct IllConditionedExtractionError : Error {
    explicit IllConditionedExtractionError(const std::string& msg, double cond)
        : Error(msg), condition_estimate(cond) {}
    double condition_estimate;
};

/// A fixture constructor was handed data violating its contract.
struct InvalidFixtureError : Error {
    using Error::Error;
};

}  // namespace rollform
