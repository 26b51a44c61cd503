#pragma once

#include <stdexcept>
#include <string>

namespace cdirac {

/// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Mathematical domain violated (degenerate metric, nonpositive Omega, ...).
struct DomainError : Error {
    using Error::Error;
};

/// Evaluation requested outside the hull of a tabulated conformal factor.
struct OutOfHullError : DomainError {
    using DomainError::DomainError;
};

/// Adaptive quadrature failed to reach the requested tolerance.
struct QuadratureError : Error {
    using Error::Error;
};

/// An improper integral does not converge (e.g. bounded Omega on the real line).
struct DivergenceError : Error {
    using Error::Error;
};

/// Zero-mode parameters violate k_v^2 >= k_y^2 + M^2.
struct InadmissibleError : DomainError {
    using DomainError::DomainError;
};

/// M = k_v: the eigenvector representation and the normalization both degenerate.
struct DegenerateParamsError : DomainError {
    using DomainError::DomainError;
};

/// k_v^2 < M^2: no transverse momentum admits a zero mode.
struct EmptyRangeError : DomainError {
    using DomainError::DomainError;
};

/// Grid cannot resolve the local phase of the sampled mode.
struct ResolutionError : Error {
    using Error::Error;
};

/// Iterative or dense eigensolver failed to converge.
struct EigensolverError : Error {
    using Error::Error;
};

/// Run configuration is syntactically or semantically invalid.
struct ConfigError : Error {
    using Error::Error;
};

}  // namespace cdirac
