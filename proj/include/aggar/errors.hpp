#pragma once

#include <stdexcept>
#include <string>

namespace aggar {

/// Root of the library's exception hierarchy.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Inputs outside an operation's domain (bad parameters, z = 1, ...).
/// The CLI maps this family to exit code 1.
class DomainError : public Error {
public:
    using Error::Error;
};

/// A DistributionSpec or data file failed one of its invariants. The message
/// names the violated invariant.
class ValidationError : public DomainError {
public:
    using DomainError::DomainError;
};

/// Higher cross-sectional moments requested for a distribution with zero variance.
class DegenerateDistributionError : public DomainError {
public:
    using DomainError::DomainError;
};

/// The requested evaluation method is not available for this spec/point.
class UnsupportedEvaluationError : public DomainError {
public:
    using DomainError::DomainError;
};

/// A computed result failed an integrity gate (monotonicity, extrapolation, ...).
/// The CLI maps this family to exit code 2.
class NumericalIntegrityError : public Error {
public:
    using Error::Error;
};

/// A numerical classification could not be resolved (e.g. divergence of
/// E[1/(1-phi)] for a generic density).
class IndeterminateError : public NumericalIntegrityError {
public:
    using NumericalIntegrityError::NumericalIntegrityError;
};

}  // namespace aggar
