#pragma once

#include <stdexcept>
#include <string>

namespace movwall {

/// Argument outside the mathematical domain of an operation
/// (non-positive wall length, position outside the well, NaN input).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A numerical procedure failed to reach its requested accuracy.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Time integration lost too much accuracy (e.g. norm drift); the step is too large.
class IntegrationError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

/// Invalid run configuration or command-line usage.
class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

} // namespace movwall
