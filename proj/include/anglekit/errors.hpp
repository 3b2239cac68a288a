#pragma once

#include <stdexcept>
#include <string>

namespace anglekit {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// An iterative procedure exhausted its budget.
class NonConvergence : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Operators defined on incompatible bases were combined.
class BasisMismatch : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Input matrix is not Hermitian (or not anti-Hermitian) within tolerance.
class NotHermitian : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

}  // namespace anglekit
