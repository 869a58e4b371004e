#pragma once

#include <stdexcept>
#include <string>

namespace hypermu {

// Input outside an operation's domain (non-interior point, degenerate matrix, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// A denominator of a closed-form expression vanishes at the requested point.
class SingularPointError : public DomainError {
public:
    using DomainError::DomainError;
};

// 0/0 configuration with no preferred value.
class IndeterminateError : public DomainError {
public:
    using DomainError::DomainError;
};

// Polar radius is zero and no direction was supplied.
class IndeterminateDirectionError : public DomainError {
public:
    using DomainError::DomainError;
};

} // namespace hypermu
