#pragma once

#include <stdexcept>
#include <string>

namespace fdsched {

// Input outside the mathematical domain of a model (negative angle, zero distance).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Caller broke a documented precondition (infeasible active set, RI on a role conflict).
class ContractViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

// Bad parameters for generation, sweeps, or scheduler selection.
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Instance too large for the exact solver.
class SizeError : public std::length_error {
public:
    using std::length_error::length_error;
};

}  // namespace fdsched
