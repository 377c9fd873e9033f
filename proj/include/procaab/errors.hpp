#pragma once

#include <stdexcept>
#include <string>

namespace procaab {

/// Argument outside an operation's precondition (negative mass, rho = 0, ...).
class InvalidInput : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Physically valid input that falls outside a validity window or search bracket.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A numerical method failed to reach its own error target.
class ConvergenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace procaab
