#pragma once

#include <stdexcept>
#include <string>

namespace arena {

/// Malformed or inconsistent input (bad file, invalid trajectory, non-binary matrix).
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// The exact engine would need polynomials too large to be practical.
class EngineLimitError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace arena
