#pragma once

#include <stdexcept>
#include <string>

namespace ifs {

// Input outside the mathematical domain of an operation (|lambda| >= 1, k < 1, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// A documented precondition does not hold (point outside H, wrong number class, ...).
class PreconditionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A configured size cap would be exceeded.
class ResourceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// An iterative method failed to reach its accuracy target.
class NumericError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ParseError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

} // namespace ifs
