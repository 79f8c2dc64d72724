#pragma once

#include <stdexcept>
#include <string>

namespace homlie {

// Malformed input: bad document, wrong arity, out-of-range parameter.
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A well-formed request outside an operation's domain (singular matrix, zero divisor, B = 0).
class DomainError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Two independent computations disagreed. Always a bug, never user error.
class InternalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace homlie
