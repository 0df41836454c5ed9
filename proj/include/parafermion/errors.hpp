#pragma once

#include <stdexcept>
#include <string>

namespace parafermion {

// Bad arguments: invalid modulus, angle out of range, malformed files. The CLI maps
// this to exit code 2.
class InvalidInput : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A weight denominator vanished (disorder ratio, star-triangle quotient).
class SingularWeight : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Exhaustive enumeration refused because N^V exceeds the configured cap.
class BudgetExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// File could not be opened or written.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace parafermion
