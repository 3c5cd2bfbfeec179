// SPDX-License-Identifier: Apache-2.0
#ifndef NCENTROPY_ERRORS_HPP
#define NCENTROPY_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace ncentropy {

// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Existence condition of an entropy integral does not hold.
class ExistenceError : public DomainError {
 public:
  using DomainError::DomainError;
};

// Process parameters violate 2a >= sigma^2.
class FellerError : public DomainError {
 public:
  using DomainError::DomainError;
};

namespace detail {

[[noreturn]] inline void domain_fail(const char* where, const std::string& what) {
  throw DomainError(std::string(where) + ": " + what);
}

}  // namespace detail
}  // namespace ncentropy

#endif  // NCENTROPY_ERRORS_HPP
