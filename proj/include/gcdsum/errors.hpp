#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace gcdsum {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument lies outside the domain of the operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A request exceeds a memory or exact-integer capability.
class ResourceError : public Error {
 public:
  using Error::Error;
};

/// An enumeration would exceed its work budget; `requested()` carries the
/// size that was refused.
class BudgetError : public Error {
 public:
  BudgetError(const std::string& what, std::uint64_t requested)
      : Error(what), requested_(requested) {}
  std::uint64_t requested() const noexcept { return requested_; }

 private:
  std::uint64_t requested_;
};

/// Broken internal invariant.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace gcdsum
