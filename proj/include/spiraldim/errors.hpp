#pragma once

#include <stdexcept>
#include <string>

namespace spiraldim {

/// Input outside the domain of a map (e.g. inversion at the origin).
class DomainError : public std::domain_error {
 public:
  explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

/// An estimator precondition does not hold; the message says how to fix it.
class PreconditionError : public std::invalid_argument {
 public:
  explicit PreconditionError(const std::string& what)
      : std::invalid_argument(what) {}
};

/// Numerical failure: non-finite state, step underflow, exhausted budget.
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what)
      : std::runtime_error(what) {}
};

/// Request exceeds the configured memory/work budget.
class ResourceError : public std::runtime_error {
 public:
  explicit ResourceError(const std::string& what)
      : std::runtime_error(what) {}
};

}  // namespace spiraldim
