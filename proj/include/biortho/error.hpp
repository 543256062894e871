#pragma once

#include <stdexcept>
#include <string>

namespace biortho {

/// Input outside the mathematical domain of an operation, or a violated
/// precondition on user-supplied data.
class DomainError : public std::domain_error {
 public:
  explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

/// An iterative method failed to reach its tolerance.
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace biortho
