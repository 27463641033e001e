#pragma once

#include <stdexcept>
#include <string>

namespace ftdft {

/// Invalid parameters or inputs that violate an operation's precondition.
class ValidationError : public std::invalid_argument {
 public:
  explicit ValidationError(const std::string& what) : std::invalid_argument(what) {}
};

/// A numerical procedure failed to reach its tolerance (iteration caps,
/// tail bounds that cannot be met, quadrature disagreement).
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace ftdft
