#pragma once

#include <stdexcept>
#include <string>

namespace fanolattice {

/// A theorem the code relies on was contradicted by a computed example. This
/// is either a bug or a counterexample; callers report the offending input.
class InvariantViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An operation that needs a smooth (unimodular) fan got something else.
class NotSmoothError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace fanolattice
