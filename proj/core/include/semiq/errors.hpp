#pragma once

#include <stdexcept>
#include <string>

namespace semiq {

/// Input violates an operation's precondition (bad parameter, energy outside
/// the bound-state window, malformed table, ...).
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An iterative procedure (bracketing, fixed point) failed to reach its
/// tolerance. Quadrature non-convergence is reported through flags instead.
class ConvergenceFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace semiq
