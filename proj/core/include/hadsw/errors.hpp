#pragma once

#include <stdexcept>
#include <string>

namespace hadsw {

// Numerical routine failed to meet its accuracy contract (non-convergence,
// non-positive pivot, ill-conditioning).
class NumericError : public std::runtime_error {
 public:
  explicit NumericError(const std::string& msg) : std::runtime_error(msg) {}
};

// Input violates a manifold or matrix constraint beyond tolerance.
class ConstraintViolation : public std::invalid_argument {
 public:
  explicit ConstraintViolation(const std::string& msg)
      : std::invalid_argument(msg) {}
};

// Two objects that must live on the same manifold do not.
class DescriptorMismatch : public std::invalid_argument {
 public:
  explicit DescriptorMismatch(const std::string& msg)
      : std::invalid_argument(msg) {}
};

// Operation not available for this manifold kind / projection pair.
class UnsupportedOperation : public std::invalid_argument {
 public:
  explicit UnsupportedOperation(const std::string& msg)
      : std::invalid_argument(msg) {}
};

// Iterative scheme produced non-finite values; carries the step index.
class DivergenceError : public std::runtime_error {
 public:
  DivergenceError(const std::string& msg, long step)
      : std::runtime_error(msg + " (step " + std::to_string(step) + ")"),
        step_(step) {}
  long step() const { return step_; }

 private:
  long step_;
};

}  // namespace hadsw
