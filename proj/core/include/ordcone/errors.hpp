#pragma once

#include <stdexcept>
#include <string>

namespace ordcone {

// Base of everything the library throws on purpose.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Caller-supplied data violates a precondition (bad dimension, non-PD
// matrix, weights that do not sum to one, malformed JSON, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// An exact-arithmetic or size cap was hit: rational overflow, lcm overflow,
// support or tuple caps, dyadic depth.
class CapacityError : public Error {
 public:
  using Error::Error;
};

// An iterative solver failed to converge (Jacobi sweeps, Karcher iteration).
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double last_residual = 0.0)
      : Error(what), last_residual_(last_residual) {}

  double last_residual() const noexcept { return last_residual_; }

 private:
  double last_residual_;
};

}  // namespace ordcone
