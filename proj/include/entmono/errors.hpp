#pragma once

#include <stdexcept>
#include <string>

namespace entmono {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A matrix or tensor would exceed the supported size.
class SizeError : public Error {
 public:
  using Error::Error;
};

/// Operand shapes or subsystem dimensions do not fit together.
class ShapeError : public Error {
 public:
  using Error::Error;
};

/// An argument violates a documented precondition or invariant.
class ArgumentError : public Error {
 public:
  using Error::Error;
};

/// An iterative method failed to converge.
class NumericError : public Error {
 public:
  explicit NumericError(const std::string& what, double best_so_far = 0.0)
      : Error(what), best_so_far_(best_so_far) {}

  double best_so_far() const noexcept { return best_so_far_; }

 private:
  double best_so_far_;
};

}  // namespace entmono
