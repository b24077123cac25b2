#pragma once

#include <stdexcept>
#include <string>

namespace kazhdan {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed argument: non-prime p, empty multiset, out-of-range element.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A requested construction would exceed the enumeration budget.
class SizeGuardError : public Error {
 public:
  using Error::Error;
};

/// A theorem hypothesis or structural precondition does not hold
/// (non-generating set, non-normal subgroup, non-abelian input, ...).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Iterative eigensolver stopped at max_iter without meeting tol.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double last_residual, long iterations)
      : Error(what), last_residual_(last_residual), iterations_(iterations) {}

  double last_residual() const { return last_residual_; }
  long iterations() const { return iterations_; }

 private:
  double last_residual_;
  long iterations_;
};

/// Randomized search exhausted its size cap.
class SearchCapError : public Error {
 public:
  SearchCapError(const std::string& what, double best_value, std::size_t best_size)
      : Error(what), best_value_(best_value), best_size_(best_size) {}

  double best_value() const { return best_value_; }
  std::size_t best_size() const { return best_size_; }

 private:
  double best_value_;
  std::size_t best_size_;
};

}  // namespace kazhdan
