#ifndef NANOBEAM_ERRORS_HPP
#define NANOBEAM_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace nanobeam {

/// Argument outside the mathematical domain of an operation (negative time, ε ≤ 0, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Requested entry is not present in a table.
class IndexError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// Operation only defined for a subset of boundary conditions.
class UnsupportedBoundary : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Base for failures of the iterative numerics. The CLI maps these to exit code 3.
class NumericalError : public std::runtime_error {
 public:
  NumericalError(const std::string& what, int mode_index)
      : std::runtime_error(what), mode_index_(mode_index) {}

  int mode_index() const noexcept { return mode_index_; }

 private:
  int mode_index_;
};

class BracketFailure : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class NoConvergence : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

}  // namespace nanobeam

#endif  // NANOBEAM_ERRORS_HPP
