#pragma once

#include <stdexcept>
#include <string>

namespace spinscat {

/// Bad physical or configuration input (non-positive energy, unknown key, ...).
class InvalidParameter : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Argument outside the range an evaluator supports.
class RangeError : public std::out_of_range {
public:
  using std::out_of_range::out_of_range;
};

/// Base class for failures of a numerical method on otherwise valid input.
class NumericalError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class SingularMatrix : public NumericalError {
public:
  SingularMatrix(const std::string& what, double condition)
      : NumericalError(what), condition_(condition) {}
  double condition() const noexcept { return condition_; }

private:
  double condition_;
};

/// The assembled scattering system is too ill-conditioned to trust.
class IllConditioned : public NumericalError {
public:
  IllConditioned(const std::string& what, double estimate)
      : NumericalError(what), estimate_(estimate) {}
  double estimate() const noexcept { return estimate_; }

private:
  double estimate_;
};

class NotPositiveSemidefinite : public NumericalError {
public:
  using NumericalError::NumericalError;
};

class StepUnderflow : public NumericalError {
public:
  using NumericalError::NumericalError;
};

/// The transfer-matrix oracle refuses configurations where it cannot be trusted.
class NotApplicable : public NumericalError {
public:
  using NumericalError::NumericalError;
};

/// A density matrix lacks the block structure a closed-form expression needs.
class FormMismatch : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

/// File could not be read or written. The message carries the path.
class IoError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

} // namespace spinscat
