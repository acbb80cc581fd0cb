#pragma once

#include <stdexcept>
#include <string>

namespace heatwave {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of a function (e.g. rho <= 0).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A conserved state whose internal energy (hence pressure) is not positive.
class NonPhysicalStateError : public Error {
 public:
  using Error::Error;
};

/// Invalid parameters or run configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Iterative method failed to converge or produced non-finite values.
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// Hugoniot branch evaluated at (or numerically on top of) one of its poles.
class PoleError : public Error {
 public:
  PoleError(const std::string& what, double pole)
      : Error(what), pole_(pole) {}
  double pole() const noexcept { return pole_; }

 private:
  double pole_;
};

/// Characteristic field with coincident eigenvalues.
class DegenerateFieldError : public Error {
 public:
  using Error::Error;
};

/// Dispersion root in the unstable half plane.
class StabilityError : public Error {
 public:
  using Error::Error;
};

/// Failure inside a time step, carrying where it happened.
class StepError : public NumericalError {
 public:
  StepError(const std::string& what, double time, long cell)
      : NumericalError(what), time_(time), cell_(cell) {}
  double time() const noexcept { return time_; }
  long cell() const noexcept { return cell_; }

 private:
  double time_;
  long cell_;
};

}  // namespace heatwave
