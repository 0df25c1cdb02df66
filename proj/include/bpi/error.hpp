#pragma once

#include <stdexcept>
#include <string>

namespace bpi {

enum class ErrorCode {
  invalid_argument = 1,
  numerical = 2,
  cutoff = 3,
  fit = 4,
  io = 5,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

class InvalidArgument : public Error {
 public:
  explicit InvalidArgument(const std::string& what) : Error(ErrorCode::invalid_argument, what) {}
};

class NumericalError : public Error {
 public:
  explicit NumericalError(const std::string& what) : Error(ErrorCode::numerical, what) {}
};

/// The probe frequency does not exceed the local plasma frequency.
class CutoffError : public Error {
 public:
  CutoffError(const std::string& what, double cutoff_density, double position = 0.0)
      : Error(ErrorCode::cutoff, what), cutoff_density_(cutoff_density), position_(position) {}
  double cutoff_density() const noexcept { return cutoff_density_; }
  double position() const noexcept { return position_; }

 private:
  double cutoff_density_;
  double position_;
};

class FitError : public Error {
 public:
  FitError(const std::string& what, std::string parameter = {})
      : Error(ErrorCode::fit, what), parameter_(std::move(parameter)) {}
  const std::string& parameter() const noexcept { return parameter_; }

 private:
  std::string parameter_;
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& what) : Error(ErrorCode::io, what) {}
};

}  // namespace bpi
