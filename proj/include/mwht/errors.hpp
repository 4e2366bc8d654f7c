#pragma once

#include <stdexcept>
#include <string>

namespace mwht {

// Error categories double as CLI exit codes.
enum class ErrorKind : int {
  validation = 2,
  numerical = 3,
  io = 4,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

// Bad parameters, bad configuration, unsupported requests.
class ValidationError : public Error {
 public:
  explicit ValidationError(const std::string& what) : Error(ErrorKind::validation, what) {}
};

class ConfigError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class DomainError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

// Requested span or band is not covered by the available data.
class RangeError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class CoverageError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class NumericalError : public Error {
 public:
  explicit NumericalError(const std::string& what) : Error(ErrorKind::numerical, what) {}
};

// A sample where the quantity of interest is undefined (zero magnitude, pole).
class SingularSampleError : public NumericalError {
 public:
  SingularSampleError(const std::string& what, double frequency_hz)
      : NumericalError(what), frequency_hz_(frequency_hz) {}
  double frequency_hz() const noexcept { return frequency_hz_; }

 private:
  double frequency_hz_;
};

// Grid too coarse to unwrap phase unambiguously.
class ResolutionError : public NumericalError {
 public:
  ResolutionError(const std::string& what, double frequency_hz)
      : NumericalError(what), frequency_hz_(frequency_hz) {}
  double frequency_hz() const noexcept { return frequency_hz_; }

 private:
  double frequency_hz_;
};

class NotFoundError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class QuadratureError : public NumericalError {
 public:
  QuadratureError(const std::string& what, double achieved_tolerance)
      : NumericalError(what), achieved_(achieved_tolerance) {}
  double achieved_tolerance() const noexcept { return achieved_; }

 private:
  double achieved_;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line)
      : Error(ErrorKind::validation, "line " + std::to_string(line) + ": " + what), line_(line) {}
  int line() const noexcept { return line_; }

 private:
  int line_;
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& what) : Error(ErrorKind::io, what) {}
};

}  // namespace mwht
