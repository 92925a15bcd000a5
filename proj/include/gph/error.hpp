#pragma once

#include <stdexcept>
#include <string>

namespace gph {

// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Shape mismatch between matrices, vectors or state indices.
class DimensionError : public Error {
 public:
  using Error::Error;
};

// Argument outside the documented domain (negative time, bad weights, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

// Generator or model that violates the sign / row-sum constraints.
class ValidationError : public Error {
 public:
  using Error::Error;
};

class SingularMatrixError : public Error {
 public:
  using Error::Error;
};

// Repeated eigenvalues, or a complex dominant eigenvalue where a real one is required.
class UnsupportedSpectrumError : public Error {
 public:
  using Error::Error;
};

// Information set with zero likelihood under both regimes, or an unreachable state.
class DegenerateInformationError : public Error {
 public:
  using Error::Error;
};

// Survival probability too small for an intensity ratio to mean anything.
class OutOfSupportError : public Error {
 public:
  using Error::Error;
};

class InsufficientSampleError : public Error {
 public:
  using Error::Error;
};

// Adaptive quadrature could not reach the requested tolerance.
class AccuracyError : public Error {
 public:
  AccuracyError(const std::string& what, double best_estimate, double error_estimate)
      : Error(what), best_estimate_(best_estimate), error_estimate_(error_estimate) {}

  double best_estimate() const noexcept { return best_estimate_; }
  double error_estimate() const noexcept { return error_estimate_; }

 private:
  double best_estimate_;
  double error_estimate_;
};

// Malformed model, path or CSV input. `where` names the line or field.
class ParseError : public Error {
 public:
  ParseError(const std::string& where, const std::string& what)
      : Error(where + ": " + what), where_(where) {}

  const std::string& where() const noexcept { return where_; }

 private:
  std::string where_;
};

}  // namespace gph
