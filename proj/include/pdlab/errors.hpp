#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pdlab {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual const char* kind() const noexcept { return "error"; }
};

/// An argument lies outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "domain"; }
};

/// A size guard (enumeration, degree, Bell number) was exceeded.
class CapacityError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "capacity"; }
};

/// The parameter regime is valid but the operation does not support it.
class UnsupportedRegime : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "unsupported"; }
};

/// A density was evaluated outside its support.
class SupportError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "support"; }
};

class NumericError : public Error {
 public:
  NumericError(const std::string& what, double residual)
      : Error(what + " (error estimate " + std::to_string(residual) + ")"),
        residual_(residual) {}
  const char* kind() const noexcept override { return "numeric"; }
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

class SimulationError : public Error {
 public:
  SimulationError(const std::string& what, std::size_t step)
      : Error(what + " at step " + std::to_string(step)), step_(step) {}
  const char* kind() const noexcept override { return "simulation"; }
  std::size_t step() const noexcept { return step_; }

 private:
  std::size_t step_;
};

/// Polynomial mini-grammar failure; carries the offending token.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::string token)
      : Error(what + ": '" + token + "'"), token_(std::move(token)) {}
  const char* kind() const noexcept override { return "parse"; }
  const std::string& token() const noexcept { return token_; }

 private:
  std::string token_;
};

}  // namespace pdlab
