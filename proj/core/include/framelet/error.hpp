#pragma once

#include <stdexcept>
#include <string>

namespace framelet {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A target or mask violates a hypothesis of the construction
/// (f(0) = 1, the sub-QMF inequality, m0(0) = 1, ...).
class AdmissibilityError : public Error {
 public:
  using Error::Error;
};

/// The requested accuracy could not be reached within the configured caps.
class BudgetExhausted : public Error {
 public:
  BudgetExhausted(const std::string& what, double best_error)
      : Error(what), best_error_(best_error) {}
  double best_error() const noexcept { return best_error_; }

 private:
  double best_error_;
};

/// A file could not be read or written.
class IoError : public Error {
 public:
  using Error::Error;
};

/// Malformed input file or record.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// An internal iteration failed to produce a result that passes its own check.
class ConstructionError : public Error {
 public:
  using Error::Error;
};

}  // namespace framelet
