#ifndef LTC_ERRORS_HPP
#define LTC_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ltc {

// Root of everything the library throws on purpose. Index errors use
// std::out_of_range instead.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A parameter or topology invariant of the network model is violated.
class InvalidModel : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

// An operation that is only defined for a restricted class of networks
// (e.g. chemical-only) was handed something else.
class UnsupportedTopology : public Error {
 public:
  using Error::Error;
};

// Text input could not be turned into a value. Line and column are 1-based;
// zero means "not applicable".
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line = 0, std::size_t column = 0)
      : Error(what), line_(line), column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

// A file could not be read or written.
class IoError : public Error {
 public:
  using Error::Error;
};

// Failures of the numerical machinery rather than of the input format.
class NumericError : public Error {
 public:
  using Error::Error;
};

class RankDeficient : public NumericError {
 public:
  using NumericError::NumericError;
};

class ConditionsViolated : public NumericError {
 public:
  using NumericError::NumericError;
};

class RealizationError : public NumericError {
 public:
  using NumericError::NumericError;
};

class DomainError : public NumericError {
 public:
  using NumericError::NumericError;
};

}  // namespace ltc

#endif  // LTC_ERRORS_HPP
