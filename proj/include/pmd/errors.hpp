#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pmd {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Unknown candidate id or malformed ballot (not a permutation of the roster).
class RosterError : public Error {
 public:
  using Error::Error;
};

/// Rule parameters that do not fit the roster (scoring vector length, shape).
class ConfigurationError : public Error {
 public:
  using Error::Error;
};

/// A detection query that violates its own preconditions (y is the current
/// winner, suspect index out of range, rule not handled by the routine).
class InvalidQueryError : public Error {
 public:
  using Error::Error;
};

/// Exhaustive search refused because it would exceed the replay budget.
class BudgetExceededError : public Error {
 public:
  BudgetExceededError(const std::string& what, double required)
      : Error(what), required_(required) {}
  double required() const noexcept { return required_; }

 private:
  double required_;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace pmd
