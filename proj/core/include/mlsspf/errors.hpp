#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mlsspf {

// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An exponential producer (powerset, pow_star, ...) would exceed its limit.
class LimitExceeded : public Error {
 public:
  using Error::Error;
};

class SyntaxError : public Error {
 public:
  SyntaxError(const std::string& msg, std::size_t line, std::size_t column)
      : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + msg),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

class ArityError : public SyntaxError {
 public:
  using SyntaxError::SyntaxError;
};

class UnboundVariable : public Error {
 public:
  explicit UnboundVariable(const std::string& var) : Error("unbound variable: " + var), var_(var) {}
  const std::string& variable() const noexcept { return var_; }

 private:
  std::string var_;
};

class NotTransitive : public Error {
 public:
  using Error::Error;
};

// Malformed JSON input (models, processes, certificates).
class FormatError : public Error {
 public:
  using Error::Error;
};

// Construction failures of the pasting / pumping machinery.
class NoLocalTrash : public Error {
 public:
  using Error::Error;
};

class CardinalityDeficit : public Error {
 public:
  using Error::Error;
};

class CannotWarmUp : public Error {
 public:
  using Error::Error;
};

// Witness certification failures.
class NotAWitness : public Error {
 public:
  using Error::Error;
};

class NoEvent : public Error {
 public:
  using Error::Error;
};

class NoClosedCover : public Error {
 public:
  using Error::Error;
};

class CoverMissesVariable : public Error {
 public:
  CoverMissesVariable(const std::string& var)
      : Error("no pumping event covers variable " + var), variable(var) {}
  std::string variable;
};

}  // namespace mlsspf
