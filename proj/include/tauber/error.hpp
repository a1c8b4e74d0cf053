#pragma once

#include <stdexcept>
#include <string>

namespace tauber {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Evaluation outside the domain of log, loglog, a division by zero, or an
// argument that cannot be represented.
class DomainError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  enum class Kind { syntax, domain, overlap, gap };

  ParseError(Kind kind, int line, int column, const std::string& message)
      : Error(format(kind, line, column, message)),
        kind_(kind),
        line_(line),
        column_(column) {}

  Kind kind() const noexcept { return kind_; }
  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  static std::string format(Kind kind, int line, int column,
                            const std::string& message) {
    const char* tag = kind == Kind::syntax    ? "syntax error"
                      : kind == Kind::domain  ? "domain error"
                      : kind == Kind::overlap ? "overlap error"
                                              : "gap error";
    return std::string(tag) + " at " + std::to_string(line) + ":" +
           std::to_string(column) + ": " + message;
  }

  Kind kind_;
  int line_;
  int column_;
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

// Subdivision limit exceeded before the requested tolerance was met.
class QuadratureError : public Error {
 public:
  using Error::Error;
};

// A query reaches past the range on which a function is represented
// (lazily expanded piece families, primitives, sampled curves).
class HorizonError : public Error {
 public:
  using Error::Error;
};

}  // namespace tauber
