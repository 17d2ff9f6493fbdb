#pragma once

#include <stdexcept>
#include <string>

namespace sagbisat {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define SAGBISAT_DEFINE_ERROR(Name)            \
  class Name : public Error {                  \
   public:                                     \
    explicit Name(const std::string& what)     \
        : Error(std::string(#Name ": ") + what) {} \
  }

SAGBISAT_DEFINE_ERROR(FieldMismatch);
SAGBISAT_DEFINE_ERROR(DivisionByZero);
SAGBISAT_DEFINE_ERROR(DividedPowerUndefined);
SAGBISAT_DEFINE_ERROR(RingMismatch);
SAGBISAT_DEFINE_ERROR(ZeroPolynomial);
SAGBISAT_DEFINE_ERROR(NotPositiveGrading);
SAGBISAT_DEFINE_ERROR(InvalidOrdering);
SAGBISAT_DEFINE_ERROR(NotHomogeneous);
SAGBISAT_DEFINE_ERROR(OrderingNotEliminating);
SAGBISAT_DEFINE_ERROR(GNotInS);
SAGBISAT_DEFINE_ERROR(NotGraded);
SAGBISAT_DEFINE_ERROR(OrderingNotDegRevType);
SAGBISAT_DEFINE_ERROR(BadGradingShape);
SAGBISAT_DEFINE_ERROR(WitnessNotInS);
SAGBISAT_DEFINE_ERROR(InvalidArgument);
SAGBISAT_DEFINE_ERROR(Cancelled);

#undef SAGBISAT_DEFINE_ERROR

/// Syntax error in polynomial or problem-file text, with a 1-based position.
class ParseError : public Error {
 public:
  ParseError(int line, int column, const std::string& what)
      : ParseError("ParseError", line, column, what) {}
  int line() const { return line_; }
  int column() const { return column_; }

 protected:
  ParseError(const char* kind, int line, int column, const std::string& what)
      : Error(std::string(kind) + " at " + std::to_string(line) + ":" + std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}

 private:
  int line_;
  int column_;
};

class UndeclaredVariable : public ParseError {
 public:
  UndeclaredVariable(int line, int column, const std::string& name)
      : ParseError("UndeclaredVariable", line, column, "'" + name + "' is not declared") {}
};

}  // namespace sagbisat
