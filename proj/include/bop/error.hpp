#pragma once

#include <stdexcept>
#include <string>

namespace bop {

enum class ErrKind {
  PoleAtBasepoint,
  PoleAtPoint,
  NonIntegerEigenvalue,
  NonTraceless,
  NonInvertibleChart,
  NotNested,
  NotLogarithmic,
  ResidueDoesNotPreserve,
  EigenspaceDimensionMismatch,
  NonReducedDivisor,
  UnsupportedDivisor,
  ConditionViolation,
  NotAnOper,
  FrameMismatch,
  Truncation,
  DivisionByZero,
  Parse,
  Usage,
};

const char* kind_name(ErrKind k);

class Error : public std::runtime_error {
 public:
  Error(ErrKind k, const std::string& what) : std::runtime_error(what), kind_(k) {}
  ErrKind kind() const { return kind_; }

 private:
  ErrKind kind_;
};

class ParseError : public Error {
 public:
  ParseError(int line, int col, const std::string& msg)
      : Error(ErrKind::Parse, std::to_string(line) + ":" + std::to_string(col) + ": " + msg),
        line_(line), col_(col) {}
  int line() const { return line_; }
  int col() const { return col_; }

 private:
  int line_, col_;
};

[[noreturn]] inline void fail(ErrKind k, const std::string& msg) {
  throw Error(k, std::string(kind_name(k)) + ": " + msg);
}

}  // namespace bop
