// SPDX-License-Identifier: MIT OR Apache-2.0

#ifndef FSMV_ERRORS_HPP
#define FSMV_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace fsmv {

// Base class for everything this library throws on purpose.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Malformed model file or property expression. line/col are 1-based;
// 0 means "not tied to a position".
class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line = 0, int col = 0)
      : Error(format(what, line, col)), line_(line), col_(col) {}
  int line() const { return line_; }
  int col() const { return col_; }

 private:
  static std::string format(const std::string& what, int line, int col);
  int line_;
  int col_;
};

// Structurally valid model that cannot be compiled (e.g. deadlock states).
class CompileError : public Error {
 public:
  using Error::Error;
};

// evaluate() hit a variable the assignment does not cover.
class EvalError : public Error {
 public:
  using Error::Error;
};

// A formula crossed a module boundary with variables it must not mention.
class ForeignVariableError : public Error {
 public:
  using Error::Error;
};

// An operation was called outside its contract (caller bug, not input bug).
class ContractError : public Error {
 public:
  using Error::Error;
};

// The SAT core exceeded its configured budget. Signals "give up",
// never a wrong verdict.
class ResourceLimitError : public Error {
 public:
  using Error::Error;
};

}  // namespace fsmv

#endif  // FSMV_ERRORS_HPP
