#pragma once

#include <stdexcept>
#include <string>

namespace rbk {

// Base for everything thrown by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input text. line/column are 1-based; column 0 means "whole line".
class ParseError : public Error {
 public:
  ParseError(int line, int column, const std::string& what)
      : Error("line " + std::to_string(line) + ", col " + std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

// Input is well-formed but meaningless (unknown ids, bad weights, schema violations, ...).
class SemanticError : public Error {
 public:
  using Error::Error;
};

// A rule violation function failed on a concrete realization.
class EvalError : public Error {
 public:
  using Error::Error;
};

}  // namespace rbk
