#pragma once

#include <stdexcept>
#include <string>

namespace fog {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& msg, int line, int col)
      : Error(std::to_string(line) + ":" + std::to_string(col) + ": " + msg), line_(line), col_(col) {}
  int line() const { return line_; }
  int col() const { return col_; }

 private:
  int line_;
  int col_;
};

// theory violates a structural invariant (redefinition, input symbol defined, ...)
class TheoryError : public Error {
 public:
  using Error::Error;
};

// structure file inconsistent with the vocabulary
class StructureError : public Error {
 public:
  using Error::Error;
};

// definition over the input vocabulary without a two-valued well-founded model
class IllFormedDefinition : public Error {
 public:
  using Error::Error;
};

class EvalError : public Error {
 public:
  using Error::Error;
};

class CapExceeded : public Error {
 public:
  using Error::Error;
};

}  // namespace fog
