#pragma once

#include <stdexcept>
#include <string>

namespace krlab {

// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed textual input (braid words, graph DSL, JSON).
class ParseError : public Error {
 public:
  using Error::Error;
};

// A bounded search ran out of budget before reaching a conclusive state.
class BudgetError : public Error {
 public:
  using Error::Error;
};

// An algebraic precondition was violated (non-exact division, degree mismatch, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

}  // namespace krlab
