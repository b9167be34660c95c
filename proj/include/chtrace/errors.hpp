#pragma once

#include <stdexcept>
#include <string>

namespace chtrace {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Arithmetic between elements of two different descriptors.
class RingMismatch : public Error {
 public:
  using Error::Error;
};

// A constructor parameter or dimension outside the supported range.
class BoundError : public Error {
 public:
  using Error::Error;
};

// An operation's input hypothesis does not hold (e.g. nonzero trace).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// Estimated expansion size is above the configured budget.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

}  // namespace chtrace
