#pragma once

#include <stdexcept>
#include <string>

namespace maxavg {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed user input (bad JSON, negative entries, all-zero tuple, ...).
class InputError : public Error {
 public:
  using Error::Error;
};

// A denominator of a cyclic or chain sum vanishes.
class InadmissiblePair : public Error {
 public:
  using Error::Error;
};

// Ties produced M-interval representatives that overlap without nesting.
class DegenerateOrder : public Error {
 public:
  using Error::Error;
};

// T and T-tilde disagree at a reported minimizer.
class ConsistencyViolation : public Error {
 public:
  using Error::Error;
};

class IllConditionedFit : public Error {
 public:
  using Error::Error;
};

}  // namespace maxavg
