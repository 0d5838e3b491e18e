#pragma once

#include <stdexcept>
#include <string>

namespace goldnet {

// Base of every error raised by the library. The CLI maps these to exit
// code 3; argument validation errors map to 2.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidBound : public Error {
 public:
  using Error::Error;
};

class OutOfRange : public Error {
 public:
  using Error::Error;
};

class InvalidEvenNumber : public Error {
 public:
  using Error::Error;
};

// An even number in range with no distinct-prime decomposition. Never
// expected to fire; it would be a counterexample within the sieve bound.
class UndecomposableEven : public Error {
 public:
  using Error::Error;
};

class SieveExhausted : public Error {
 public:
  using Error::Error;
};

class DegenerateGraph : public Error {
 public:
  using Error::Error;
};

class InfeasibleNullModel : public Error {
 public:
  using Error::Error;
};

class InvalidConfig : public Error {
 public:
  using Error::Error;
};

}  // namespace goldnet
