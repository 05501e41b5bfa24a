#pragma once

#include <stdexcept>
#include <string>

namespace capcomp {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A parameter lies outside the domain of an operation (w > L, B outside (0,1), ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

// An SEC constraint was applied to a word whose length is not a multiple of L.
class LengthMismatchError : public Error {
 public:
  using Error::Error;
};

// A configured work limit (exhaustive length, transfer-graph state budget) was exceeded.
class ResourceError : public Error {
 public:
  using Error::Error;
};

// An outage witness was requested for parameters that provably avoid outage.
class NoWitnessError : public Error {
 public:
  using Error::Error;
};

// Malformed rational literal, bit string or CLI value.
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace capcomp
