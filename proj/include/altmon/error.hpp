#pragma once

#include <stdexcept>
#include <string>

namespace altmon {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Operands live on chains of different sizes.
struct DimensionError : Error {
  using Error::Error;
};

// An operation's stated precondition does not hold for the given input.
struct PreconditionError : Error {
  using Error::Error;
};

// A closed form is not defined for the requested parameters.
struct FormulaDomainError : Error {
  using Error::Error;
};

// The request exceeds a configured size or budget cap.
struct ResourceError : Error {
  using Error::Error;
};

struct ParseError : Error {
  using Error::Error;
};

}  // namespace altmon
