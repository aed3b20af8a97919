#pragma once

#include <stdexcept>
#include <string>

namespace hypertess {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// bad arguments, dimension mismatch, violated preconditions
struct UsageError : Error {
  using Error::Error;
};

// point outside the open unit ball, offset out of [0,1)
struct DomainError : Error {
  using Error::Error;
};

// a point of interest sits on a hyperplane (null event, caller resamples)
struct DegenerateError : Error {
  using Error::Error;
};

// probe lattice too coarse to resolve a cell, halve the pitch
struct ResolutionError : Error {
  using Error::Error;
};

// encounter configuration violating one of its bounds
struct ConfigError : Error {
  using Error::Error;
};

// quadrature or root finding failed to reach tolerance
struct NumericError : Error {
  using Error::Error;
};

}  // namespace hypertess
