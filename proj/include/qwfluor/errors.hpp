#pragma once

#include <stdexcept>
#include <string>

namespace qwf {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A precondition on an argument was violated.
class ArgumentError : public Error {
 public:
  using Error::Error;
};

/// A value lies outside the range where the operation is defined.
class RangeError : public Error {
 public:
  using Error::Error;
};

/// A linear solve failed or was too ill-conditioned to trust.
class SolverError : public Error {
 public:
  using Error::Error;
};

/// The Fock truncation cap was reached without meeting the tolerance.
class TruncationError : public Error {
 public:
  using Error::Error;
};

/// Time propagation blew up.
class StabilityError : public Error {
 public:
  using Error::Error;
};

/// A time or frequency grid is too short, too coarse or inconsistent.
class GridError : public Error {
 public:
  using Error::Error;
};

/// An absorption model was configured with unphysical parameters.
class ModelError : public Error {
 public:
  using Error::Error;
};

/// Requested correlation order is not implemented.
class UnsupportedOrderError : public Error {
 public:
  using Error::Error;
};

/// Configuration could not be parsed or validated.
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace qwf
