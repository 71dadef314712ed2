#pragma once

#include <stdexcept>
#include <string>

namespace pic {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Non-finite coordinates, degenerate lines, malformed polygons.
class GeometryError : public Error {
 public:
  using Error::Error;
};

/// A function could not be evaluated at a requested point.
class EvaluationError : public Error {
 public:
  using Error::Error;
};

/// A precondition on the arguments of an operation was violated.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

}  // namespace pic
