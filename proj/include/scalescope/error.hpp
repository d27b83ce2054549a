#pragma once

#include <stdexcept>
#include <string>

namespace scalescope {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A precondition on an argument was violated.
class InvalidArgument : public Error {
public:
  using Error::Error;
};

/// A move does not apply to the segmentation it was given.
class InvalidMove : public Error {
public:
  using Error::Error;
};

/// A set of grid regions does not partition its grid.
class PartitionError : public Error {
public:
  using Error::Error;
};

/// Malformed input file or document.
class ParseError : public Error {
public:
  using Error::Error;
};

/// An internal invariant did not hold. Always a bug.
class InvariantViolation : public Error {
public:
  using Error::Error;
};

} // namespace scalescope
