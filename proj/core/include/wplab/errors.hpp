#pragma once

#include <stdexcept>
#include <string>

namespace wplab {

/// Base class for every error raised by the library.
class Error : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/// A precondition on an argument was violated (bad grid, p <= 1, ...).
class InvalidArgument : public Error
{
public:
  using Error::Error;
};

/// Input is outside the admissible range of a closed-form bound.
class OutOfRange : public Error
{
public:
  using Error::Error;
};

/// The operator hit a vanishing gradient with p < 2 and no regularization.
class SingularityError : public Error
{
public:
  using Error::Error;
};

/// Requested operation is not defined for this kind of model space.
class UnsupportedGeometry : public Error
{
public:
  using Error::Error;
};

/// Iterative solver produced a non-finite or degenerate state.
class NumericalError : public Error
{
public:
  using Error::Error;
};

}  // namespace wplab
