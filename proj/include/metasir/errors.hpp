#pragma once

#include <stdexcept>
#include <string>

namespace metasir {

/// Root of every exception thrown by the library.
class Error : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

/// A parameter or argument violates its documented domain.
class InvalidArgument : public Error
{
  public:
    using Error::Error;
};

/// The realization has no interferers, so the threshold is unbounded.
class EmptyRealization : public Error
{
  public:
    EmptyRealization() : Error("realization has no interferers") {}
};

class InsufficientInterferers : public Error
{
  public:
    using Error::Error;
};

class ZeroInterference : public Error
{
  public:
    ZeroInterference() : Error("interference is zero") {}
};

/// Closed forms that exist only for a path-loss exponent of 4.
class UnsupportedExponent : public Error
{
  public:
    using Error::Error;
};

class PoleError : public Error
{
  public:
    using Error::Error;
};

/// Base for failures of a numerical method (as opposed to bad input).
class NumericalFailure : public Error
{
  public:
    using Error::Error;
};

class QuadratureFailure : public NumericalFailure
{
  public:
    using NumericalFailure::NumericalFailure;
};

class CancellationError : public NumericalFailure
{
  public:
    using NumericalFailure::NumericalFailure;
};

} // namespace metasir
