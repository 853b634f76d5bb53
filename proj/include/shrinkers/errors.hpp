#pragma once

#include <stdexcept>
#include <string>

namespace shrinkers {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Tangent vectors of a jet are (numerically) linearly dependent.
class DegenerateJetError : public Error {
 public:
  using Error::Error;
};

class NonLagrangianError : public Error {
 public:
  using Error::Error;
};

class NonSphericalError : public Error {
 public:
  using Error::Error;
};

/// Family parameters outside their admissible set (gcd, range, ordering).
class InadmissibleParameterError : public Error {
 public:
  using Error::Error;
};

class GridError : public Error {
 public:
  using Error::Error;
};

class IntegratorError : public Error {
 public:
  using Error::Error;
};

/// The radial coordinate of a profile curve does not oscillate.
class CircleDegenerateError : public Error {
 public:
  using Error::Error;
};

class RootFindingError : public Error {
 public:
  using Error::Error;
};

/// Genus estimate from total curvature is not close to an integer.
class InconsistentSamplingError : public Error {
 public:
  using Error::Error;
};

}  // namespace shrinkers
