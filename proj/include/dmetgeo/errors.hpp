#pragma once

#include <stdexcept>
#include <string>

namespace dmetgeo {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Malformed input text (XYZ files, configuration files).
class ParseError : public Error {
 public:
  using Error::Error;
};

/// Geometry violates a structural constraint (colliding atoms, bad parameters).
class InvalidGeometryError : public Error {
 public:
  using Error::Error;
};

/// Requested element has no basis data.
class UnsupportedBasisError : public Error {
 public:
  using Error::Error;
};

/// Overlap matrix (or another metric) is numerically singular.
class IllConditionedError : public Error {
 public:
  using Error::Error;
};

/// Self-consistent field iteration failed to converge.
class ScfFailureError : public Error {
 public:
  ScfFailureError(const std::string& msg, double residual)
      : Error(msg), last_residual(residual) {}
  double last_residual;
};

/// Chemical-potential search failed to bracket or converge.
class DmetNonConvergenceError : public Error {
 public:
  using Error::Error;
};

/// Variational optimizer diverged.
class OptimizerFailureError : public Error {
 public:
  using Error::Error;
};

}  // namespace dmetgeo
