#pragma once

#include <stdexcept>
#include <string>

namespace kntorus {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Evaluation point lies inside the exclusion disk of a pole.
class PoleProximity : public Error {
 public:
  using Error::Error;
};

/// A contour does not enclose exactly one singularity, or touches one.
class BadContour : public Error {
 public:
  using Error::Error;
};

/// An integration segment passes through a pole exclusion disk.
class PoleOnPath : public Error {
 public:
  using Error::Error;
};

class DegenerateModuli : public Error {
 public:
  using Error::Error;
};

/// Argument-principle quadrature is not close to an integer.
class NonIntegerWinding : public Error {
 public:
  using Error::Error;
};

/// A finite-sum window derived from the almost-grading missed a nonzero term.
class WindowViolation : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace kntorus
