#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace qes {

/// Base class for every failure raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NotDivisible : public Error {
 public:
  using Error::Error;
};

class DegreeCapExceeded : public Error {
 public:
  using Error::Error;
};

/// Raised by real-root isolation; carries the common factor of p and p'.
class NotSquarefree : public Error {
 public:
  NotSquarefree(const std::string& what, std::vector<std::string> gcd_coeffs)
      : Error(what), gcd_coefficients(std::move(gcd_coeffs)) {}
  std::vector<std::string> gcd_coefficients;  // ascending, decimal rationals
};

class MultipleRoot : public Error {
 public:
  using Error::Error;
};

class StructureViolation : public Error {
 public:
  using Error::Error;
};

class NonConvergence : public Error {
 public:
  NonConvergence(const std::string& what, std::vector<std::size_t> stuck = {})
      : Error(what), stuck_indices(std::move(stuck)) {}
  std::vector<std::size_t> stuck_indices;
};

class TooClose : public Error {
 public:
  using Error::Error;
};

class BranchCollision : public Error {
 public:
  using Error::Error;
};

class InsideSupport : public Error {
 public:
  using Error::Error;
};

class StallNearTurningPoint : public Error {
 public:
  using Error::Error;
};

class AmbiguousTopology : public Error {
 public:
  using Error::Error;
};

class PoleTooClose : public Error {
 public:
  using Error::Error;
};

class DegreeMismatch : public Error {
 public:
  using Error::Error;
};

class IndexingAmbiguity : public Error {
 public:
  using Error::Error;
};

class ClearanceViolation : public Error {
 public:
  using Error::Error;
};

class CollisionUnresolved : public Error {
 public:
  using Error::Error;
};

class UnknownFigure : public Error {
 public:
  using Error::Error;
};

}  // namespace qes
