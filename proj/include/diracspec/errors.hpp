#ifndef DIRACSPEC_ERRORS_HPP
#define DIRACSPEC_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace diracspec {

// Root of the library's error hierarchy. Input/contract violations and
// numerical failures derive from it so callers can distinguish the two
// classes (see cli exit codes).
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Spectral point on (or too close to) the essential spectrum; the branch
// k(z) = sqrt(z^2 - m^2) is undefined there.
class BranchCutError : public Error {
 public:
  using Error::Error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

// Mobius inverse at w = 1 maps to infinity.
class PoleAtOneError : public Error {
 public:
  using Error::Error;
};

// A theorem hypothesis does not hold for the given inputs.
class ConditionViolatedError : public Error {
 public:
  using Error::Error;
};

// Tail of an integral cannot be certified below tolerance.
class NonIntegrableError : public Error {
 public:
  using Error::Error;
};

// Dilation angle outside the potential's analyticity sector.
class AnalyticityViolationError : public Error {
 public:
  using Error::Error;
};

// Contour argument increments could not be controlled; a root sits on or
// too close to the contour.
class WindingUnresolvedError : public Error {
 public:
  using Error::Error;
};

// Disk boundary / spectral curve intersection missing or not unique.
class NoIntersectionError : public Error {
 public:
  using Error::Error;
};

}  // namespace diracspec

#endif
