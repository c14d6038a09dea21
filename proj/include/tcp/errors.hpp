#pragma once

#include <stdexcept>
#include <string>

namespace tcp {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Requested data lives in an OPEN (locally effective) degree.
struct EffectivenessError : Error {
  using Error::Error;
};

// A perturbation series produced more than `guard` nonzero terms.
struct NilpotencyGuardExceeded : Error {
  using Error::Error;
};

// A V-path of a discrete vector field exceeded the iteration guard;
// the field is not admissible as far as checked.
struct AdmissibilityGuardExceeded : Error {
  using Error::Error;
};

struct ValidationError : Error {
  using Error::Error;
};

struct PreconditionError : Error {
  using Error::Error;
};

}  // namespace tcp
