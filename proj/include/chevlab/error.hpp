#ifndef CHEVLAB_ERROR_HPP
#define CHEVLAB_ERROR_HPP

#include <stdexcept>
#include <string>

namespace chevlab {

// Base class for all errors thrown by this library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Bad argument: illegal type/rank pair, root not in the system, zero
// determinant, and the like. Maps to CLI exit code 2.
struct InvalidInput : Error {
  using Error::Error;
};

// An enumeration would exceed a configured size cap.
struct CapExceeded : Error {
  using Error::Error;
};

// Operands belong to different algebraic contexts (root systems, groups,
// coefficient rings, complexes).
struct ContextMismatch : Error {
  using Error::Error;
};

}  // namespace chevlab

#endif
