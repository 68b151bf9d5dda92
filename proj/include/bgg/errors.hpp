#pragma once

// Error kinds that callers (the command line tool in particular) map to
// distinct exit codes.

#include <stdexcept>
#include <string>

namespace bgg {

/// An input does not satisfy the precondition of an operation.
struct PreconditionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A result would depend on a bound that could not be verified, such as a
/// regularity estimate whose scan ran out of pieces.
struct UncertifiedError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A construction produced something it should not have, such as homology
/// at the seam of a Tate window.
struct ConstructionError : std::logic_error {
  using std::logic_error::logic_error;
};

}  // namespace bgg
