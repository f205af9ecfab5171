#pragma once

#include <stdexcept>
#include <string>

namespace liederiv {

/// Base class for all errors thrown by this library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Invalid algebra specification (empty block list, nonpositive dimension).
struct InvalidSpecError : Error {
  using Error::Error;
};

/// Operands live in different algebras or have mismatched shapes.
struct ShapeError : Error {
  using Error::Error;
};

/// An input failed a documented precondition (e.g. not a projection).
struct PreconditionError : Error {
  using Error::Error;
};

/// No partial isometry exists: per-block ranks of the projections differ.
struct EquivalenceError : Error {
  using Error::Error;
};

/// The algebra has a commutative summand where none is allowed.
struct CommutativeSummandError : Error {
  using Error::Error;
};

/// solve_inner could not realize the map as a commutator to tolerance.
struct NotInnerError : Error {
  using Error::Error;
};

/// Malformed JSON input.
struct ParseError : Error {
  using Error::Error;
};

/// A decomposition stage rejected the operator. `stage` identifies the
/// failing check; `witness_a`/`witness_b` are coordinate-basis indices
/// (-1 when not applicable) and `residual` the offending defect.
struct DecompositionError : Error {
  DecompositionError(std::string stage_, int a, int b, double residual_,
                     const std::string& message)
      : Error(message),
        stage(std::move(stage_)),
        witness_a(a),
        witness_b(b),
        residual(residual_) {}

  std::string stage;
  int witness_a = -1;
  int witness_b = -1;
  double residual = 0.0;
};

}  // namespace liederiv
