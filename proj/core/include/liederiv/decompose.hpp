#pragma once

// Standard-form assembly: every Lie derivation L on a finite direct sum
// of matrix blocks splits as L = D + E with D an associative derivation
// and E a center-valued trace. The construction normalizes L at a
// halving projection, splits the diagonal corners, extends over the
// commutative summand through the cross traces, and certifies every step
// with residuals. The type-I form further realizes D as a commutator.

#include <optional>
#include <utility>

#include "liederiv/algebra.hpp"
#include "liederiv/linmap.hpp"
#include "liederiv/peirce.hpp"

namespace liederiv {

struct DecompositionDiagnostics {
  double lie = 0.0;
  double leibniz = 0.0;
  double trace = 0.0;
  double reconstruction = 0.0;
};

/// The certified bundle realizing L = D + E.
struct StandardForm {
  LinearOperator D;  // associative derivation
  LinearOperator E;  // center-valued trace
  AlgebraElement normalizer;  // inner correction used at the frame
  std::optional<PeirceFrame> frame;  // absent for commutative algebras
  DecompositionDiagnostics residuals;
};

/// L = D_a + E with the defect of D on the center reported separately;
/// delta_norm vanishes here because the center carries no nonzero
/// derivations in finite dimensions.
struct TypeOneForm {
  AlgebraElement a;
  LinearOperator E;
  double delta_norm = 0.0;
};

struct CrossTraces {
  LinearOperator F1, F2, F3;
};

/// Core step on an algebra with no commutative summand and L1(p1)
/// central: per basis element x,
///   D1(x) = d(x11) + d(x22) + L1(x12 + x21),   E1(x) = L1(x) - D1(x),
/// where d/z come from diagonal_corner_split. D1 must pass the Leibniz
/// residual and E1 the trace residual; failures throw DecompositionError
/// with stages "diagonal-split", "derivation-residual", "trace-residual".
std::pair<LinearOperator, LinearOperator> decompose_normalized(
    const LinearOperator& L1, const PeirceFrame& frame,
    double tol = kDefaultTolerance);

/// F1(x) = z0 L(z1 x), F2(x) = z1 L(z0 x), F3(x) = z0 L(z0 x): the
/// center-valued traces carrying the commutative cross terms.
CrossTraces cross_traces(const LinearOperator& L, const CentralElement& z0,
                         const CentralElement& z1);

/// The block dimensions >= 2, as their own algebra (the z1 part).
StarAlgebra noncommutative_part(const StarAlgebra& algebra);

/// x |-> z1 L(z1 x) as an operator on noncommutative_part(A); a Lie
/// derivation whenever L is one.
LinearOperator restrict_to_noncommutative(const LinearOperator& L);

/// Full pipeline. Rejects input failing the Lie residual (stage "lie").
/// A fully commutative algebra returns D = 0, E = L. The second overload
/// runs the core step with a caller-supplied frame on
/// noncommutative_part(A) instead of the canonical halving frame.
StandardForm standard_form(const LinearOperator& L,
                           double tol = kDefaultTolerance);
StandardForm standard_form(const LinearOperator& L, const PeirceFrame& frame,
                           double tol = kDefaultTolerance);

/// standard_form followed by solve_inner(D). delta_norm is the largest
/// ||D(z_k)|| over the center basis.
TypeOneForm type_one_form(const LinearOperator& L,
                          double tol = kDefaultTolerance);

/// Entrywise lift of a map delta on the center coordinates: block k of
/// the image has entries (delta x)_ij^k = sum_l delta(k,l) x_ij^l.
/// Entries of delta may only couple blocks of equal dimension. The lift
/// satisfies the Leibniz rule exactly when delta is a derivation of the
/// coefficient algebra, hence only for delta = 0 here.
LinearOperator lift_center_derivation(const StarAlgebra& algebra,
                                      const Eigen::MatrixXcd& delta);

}  // namespace liederiv
