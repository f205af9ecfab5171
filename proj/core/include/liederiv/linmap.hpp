#pragma once

// Complex-linear maps A -> A stored as dense matrices on matrix-unit
// coordinates, plus the residual checks for the three defining
// identities:
//
//   Lie derivation        L([x,y]) = [L(x),y] + [x,L(y)]
//   associative derivation D(xy)   = D(x)y + xD(y)
//   center-valued trace    E(xy)   = E(yx),  E(A) in Z(A)
//
// and the two solvers the rest of the library is built on: a nullspace
// extraction of the full Lie-derivation space and a least-squares
// inner-derivation witness.

#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "liederiv/algebra.hpp"

namespace liederiv {

class LinearOperator {
 public:
  LinearOperator() = default;
  LinearOperator(StarAlgebra algebra, Eigen::MatrixXcd matrix);

  static LinearOperator zero(const StarAlgebra& algebra);
  static LinearOperator identity_map(const StarAlgebra& algebra);

  const StarAlgebra& algebra() const { return algebra_; }
  const Eigen::MatrixXcd& matrix() const { return matrix_; }

  AlgebraElement apply(const AlgebraElement& x) const;

  double frobenius_norm() const { return matrix_.norm(); }

 private:
  StarAlgebra algebra_;
  Eigen::MatrixXcd matrix_;
};

AlgebraElement apply(const LinearOperator& op, const AlgebraElement& x);

LinearOperator operator+(const LinearOperator& a, const LinearOperator& b);
LinearOperator operator-(const LinearOperator& a, const LinearOperator& b);
LinearOperator operator*(Complex c, const LinearOperator& a);
/// Composition: (a * b)(x) = a(b(x)).
LinearOperator compose(const LinearOperator& a, const LinearOperator& b);

/// x |-> y*x and x |-> x*y as coordinate matrices.
LinearOperator left_multiplication(const AlgebraElement& y);
LinearOperator right_multiplication(const AlgebraElement& y);

/// x |-> [a, x]. Passes both the Lie and the Leibniz residual.
LinearOperator inner_derivation(const AlgebraElement& a);

/// E(x) = sum_k tr_k(x) * w_k with one central weight per block; the
/// complete parametrization of center-valued traces. E(z_k) = n_k * w_k.
LinearOperator trace_from_weights(const std::vector<CentralElement>& weights);

/// Outcome of a residual sweep over the coordinate basis. `witness_a`
/// and `witness_b` are the basis indices attaining the maximum (-1 when
/// a check is not indexed by a pair).
struct ResidualReport {
  double max_residual = 0.0;
  int witness_a = -1;
  int witness_b = -1;
  bool passed = true;
  double tolerance = kDefaultTolerance;
};

/// Max defect of the Lie identity over basis pairs, / (1 + ||L||_F).
/// Bilinearity makes the basis sweep a bound for all of A x A.
ResidualReport lie_residual(const LinearOperator& L,
                            double tol = kDefaultTolerance);

/// Max defect of the Leibniz rule over basis pairs, / (1 + ||D||_F).
ResidualReport leibniz_residual(const LinearOperator& D,
                                double tol = kDefaultTolerance);

/// Tracial defect max ||E(e_a e_b) - E(e_b e_a)|| combined with the
/// distance of every E(e_a) from the center, both / (1 + ||E||_F).
ResidualReport trace_residual(const LinearOperator& E,
                              double tol = kDefaultTolerance);

/// Distance of x from Z(A): norm of x minus its blockwise (tr/n)*I part.
double central_defect(const AlgebraElement& x);

/// Basis of the space of Lie derivations on A, via SVD nullspace
/// extraction of the homogeneous constraint system over all basis pairs.
/// Singular values below kNullspaceThreshold * sigma_max count as zero.
/// dim = sum_k (n_k^2 - 1) + m^2 for A with m blocks.
std::vector<LinearOperator> lie_derivation_space(const StarAlgebra& algebra);

/// The constraint matrix whose nullspace is the Lie-derivation space,
/// one row group per basis pair (a < b), acting on vec(L) column-major.
/// Exposed so independent rank routines can cross-check the dimension.
Eigen::MatrixXcd lie_constraint_matrix(const StarAlgebra& algebra);

/// Rank by column-pivoted QR at a relative threshold; an independent
/// route to the dimensions that lie_derivation_space finds by SVD.
int qr_rank(const Eigen::MatrixXcd& m,
            double threshold = kNullspaceThreshold);

/// Matrix of a |-> vec(D_a) over the coordinate basis of A; its rank is
/// the dimension of the inner-derivation space (coord_dim - m).
Eigen::MatrixXcd inner_parametrization_matrix(const StarAlgebra& algebra);

/// Matrix of weights |-> vec(E) over elementary central weights; its
/// rank is the dimension of the trace space (m^2).
Eigen::MatrixXcd trace_parametrization_matrix(const StarAlgebra& algebra);

/// Least-squares a with [a, e_b] = D(e_b) for every basis unit, gauged to
/// per-block trace zero. Throws NotInnerError when the best commutator
/// misses D by more than tol * (1 + ||D||_F).
AlgebraElement solve_inner(const LinearOperator& D, double tol = 1e-8);

/// Projects onto the per-block trace-free part (the solve_inner gauge).
AlgebraElement traceless_part(const AlgebraElement& a);

/// Residual of the degree-two bracket identity that every Lie derivation
/// satisfies at a projection p: with T = pL(p) + L(p)p + pL(p)p - L(p)
/// and S = pL(p) + L(p)p - L(p),
///   x T - T x = 3 p x S - 3 S x p
/// for every x. Normalized by (1 + ||L||_F)(1 + ||x||).
ResidualReport projection_bracket_residual(const LinearOperator& L,
                                           const AlgebraElement& p,
                                           const AlgebraElement& x,
                                           double tol = kDefaultTolerance);

enum class SampleMode { kGroundTruth, kNullspace };

struct GroundTruth {
  AlgebraElement a;                     // per-block trace-free generator
  std::vector<CentralElement> weights;  // one central weight per block
};

struct SampledOperator {
  LinearOperator op;
  std::optional<GroundTruth> truth;  // present in ground-truth mode
};

/// Deterministic per (algebra, seed, mode). Ground-truth mode returns
/// D_a + E with the generating (a, weights) attached; nullspace mode
/// returns a random combination of lie_derivation_space basis vectors.
SampledOperator sample_lie_derivation(const StarAlgebra& algebra,
                                      std::uint64_t seed, SampleMode mode);

}  // namespace liederiv
