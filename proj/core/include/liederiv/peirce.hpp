#pragma once

// The 2x2 corner structure S_ij = p_i A p_j induced by a projection p
// with full central support on both sides, and the reductions that bring
// a Lie derivation into a form with central image at p: the corner
// recovery witness, the inner normalization L + D_a, the off-corner
// leakage check, and the diagonal-corner splitting into S_ii + Z(A).

#include <array>
#include <vector>

#include "liederiv/algebra.hpp"
#include "liederiv/linmap.hpp"

namespace liederiv {

/// p1 + p2 = 1 with central_support(p1) = central_support(p2) = 1 and
/// rank(p1) <= rank(p2) in every block.
class PeirceFrame {
 public:
  /// Frame from the canonical halving projection of the algebra.
  static PeirceFrame halving(const StarAlgebra& algebra);

  /// Frame from a caller-supplied projection; validates the invariants.
  static PeirceFrame from_projection(const AlgebraElement& p,
                                     double tol = kExactTolerance);

  const StarAlgebra& algebra() const { return p1_.algebra(); }
  const AlgebraElement& p1() const { return p1_; }
  const AlgebraElement& p2() const { return p2_; }
  /// i is 1 or 2.
  const AlgebraElement& p(int i) const { return i == 1 ? p1_ : p2_; }
  const std::vector<int>& ranks() const { return ranks_; }

 private:
  PeirceFrame(AlgebraElement p1, AlgebraElement p2, std::vector<int> ranks)
      : p1_(std::move(p1)), p2_(std::move(p2)), ranks_(std::move(ranks)) {}

  AlgebraElement p1_;
  AlgebraElement p2_;
  std::vector<int> ranks_;
};

/// The four compressions x_ij = p_i x p_j; their sum reconstructs x.
struct PeirceSplit {
  AlgebraElement x11, x12, x21, x22;

  AlgebraElement corner(int i, int j) const {
    if (i == 1) return j == 1 ? x11 : x12;
    return j == 1 ? x21 : x22;
  }
};

PeirceSplit peirce_split(const AlgebraElement& x, const PeirceFrame& frame);

/// ||x - p_i x p_j|| <= tol * (1 + ||x||): membership of x in S_ij.
bool in_corner(const AlgebraElement& x, const PeirceFrame& frame, int i,
               int j, double tol = kDefaultTolerance);

/// Pair (y, u) with y = p1 u* q1 p2 in S_12 and u the partial isometry
/// from p1 onto the leading sub-projection q1 <= p2, so that x = x y u
/// for every x in S_11. Witnesses that right multiplication by S_12 is
/// faithful on S_11.
struct CornerWitness {
  AlgebraElement y;
  AlgebraElement u;
};

CornerWitness corner_witness(const PeirceFrame& frame);

/// The image of p1 under a Lie derivation splits as L(p1) = [p1, a] + z
/// with a = x12 - x21 and z = x11 + x22 central. `normalized` is
/// L + D_a, which maps p1 to z. Throws DecompositionError (stage
/// "normalizer-centrality") when x11 + x22 fails to be central, i.e. L
/// is not a Lie derivation.
struct Normalization {
  AlgebraElement a;
  AlgebraElement z;
  LinearOperator normalized;
};

Normalization normalize(const LinearOperator& L, const PeirceFrame& frame,
                        double tol = kDefaultTolerance);

/// Max off-corner leakage ||L1(e) - p_i L1(e) p_j|| over the coordinate
/// basis of S_12 and S_21, / (1 + ||L1||_F). Vanishes for Lie
/// derivations with L1(p1) central.
ResidualReport corner_preservation_residual(const LinearOperator& L1,
                                            const PeirceFrame& frame,
                                            double tol = kDefaultTolerance);

/// The unique splitting L1(x) = d + z with d in S_ii and z central, for
/// x in S_ii and L1(p1) central. z is recovered blockwise from the
/// compression to the complementary corner:
///   lambda_k = tr(block_k(p_j L1(x) p_j)) / tr(block_k(p_j)),  j != i;
/// the denominators are positive because p_j has full central support.
/// `corner_defect` is ||d - p_i d p_i||/(1 + ||L1(x)||), checked against
/// tol (stage "diagonal-split" on failure).
struct DiagonalSplit {
  AlgebraElement d;
  AlgebraElement z;
  double corner_defect = 0.0;
};

DiagonalSplit diagonal_corner_split(const LinearOperator& L1,
                                    const AlgebraElement& x, int i,
                                    const PeirceFrame& frame,
                                    double tol = kDefaultTolerance);

}  // namespace liederiv
