#include "liederiv/peirce.hpp"

#include <cmath>

namespace liederiv {

PeirceFrame PeirceFrame::halving(const StarAlgebra& algebra) {
  const AlgebraElement p = halving_projection(algebra);
  return from_projection(p);
}

PeirceFrame PeirceFrame::from_projection(const AlgebraElement& p, double tol) {
  if (!p.is_projection(tol)) {
    throw PreconditionError("frame projection fails p^2 = p = p*");
  }
  const StarAlgebra& algebra = p.algebra();
  const AlgebraElement q = AlgebraElement::identity(algebra) - p;
  const std::vector<int> ranks = projection_ranks(p);
  for (int k = 0; k < algebra.num_blocks(); ++k) {
    const int n = algebra.block_dim(k);
    if (ranks[k] < 1 || n - ranks[k] < 1) {
      throw PreconditionError(
          "frame projection must have full central support on both sides "
          "(block " +
          std::to_string(k) + " has rank " + std::to_string(ranks[k]) + ")");
    }
    if (ranks[k] > n - ranks[k]) {
      throw PreconditionError("frame projection must satisfy rank(p) <= "
                              "rank(1-p) in every block");
    }
  }
  return PeirceFrame(p, q, ranks);
}

PeirceSplit peirce_split(const AlgebraElement& x, const PeirceFrame& frame) {
  if (!(x.algebra() == frame.algebra())) {
    throw ShapeError("element and frame algebras differ");
  }
  const AlgebraElement& p1 = frame.p1();
  const AlgebraElement& p2 = frame.p2();
  return {mul(p1, mul(x, p1)), mul(p1, mul(x, p2)), mul(p2, mul(x, p1)),
          mul(p2, mul(x, p2))};
}

bool in_corner(const AlgebraElement& x, const PeirceFrame& frame, int i,
               int j, double tol) {
  const AlgebraElement compressed = mul(frame.p(i), mul(x, frame.p(j)));
  return norm(x - compressed) <= tol * (1.0 + norm(x));
}

CornerWitness corner_witness(const PeirceFrame& frame) {
  // q1: leading sub-projection of p2 with the ranks of p1; guaranteed to
  // exist by the frame invariant rank(p1) <= rank(p2).
  const AlgebraElement q1 = leading_subprojection(frame.p2(), frame.ranks(), 1e-8);
  const AlgebraElement u = partial_isometry_between(frame.p1(), q1, 1e-8);
  const AlgebraElement y =
      mul(frame.p1(), mul(adjoint(u), mul(q1, frame.p2())));
  return {y, u};
}

Normalization normalize(const LinearOperator& L, const PeirceFrame& frame,
                        double tol) {
  const PeirceSplit s = peirce_split(L.apply(frame.p1()), frame);
  const AlgebraElement z = s.x11 + s.x22;
  const double defect = central_defect(z) / (1.0 + L.frobenius_norm());
  if (defect > tol) {
    throw DecompositionError(
        "normalizer-centrality", -1, -1, defect,
        "diagonal corners of L(p) are not central; not a Lie derivation");
  }
  const AlgebraElement a = s.x12 - s.x21;
  return {a, z, L + inner_derivation(a)};
}

ResidualReport corner_preservation_residual(const LinearOperator& L1,
                                            const PeirceFrame& frame,
                                            double tol) {
  const StarAlgebra& algebra = frame.algebra();
  double worst = 0.0;
  int witness = -1;
  for (int idx = 0; idx < algebra.coord_dim(); ++idx) {
    const auto [k, i, j] = algebra.unit_position(idx);
    const AlgebraElement e = AlgebraElement::matrix_unit(algebra, k, i, j);
    const PeirceSplit se = peirce_split(e, frame);
    for (const int corner : {12, 21}) {
      const int ci = corner / 10;
      const int cj = corner % 10;
      const AlgebraElement x = se.corner(ci, cj);
      if (norm(x) <= tol) continue;
      const AlgebraElement image = L1.apply(x);
      const double leak =
          norm(image - mul(frame.p(ci), mul(image, frame.p(cj))));
      if (leak > worst) {
        worst = leak;
        witness = idx;
      }
    }
  }
  ResidualReport r;
  r.max_residual = worst / (1.0 + L1.frobenius_norm());
  r.witness_a = witness;
  r.witness_b = witness;
  r.tolerance = tol;
  r.passed = r.max_residual <= tol;
  return r;
}

DiagonalSplit diagonal_corner_split(const LinearOperator& L1,
                                    const AlgebraElement& x, int i,
                                    const PeirceFrame& frame, double tol) {
  if (i != 1 && i != 2) {
    throw PreconditionError("corner index must be 1 or 2");
  }
  if (!in_corner(x, frame, i, i, tol)) {
    throw PreconditionError("element is not in the requested diagonal corner");
  }
  const StarAlgebra& algebra = frame.algebra();
  const AlgebraElement image = L1.apply(x);
  const AlgebraElement& pj = frame.p(i == 1 ? 2 : 1);
  const AlgebraElement compressed = mul(pj, mul(image, pj));
  Eigen::VectorXcd lambda(algebra.num_blocks());
  for (int k = 0; k < algebra.num_blocks(); ++k) {
    lambda[k] = compressed.block(k).trace() / pj.block(k).trace();
  }
  const AlgebraElement z = CentralElement(algebra, std::move(lambda)).embed();
  const AlgebraElement d = image - z;
  const double defect = norm(d - mul(frame.p(i), mul(d, frame.p(i)))) /
                        (1.0 + norm(image));
  if (defect > tol) {
    throw DecompositionError(
        "diagonal-split", -1, -1, defect,
        "image of a diagonal corner does not split as S_ii + center");
  }
  return {d, z, defect};
}

}  // namespace liederiv
