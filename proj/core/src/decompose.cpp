#include "liederiv/decompose.hpp"

#include <cmath>
#include <vector>

namespace liederiv {

namespace {

// Coordinate indices of the blocks with dimension >= 2, in order.
std::vector<int> noncommutative_coords(const StarAlgebra& algebra) {
  std::vector<int> idx;
  for (int k = 0; k < algebra.num_blocks(); ++k) {
    const int n = algebra.block_dim(k);
    if (n < 2) continue;
    for (int local = 0; local < n * n; ++local) {
      idx.push_back(algebra.block_offset(k) + local);
    }
  }
  return idx;
}

// Diagonal coordinate matrix of multiplication by a central element.
Eigen::MatrixXcd central_mult_matrix(const CentralElement& z) {
  const StarAlgebra& algebra = z.algebra();
  Eigen::VectorXcd diag(algebra.coord_dim());
  for (int k = 0; k < algebra.num_blocks(); ++k) {
    const int n = algebra.block_dim(k);
    diag.segment(algebra.block_offset(k), n * n).setConstant(z.coefficient(k));
  }
  return diag.asDiagonal();
}

}  // namespace

StarAlgebra noncommutative_part(const StarAlgebra& algebra) {
  std::vector<int> dims;
  for (int n : algebra.block_dims()) {
    if (n >= 2) dims.push_back(n);
  }
  if (dims.empty()) {
    throw CommutativeSummandError("algebra is fully commutative");
  }
  return StarAlgebra(std::move(dims));
}

LinearOperator restrict_to_noncommutative(const LinearOperator& L) {
  const StarAlgebra sub = noncommutative_part(L.algebra());
  const std::vector<int> idx = noncommutative_coords(L.algebra());
  return LinearOperator(sub, L.matrix()(idx, idx));
}

std::pair<LinearOperator, LinearOperator> decompose_normalized(
    const LinearOperator& L1, const PeirceFrame& frame, double tol) {
  const StarAlgebra& algebra = L1.algebra();
  const int n = algebra.coord_dim();
  Eigen::MatrixXcd d_matrix(n, n);
  for (int idx = 0; idx < n; ++idx) {
    const auto [k, i, j] = algebra.unit_position(idx);
    const AlgebraElement e = AlgebraElement::matrix_unit(algebra, k, i, j);
    const PeirceSplit s = peirce_split(e, frame);
    const DiagonalSplit d11 = diagonal_corner_split(L1, s.x11, 1, frame, tol);
    const DiagonalSplit d22 = diagonal_corner_split(L1, s.x22, 2, frame, tol);
    const AlgebraElement off = L1.apply(s.x12 + s.x21);
    d_matrix.col(idx) = (d11.d + d22.d + off).coords();
  }
  LinearOperator D1(algebra, std::move(d_matrix));
  LinearOperator E1(algebra, L1.matrix() - D1.matrix());
  const ResidualReport leibniz = leibniz_residual(D1, tol);
  if (!leibniz.passed) {
    throw DecompositionError("derivation-residual", leibniz.witness_a,
                             leibniz.witness_b, leibniz.max_residual,
                             "assembled derivation violates the Leibniz rule");
  }
  const ResidualReport trace = trace_residual(E1, tol);
  if (!trace.passed) {
    throw DecompositionError("trace-residual", trace.witness_a,
                             trace.witness_b, trace.max_residual,
                             "assembled remainder is not a central trace");
  }
  return {std::move(D1), std::move(E1)};
}

CrossTraces cross_traces(const LinearOperator& L, const CentralElement& z0,
                         const CentralElement& z1) {
  const Eigen::MatrixXcd m0 = central_mult_matrix(z0);
  const Eigen::MatrixXcd m1 = central_mult_matrix(z1);
  const StarAlgebra& algebra = L.algebra();
  return {LinearOperator(algebra, m0 * L.matrix() * m1),
          LinearOperator(algebra, m1 * L.matrix() * m0),
          LinearOperator(algebra, m0 * L.matrix() * m0)};
}

namespace {

StandardForm standard_form_impl(const LinearOperator& L,
                                const PeirceFrame* frame_override,
                                double tol) {
  const StarAlgebra& algebra = L.algebra();
  const ResidualReport lie = lie_residual(L, tol);
  if (!lie.passed) {
    throw DecompositionError("lie", lie.witness_a, lie.witness_b,
                             lie.max_residual,
                             "operator is not a Lie derivation");
  }

  const auto [z0, z1] = split_commutative(algebra);
  const bool commutative = z1.coefficients().isZero(0.0);
  if (commutative && frame_override) {
    throw ShapeError("commutative algebras admit no Peirce frame");
  }

  StandardForm form{LinearOperator::zero(algebra), L,
                    AlgebraElement::zero(algebra), std::nullopt,
                    DecompositionDiagnostics{}};
  if (!commutative) {
    const StarAlgebra sub = noncommutative_part(algebra);
    const std::vector<int> idx = noncommutative_coords(algebra);
    const LinearOperator L1 = restrict_to_noncommutative(L);

    const PeirceFrame frame = frame_override
                                  ? *frame_override
                                  : PeirceFrame::halving(sub);
    if (!(frame.algebra() == sub)) {
      throw ShapeError(
          "frame must live on the noncommutative part of the algebra");
    }
    const Normalization norm_step = normalize(L1, frame, tol);
    auto [d1, e1] = decompose_normalized(norm_step.normalized, frame, tol);

    // Undo the normalizer and extend by zero over the commutative part.
    const Eigen::MatrixXcd d_sub =
        d1.matrix() - inner_derivation(norm_step.a).matrix();
    const int n = algebra.coord_dim();
    Eigen::MatrixXcd d_full = Eigen::MatrixXcd::Zero(n, n);
    Eigen::MatrixXcd e_full = Eigen::MatrixXcd::Zero(n, n);
    d_full(idx, idx) = d_sub;
    e_full(idx, idx) = e1.matrix();

    const CrossTraces f = cross_traces(L, z0, z1);
    e_full += f.F1.matrix() + f.F2.matrix() + f.F3.matrix();

    Eigen::VectorXcd normalizer_coords =
        Eigen::VectorXcd::Zero(algebra.coord_dim());
    normalizer_coords(idx) = norm_step.a.coords();

    form.D = LinearOperator(algebra, std::move(d_full));
    form.E = LinearOperator(algebra, std::move(e_full));
    form.normalizer =
        AlgebraElement::from_coords(algebra, normalizer_coords);
    form.frame = frame;
  }

  form.residuals.lie = lie.max_residual;
  const ResidualReport leibniz = leibniz_residual(form.D, tol);
  form.residuals.leibniz = leibniz.max_residual;
  const ResidualReport trace = trace_residual(form.E, tol);
  form.residuals.trace = trace.max_residual;
  form.residuals.reconstruction =
      (L.matrix() - form.D.matrix() - form.E.matrix()).norm() /
      (1.0 + L.frobenius_norm());
  if (!leibniz.passed) {
    throw DecompositionError("derivation-residual", leibniz.witness_a,
                             leibniz.witness_b, leibniz.max_residual,
                             "assembled derivation violates the Leibniz rule");
  }
  if (!trace.passed) {
    throw DecompositionError("trace-residual", trace.witness_a,
                             trace.witness_b, trace.max_residual,
                             "assembled remainder is not a central trace");
  }
  if (form.residuals.reconstruction > tol) {
    throw DecompositionError("reconstruction", -1, -1,
                             form.residuals.reconstruction,
                             "D + E does not reconstruct L");
  }
  return form;
}

}  // namespace

StandardForm standard_form(const LinearOperator& L, double tol) {
  return standard_form_impl(L, nullptr, tol);
}

StandardForm standard_form(const LinearOperator& L, const PeirceFrame& frame,
                           double tol) {
  return standard_form_impl(L, &frame, tol);
}

TypeOneForm type_one_form(const LinearOperator& L, double tol) {
  StandardForm form = standard_form(L, tol);
  AlgebraElement a = solve_inner(form.D);
  double delta_norm = 0.0;
  for (const auto& z : center_basis(L.algebra())) {
    delta_norm = std::max(delta_norm, norm(form.D.apply(z.embed())));
  }
  return {std::move(a), std::move(form.E), delta_norm};
}

LinearOperator lift_center_derivation(const StarAlgebra& algebra,
                                      const Eigen::MatrixXcd& delta) {
  const int m = algebra.num_blocks();
  if (delta.rows() != m || delta.cols() != m) {
    throw ShapeError("delta must be m x m on the center coordinates");
  }
  const int n = algebra.coord_dim();
  Eigen::MatrixXcd lift = Eigen::MatrixXcd::Zero(n, n);
  for (int k = 0; k < m; ++k) {
    for (int l = 0; l < m; ++l) {
      if (delta(k, l) == 0.0) continue;
      if (algebra.block_dim(k) != algebra.block_dim(l)) {
        throw ShapeError(
            "delta couples blocks of different dimension; the entrywise "
            "lift needs a homogeneous summand");
      }
      const int sz = algebra.block_dim(k) * algebra.block_dim(k);
      lift.block(algebra.block_offset(k), algebra.block_offset(l), sz, sz) +=
          delta(k, l) * Eigen::MatrixXcd::Identity(sz, sz);
    }
  }
  return LinearOperator(algebra, std::move(lift));
}

}  // namespace liederiv
