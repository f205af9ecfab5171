#include "liederiv/linmap.hpp"

#include <cmath>

namespace liederiv {

LinearOperator::LinearOperator(StarAlgebra algebra, Eigen::MatrixXcd matrix)
    : algebra_(std::move(algebra)), matrix_(std::move(matrix)) {
  if (matrix_.rows() != algebra_.coord_dim() ||
      matrix_.cols() != algebra_.coord_dim()) {
    throw ShapeError("operator matrix must be coord_dim x coord_dim");
  }
}

LinearOperator LinearOperator::zero(const StarAlgebra& algebra) {
  const int n = algebra.coord_dim();
  return LinearOperator(algebra, Eigen::MatrixXcd::Zero(n, n));
}

LinearOperator LinearOperator::identity_map(const StarAlgebra& algebra) {
  const int n = algebra.coord_dim();
  return LinearOperator(algebra, Eigen::MatrixXcd::Identity(n, n));
}

AlgebraElement LinearOperator::apply(const AlgebraElement& x) const {
  if (!(x.algebra() == algebra_)) {
    throw ShapeError("operator and element algebras differ");
  }
  return AlgebraElement::from_coords(algebra_, matrix_ * x.coords());
}

AlgebraElement apply(const LinearOperator& op, const AlgebraElement& x) {
  return op.apply(x);
}

LinearOperator operator+(const LinearOperator& a, const LinearOperator& b) {
  if (!(a.algebra() == b.algebra())) {
    throw ShapeError("operator algebras differ");
  }
  return LinearOperator(a.algebra(), a.matrix() + b.matrix());
}

LinearOperator operator-(const LinearOperator& a, const LinearOperator& b) {
  if (!(a.algebra() == b.algebra())) {
    throw ShapeError("operator algebras differ");
  }
  return LinearOperator(a.algebra(), a.matrix() - b.matrix());
}

LinearOperator operator*(Complex c, const LinearOperator& a) {
  return LinearOperator(a.algebra(), c * a.matrix());
}

LinearOperator compose(const LinearOperator& a, const LinearOperator& b) {
  if (!(a.algebra() == b.algebra())) {
    throw ShapeError("operator algebras differ");
  }
  return LinearOperator(a.algebra(), a.matrix() * b.matrix());
}

namespace {

// Column beta of the result is coords(action(e_beta)).
template <typename Action>
LinearOperator operator_from_action(const StarAlgebra& algebra,
                                    Action&& action) {
  const int n = algebra.coord_dim();
  Eigen::MatrixXcd m(n, n);
  for (int beta = 0; beta < n; ++beta) {
    const auto [k, i, j] = algebra.unit_position(beta);
    m.col(beta) =
        action(AlgebraElement::matrix_unit(algebra, k, i, j)).coords();
  }
  return LinearOperator(algebra, std::move(m));
}

}  // namespace

LinearOperator left_multiplication(const AlgebraElement& y) {
  return operator_from_action(y.algebra(),
                              [&](const AlgebraElement& e) { return mul(y, e); });
}

LinearOperator right_multiplication(const AlgebraElement& y) {
  return operator_from_action(y.algebra(),
                              [&](const AlgebraElement& e) { return mul(e, y); });
}

LinearOperator inner_derivation(const AlgebraElement& a) {
  return left_multiplication(a) - right_multiplication(a);
}

LinearOperator trace_from_weights(const std::vector<CentralElement>& weights) {
  if (weights.empty()) {
    throw ShapeError("trace_from_weights needs at least one weight");
  }
  const StarAlgebra& algebra = weights.front().algebra();
  if (static_cast<int>(weights.size()) != algebra.num_blocks()) {
    throw ShapeError("trace_from_weights needs one weight per block");
  }
  for (const auto& w : weights) {
    if (!(w.algebra() == algebra)) {
      throw ShapeError("trace weights belong to different algebras");
    }
  }
  const int n = algebra.coord_dim();
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
  // Only diagonal units e_{ii} of block k have tr_k = 1; their image is w_k.
  for (int k = 0; k < algebra.num_blocks(); ++k) {
    const Eigen::VectorXcd w = weights[k].embed().coords();
    for (int i = 0; i < algebra.block_dim(k); ++i) {
      m.col(algebra.unit_index(k, i, i)) = w;
    }
  }
  return LinearOperator(algebra, std::move(m));
}

namespace {

struct PairDefect {
  double max_defect = 0.0;
  int witness_a = -1;
  int witness_b = -1;

  void update(double defect, int a, int b) {
    if (defect > max_defect) {
      max_defect = defect;
      witness_a = a;
      witness_b = b;
    }
  }
};

std::vector<AlgebraElement> coordinate_basis(const StarAlgebra& algebra) {
  std::vector<AlgebraElement> basis;
  basis.reserve(algebra.coord_dim());
  for (int idx = 0; idx < algebra.coord_dim(); ++idx) {
    const auto [k, i, j] = algebra.unit_position(idx);
    basis.push_back(AlgebraElement::matrix_unit(algebra, k, i, j));
  }
  return basis;
}

ResidualReport finish(const PairDefect& d, double scale, double tol) {
  ResidualReport r;
  r.max_residual = d.max_defect / scale;
  r.witness_a = d.witness_a;
  r.witness_b = d.witness_b;
  r.tolerance = tol;
  r.passed = r.max_residual <= tol;
  return r;
}

}  // namespace

ResidualReport lie_residual(const LinearOperator& L, double tol) {
  const StarAlgebra& algebra = L.algebra();
  const auto basis = coordinate_basis(algebra);
  std::vector<AlgebraElement> images;
  images.reserve(basis.size());
  for (const auto& e : basis) {
    images.push_back(L.apply(e));
  }
  PairDefect d;
  // The identity is antisymmetric in (x, y); pairs a < b cover everything.
  for (size_t a = 0; a < basis.size(); ++a) {
    for (size_t b = a + 1; b < basis.size(); ++b) {
      const AlgebraElement defect =
          L.apply(commutator(basis[a], basis[b])) -
          commutator(images[a], basis[b]) - commutator(basis[a], images[b]);
      d.update(norm(defect), static_cast<int>(a), static_cast<int>(b));
    }
  }
  return finish(d, 1.0 + L.frobenius_norm(), tol);
}

ResidualReport leibniz_residual(const LinearOperator& D, double tol) {
  const StarAlgebra& algebra = D.algebra();
  const auto basis = coordinate_basis(algebra);
  std::vector<AlgebraElement> images;
  images.reserve(basis.size());
  for (const auto& e : basis) {
    images.push_back(D.apply(e));
  }
  PairDefect d;
  for (size_t a = 0; a < basis.size(); ++a) {
    for (size_t b = 0; b < basis.size(); ++b) {
      const AlgebraElement defect = D.apply(mul(basis[a], basis[b])) -
                                    mul(images[a], basis[b]) -
                                    mul(basis[a], images[b]);
      d.update(norm(defect), static_cast<int>(a), static_cast<int>(b));
    }
  }
  return finish(d, 1.0 + D.frobenius_norm(), tol);
}

double central_defect(const AlgebraElement& x) {
  double sq = 0.0;
  for (int k = 0; k < x.algebra().num_blocks(); ++k) {
    const auto& b = x.block(k);
    const int n = static_cast<int>(b.rows());
    const Complex mean = b.trace() / static_cast<double>(n);
    sq += (b - mean * Eigen::MatrixXcd::Identity(n, n)).squaredNorm();
  }
  return std::sqrt(sq);
}

ResidualReport trace_residual(const LinearOperator& E, double tol) {
  const StarAlgebra& algebra = E.algebra();
  const auto basis = coordinate_basis(algebra);
  std::vector<AlgebraElement> images;
  images.reserve(basis.size());
  for (const auto& e : basis) {
    images.push_back(E.apply(e));
  }
  PairDefect d;
  for (size_t a = 0; a < basis.size(); ++a) {
    d.update(central_defect(images[a]), static_cast<int>(a),
             static_cast<int>(a));
    for (size_t b = a + 1; b < basis.size(); ++b) {
      const AlgebraElement defect = E.apply(mul(basis[a], basis[b])) -
                                    E.apply(mul(basis[b], basis[a]));
      d.update(norm(defect), static_cast<int>(a), static_cast<int>(b));
    }
  }
  return finish(d, 1.0 + E.frobenius_norm(), tol);
}

Eigen::MatrixXcd lie_constraint_matrix(const StarAlgebra& algebra) {
  const int n = algebra.coord_dim();
  const auto basis = coordinate_basis(algebra);
  // ad(e_a) as coordinate matrices, reused across pairs.
  std::vector<Eigen::MatrixXcd> ad;
  ad.reserve(n);
  for (const auto& e : basis) {
    ad.push_back(inner_derivation(e).matrix());
  }
  const int pairs = n * (n - 1) / 2;
  Eigen::MatrixXcd constraints = Eigen::MatrixXcd::Zero(pairs * n, n * n);
  int row = 0;
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      // L(c_ab) - [L(e_a), e_b] - [e_a, L(e_b)] = 0 with c_ab = [e_a, e_b],
      // written on vec(L) taken column-major: column group j of vec(L)
      // receives coords(c_ab)[j] * I, minus [., e_b] at j = a and minus
      // [e_a, .] at j = b.
      const Eigen::VectorXcd c = commutator(basis[a], basis[b]).coords();
      for (int j = 0; j < n; ++j) {
        if (c[j] != 0.0) {
          constraints.block(row, j * n, n, n) +=
              c[j] * Eigen::MatrixXcd::Identity(n, n);
        }
      }
      // [x, e_b] = -[e_b, x].
      constraints.block(row, a * n, n, n) += ad[b];
      constraints.block(row, b * n, n, n) -= ad[a];
      row += n;
    }
  }
  return constraints;
}

std::vector<LinearOperator> lie_derivation_space(const StarAlgebra& algebra) {
  const int n = algebra.coord_dim();
  const Eigen::MatrixXcd constraints = lie_constraint_matrix(algebra);
  std::vector<LinearOperator> space;
  if (constraints.rows() == 0) {
    // One block of size one: no constraints, every map qualifies.
    for (int j = 0; j < n * n; ++j) {
      Eigen::VectorXcd v = Eigen::VectorXcd::Zero(n * n);
      v[j] = 1.0;
      space.emplace_back(algebra,
                         Eigen::Map<const Eigen::MatrixXcd>(v.data(), n, n));
    }
    return space;
  }
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(constraints, Eigen::ComputeFullV);
  const auto& sigma = svd.singularValues();
  const double cutoff =
      sigma.size() > 0 ? kNullspaceThreshold * sigma[0] : 0.0;
  int rank = 0;
  for (int i = 0; i < sigma.size(); ++i) {
    if (sigma[i] > cutoff) ++rank;
  }
  const int dim = n * n - rank;
  space.reserve(dim);
  for (int c = 0; c < dim; ++c) {
    const Eigen::VectorXcd v = svd.matrixV().col(rank + c);
    space.emplace_back(algebra,
                       Eigen::Map<const Eigen::MatrixXcd>(v.data(), n, n));
  }
  return space;
}

int qr_rank(const Eigen::MatrixXcd& m, double threshold) {
  if (m.size() == 0) return 0;
  Eigen::ColPivHouseholderQR<Eigen::MatrixXcd> qr(m);
  qr.setThreshold(threshold);
  return static_cast<int>(qr.rank());
}

Eigen::MatrixXcd inner_parametrization_matrix(const StarAlgebra& algebra) {
  const int n = algebra.coord_dim();
  Eigen::MatrixXcd m(n * n, n);
  for (int beta = 0; beta < n; ++beta) {
    const auto [k, i, j] = algebra.unit_position(beta);
    const auto d =
        inner_derivation(AlgebraElement::matrix_unit(algebra, k, i, j));
    m.col(beta) = Eigen::Map<const Eigen::VectorXcd>(d.matrix().data(), n * n);
  }
  return m;
}

Eigen::MatrixXcd trace_parametrization_matrix(const StarAlgebra& algebra) {
  const int n = algebra.coord_dim();
  const int blocks = algebra.num_blocks();
  Eigen::MatrixXcd m(n * n, blocks * blocks);
  std::vector<CentralElement> weights;
  for (int k = 0; k < blocks; ++k) {
    for (int l = 0; l < blocks; ++l) {
      weights.clear();
      for (int b = 0; b < blocks; ++b) {
        Eigen::VectorXcd c = Eigen::VectorXcd::Zero(blocks);
        if (b == k) c[l] = 1.0;
        weights.emplace_back(algebra, std::move(c));
      }
      const auto e = trace_from_weights(weights);
      m.col(k * blocks + l) =
          Eigen::Map<const Eigen::VectorXcd>(e.matrix().data(), n * n);
    }
  }
  return m;
}

AlgebraElement traceless_part(const AlgebraElement& a) {
  std::vector<Eigen::MatrixXcd> blocks;
  blocks.reserve(a.blocks().size());
  for (const auto& b : a.blocks()) {
    const int n = static_cast<int>(b.rows());
    blocks.push_back(b - (b.trace() / static_cast<double>(n)) *
                             Eigen::MatrixXcd::Identity(n, n));
  }
  return AlgebraElement::from_blocks(a.algebra(), std::move(blocks));
}

AlgebraElement solve_inner(const LinearOperator& D, double tol) {
  const StarAlgebra& algebra = D.algebra();
  const int n = algebra.coord_dim();
  const auto basis = coordinate_basis(algebra);
  // Rows for basis unit beta: [a, e_beta] = D(e_beta), i.e. -ad(e_beta)
  // applied to coords(a).
  Eigen::MatrixXcd system(n * n, n);
  Eigen::VectorXcd rhs(n * n);
  for (int beta = 0; beta < n; ++beta) {
    system.block(beta * n, 0, n, n) = -inner_derivation(basis[beta]).matrix();
    rhs.segment(beta * n, n) = D.matrix().col(beta);
  }
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(system,
                                      Eigen::ComputeThinU | Eigen::ComputeThinV);
  const AlgebraElement a = traceless_part(
      AlgebraElement::from_coords(algebra, svd.solve(rhs)));
  const double miss =
      (inner_derivation(a) - D).frobenius_norm() / (1.0 + D.frobenius_norm());
  if (miss > tol) {
    throw NotInnerError("no inner witness within tolerance (residual " +
                        std::to_string(miss) + ")");
  }
  return a;
}

ResidualReport projection_bracket_residual(const LinearOperator& L,
                                           const AlgebraElement& p,
                                           const AlgebraElement& x,
                                           double tol) {
  const AlgebraElement lp = L.apply(p);
  const AlgebraElement plp = mul(p, lp);
  const AlgebraElement lpp = mul(lp, p);
  const AlgebraElement t = plp + lpp + mul(plp, p) - lp;
  const AlgebraElement s = plp + lpp - lp;
  const AlgebraElement lhs = mul(x, t) - mul(t, x);
  const AlgebraElement rhs =
      scale(3.0, mul(p, mul(x, s))) - scale(3.0, mul(s, mul(x, p)));
  ResidualReport r;
  r.max_residual =
      norm(lhs - rhs) / ((1.0 + L.frobenius_norm()) * (1.0 + norm(x)));
  r.tolerance = tol;
  r.passed = r.max_residual <= tol;
  return r;
}

}  // namespace liederiv
