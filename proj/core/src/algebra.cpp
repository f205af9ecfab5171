#include "liederiv/algebra.hpp"

#include <cmath>

namespace liederiv {

namespace {

void require_same_algebra(const AlgebraElement& x, const AlgebraElement& y) {
  if (!(x.algebra() == y.algebra())) {
    throw ShapeError("elements belong to different algebras");
  }
}

}  // namespace

StarAlgebra::StarAlgebra(std::vector<int> block_dims)
    : block_dims_(std::move(block_dims)) {
  if (block_dims_.empty()) {
    throw InvalidSpecError("algebra needs at least one block");
  }
  offsets_.reserve(block_dims_.size());
  for (int n : block_dims_) {
    if (n < 1) {
      throw InvalidSpecError("block dimensions must be positive");
    }
    offsets_.push_back(coord_dim_);
    coord_dim_ += n * n;
  }
}

std::tuple<int, int, int> StarAlgebra::unit_position(int index) const {
  for (int k = 0; k < num_blocks(); ++k) {
    const int n = block_dims_[k];
    if (index < offsets_[k] + n * n) {
      const int local = index - offsets_[k];
      return {k, local / n, local % n};
    }
  }
  throw ShapeError("coordinate index out of range");
}

StarAlgebra make_algebra(std::vector<int> block_dims) {
  return StarAlgebra(std::move(block_dims));
}

AlgebraElement AlgebraElement::zero(const StarAlgebra& algebra) {
  std::vector<Eigen::MatrixXcd> blocks;
  blocks.reserve(algebra.num_blocks());
  for (int k = 0; k < algebra.num_blocks(); ++k) {
    blocks.push_back(
        Eigen::MatrixXcd::Zero(algebra.block_dim(k), algebra.block_dim(k)));
  }
  return from_blocks(algebra, std::move(blocks));
}

AlgebraElement AlgebraElement::identity(const StarAlgebra& algebra) {
  std::vector<Eigen::MatrixXcd> blocks;
  blocks.reserve(algebra.num_blocks());
  for (int k = 0; k < algebra.num_blocks(); ++k) {
    blocks.push_back(
        Eigen::MatrixXcd::Identity(algebra.block_dim(k), algebra.block_dim(k)));
  }
  return from_blocks(algebra, std::move(blocks));
}

AlgebraElement AlgebraElement::matrix_unit(const StarAlgebra& algebra,
                                           int block, int i, int j) {
  AlgebraElement e = zero(algebra);
  e.blocks_[block](i, j) = 1.0;
  return e;
}

AlgebraElement AlgebraElement::from_blocks(StarAlgebra algebra,
                                           std::vector<Eigen::MatrixXcd> blocks) {
  if (static_cast<int>(blocks.size()) != algebra.num_blocks()) {
    throw ShapeError("block count does not match algebra");
  }
  for (int k = 0; k < algebra.num_blocks(); ++k) {
    const int n = algebra.block_dim(k);
    if (blocks[k].rows() != n || blocks[k].cols() != n) {
      throw ShapeError("block shape does not match algebra");
    }
  }
  AlgebraElement x;
  x.algebra_ = std::move(algebra);
  x.blocks_ = std::move(blocks);
  return x;
}

AlgebraElement AlgebraElement::from_coords(const StarAlgebra& algebra,
                                           const Eigen::VectorXcd& coords) {
  if (coords.size() != algebra.coord_dim()) {
    throw ShapeError("coordinate vector has wrong length");
  }
  std::vector<Eigen::MatrixXcd> blocks;
  blocks.reserve(algebra.num_blocks());
  for (int k = 0; k < algebra.num_blocks(); ++k) {
    const int n = algebra.block_dim(k);
    Eigen::MatrixXcd b(n, n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        b(i, j) = coords[algebra.unit_index(k, i, j)];
      }
    }
    blocks.push_back(std::move(b));
  }
  return from_blocks(algebra, std::move(blocks));
}

Eigen::VectorXcd AlgebraElement::coords() const {
  Eigen::VectorXcd v(algebra_.coord_dim());
  for (int k = 0; k < algebra_.num_blocks(); ++k) {
    const int n = algebra_.block_dim(k);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        v[algebra_.unit_index(k, i, j)] = blocks_[k](i, j);
      }
    }
  }
  return v;
}

bool AlgebraElement::is_projection(double tol) const {
  const double scale = 1.0 + norm(*this);
  return norm(mul(*this, *this) - *this) <= tol * scale &&
         norm(adjoint(*this) - *this) <= tol * scale;
}

AlgebraElement mul(const AlgebraElement& x, const AlgebraElement& y) {
  require_same_algebra(x, y);
  std::vector<Eigen::MatrixXcd> blocks;
  blocks.reserve(x.blocks().size());
  for (size_t k = 0; k < x.blocks().size(); ++k) {
    blocks.push_back(x.block(static_cast<int>(k)) * y.block(static_cast<int>(k)));
  }
  return AlgebraElement::from_blocks(x.algebra(), std::move(blocks));
}

AlgebraElement add(const AlgebraElement& x, const AlgebraElement& y) {
  require_same_algebra(x, y);
  std::vector<Eigen::MatrixXcd> blocks;
  blocks.reserve(x.blocks().size());
  for (size_t k = 0; k < x.blocks().size(); ++k) {
    blocks.push_back(x.block(static_cast<int>(k)) + y.block(static_cast<int>(k)));
  }
  return AlgebraElement::from_blocks(x.algebra(), std::move(blocks));
}

AlgebraElement sub(const AlgebraElement& x, const AlgebraElement& y) {
  require_same_algebra(x, y);
  std::vector<Eigen::MatrixXcd> blocks;
  blocks.reserve(x.blocks().size());
  for (size_t k = 0; k < x.blocks().size(); ++k) {
    blocks.push_back(x.block(static_cast<int>(k)) - y.block(static_cast<int>(k)));
  }
  return AlgebraElement::from_blocks(x.algebra(), std::move(blocks));
}

AlgebraElement scale(Complex c, const AlgebraElement& x) {
  std::vector<Eigen::MatrixXcd> blocks;
  blocks.reserve(x.blocks().size());
  for (const auto& b : x.blocks()) {
    blocks.push_back(c * b);
  }
  return AlgebraElement::from_blocks(x.algebra(), std::move(blocks));
}

AlgebraElement adjoint(const AlgebraElement& x) {
  std::vector<Eigen::MatrixXcd> blocks;
  blocks.reserve(x.blocks().size());
  for (const auto& b : x.blocks()) {
    blocks.push_back(b.adjoint());
  }
  return AlgebraElement::from_blocks(x.algebra(), std::move(blocks));
}

AlgebraElement commutator(const AlgebraElement& x, const AlgebraElement& y) {
  return sub(mul(x, y), mul(y, x));
}

double norm(const AlgebraElement& x) {
  double sq = 0.0;
  for (const auto& b : x.blocks()) {
    sq += b.squaredNorm();
  }
  return std::sqrt(sq);
}

CentralElement::CentralElement(StarAlgebra algebra,
                               Eigen::VectorXcd coefficients)
    : algebra_(std::move(algebra)), coefficients_(std::move(coefficients)) {
  if (coefficients_.size() != algebra_.num_blocks()) {
    throw ShapeError("central element needs one coefficient per block");
  }
}

CentralElement CentralElement::zero(const StarAlgebra& algebra) {
  return CentralElement(algebra,
                        Eigen::VectorXcd::Zero(algebra.num_blocks()));
}

AlgebraElement CentralElement::embed() const {
  std::vector<Eigen::MatrixXcd> blocks;
  blocks.reserve(algebra_.num_blocks());
  for (int k = 0; k < algebra_.num_blocks(); ++k) {
    const int n = algebra_.block_dim(k);
    blocks.push_back(coefficients_[k] *
                     Eigen::MatrixXcd::Identity(n, n));
  }
  return AlgebraElement::from_blocks(algebra_, std::move(blocks));
}

std::vector<CentralElement> center_basis(const StarAlgebra& algebra) {
  std::vector<CentralElement> basis;
  basis.reserve(algebra.num_blocks());
  for (int k = 0; k < algebra.num_blocks(); ++k) {
    Eigen::VectorXcd c = Eigen::VectorXcd::Zero(algebra.num_blocks());
    c[k] = 1.0;
    basis.emplace_back(algebra, std::move(c));
  }
  return basis;
}

CentralElement central_support(const AlgebraElement& p, double tol) {
  if (!p.is_projection(tol)) {
    throw PreconditionError("central_support requires a projection");
  }
  const StarAlgebra& algebra = p.algebra();
  Eigen::VectorXcd c = Eigen::VectorXcd::Zero(algebra.num_blocks());
  for (int k = 0; k < algebra.num_blocks(); ++k) {
    // A nonzero projection block has norm >= 1; tol separates it from 0.
    if (p.block(k).norm() > tol) {
      c[k] = 1.0;
    }
  }
  return CentralElement(algebra, std::move(c));
}

AlgebraElement halving_projection(const StarAlgebra& algebra) {
  std::vector<Eigen::MatrixXcd> blocks;
  blocks.reserve(algebra.num_blocks());
  for (int k = 0; k < algebra.num_blocks(); ++k) {
    const int n = algebra.block_dim(k);
    if (n < 2) {
      throw CommutativeSummandError(
          "halving projection needs every block dimension >= 2; "
          "split off the commutative summand first");
    }
    Eigen::MatrixXcd b = Eigen::MatrixXcd::Zero(n, n);
    for (int i = 0; i < n / 2; ++i) {
      b(i, i) = 1.0;
    }
    blocks.push_back(std::move(b));
  }
  return AlgebraElement::from_blocks(algebra, std::move(blocks));
}

namespace {

// Orthonormal basis of the range of a projection block. Diagonal 0/1
// blocks yield exact standard basis vectors in diagonal order.
Eigen::MatrixXcd range_basis(const Eigen::MatrixXcd& block, double tol) {
  const int n = static_cast<int>(block.rows());
  bool diagonal = true;
  for (int i = 0; i < n && diagonal; ++i) {
    for (int j = 0; j < n && diagonal; ++j) {
      const Complex v = block(i, j);
      if (i == j) {
        if (std::abs(v) > tol && std::abs(v - 1.0) > tol) diagonal = false;
      } else if (std::abs(v) > tol) {
        diagonal = false;
      }
    }
  }
  if (diagonal) {
    int rank = 0;
    for (int i = 0; i < n; ++i) {
      if (std::abs(block(i, i) - 1.0) <= tol) ++rank;
    }
    Eigen::MatrixXcd basis = Eigen::MatrixXcd::Zero(n, rank);
    int c = 0;
    for (int i = 0; i < n; ++i) {
      if (std::abs(block(i, i) - 1.0) <= tol) basis(i, c++) = 1.0;
    }
    return basis;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(block);
  int rank = 0;
  for (int i = 0; i < n; ++i) {
    if (es.eigenvalues()[i] > 0.5) ++rank;
  }
  // Eigenvalues are sorted ascending; the range vectors are the last ones.
  return es.eigenvectors().rightCols(rank);
}

}  // namespace

AlgebraElement partial_isometry_between(const AlgebraElement& p,
                                        const AlgebraElement& q, double tol) {
  require_same_algebra(p, q);
  if (!p.is_projection(tol) || !q.is_projection(tol)) {
    throw PreconditionError("partial isometry endpoints must be projections");
  }
  const StarAlgebra& algebra = p.algebra();
  std::vector<Eigen::MatrixXcd> blocks;
  blocks.reserve(algebra.num_blocks());
  for (int k = 0; k < algebra.num_blocks(); ++k) {
    const Eigen::MatrixXcd bp = range_basis(p.block(k), tol);
    const Eigen::MatrixXcd bq = range_basis(q.block(k), tol);
    if (bp.cols() != bq.cols()) {
      throw EquivalenceError("projection ranks differ in block " +
                             std::to_string(k));
    }
    blocks.push_back(bq * bp.adjoint());
  }
  return AlgebraElement::from_blocks(algebra, std::move(blocks));
}

AlgebraElement leading_subprojection(const AlgebraElement& p,
                                     const std::vector<int>& ranks,
                                     double tol) {
  const StarAlgebra& algebra = p.algebra();
  if (static_cast<int>(ranks.size()) != algebra.num_blocks()) {
    throw ShapeError("one rank per block required");
  }
  std::vector<Eigen::MatrixXcd> blocks;
  blocks.reserve(algebra.num_blocks());
  for (int k = 0; k < algebra.num_blocks(); ++k) {
    const Eigen::MatrixXcd basis = range_basis(p.block(k), tol);
    if (ranks[k] > basis.cols()) {
      throw EquivalenceError("projection rank too small in block " +
                             std::to_string(k));
    }
    const auto head = basis.leftCols(ranks[k]);
    blocks.push_back(head * head.adjoint());
  }
  return AlgebraElement::from_blocks(algebra, std::move(blocks));
}

std::pair<CentralElement, CentralElement> split_commutative(
    const StarAlgebra& algebra) {
  Eigen::VectorXcd c0 = Eigen::VectorXcd::Zero(algebra.num_blocks());
  Eigen::VectorXcd c1 = Eigen::VectorXcd::Zero(algebra.num_blocks());
  for (int k = 0; k < algebra.num_blocks(); ++k) {
    if (algebra.block_dim(k) == 1) {
      c0[k] = 1.0;
    } else {
      c1[k] = 1.0;
    }
  }
  return {CentralElement(algebra, std::move(c0)),
          CentralElement(algebra, std::move(c1))};
}

std::vector<int> projection_ranks(const AlgebraElement& p) {
  std::vector<int> ranks;
  ranks.reserve(p.algebra().num_blocks());
  for (const auto& b : p.blocks()) {
    ranks.push_back(static_cast<int>(std::lround(b.trace().real())));
  }
  return ranks;
}

}  // namespace liederiv
