#pragma once

// Finite-dimensional *-algebras as direct sums of full complex matrix
// blocks, together with the element-level operations (products,
// adjoints, commutators, central supports, halving projections) that
// the decomposition machinery consumes.
//
// Coordinates: an element is identified with the vector of its matrix
// entries, ordered block by block and row-major within a block. All
// operator representations in linmap.hpp act on these coordinates.

#include <complex>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "liederiv/errors.hpp"

namespace liederiv {

using Complex = std::complex<double>;

inline constexpr double kDefaultTolerance = 1e-9;   // acceptance checks
inline constexpr double kExactTolerance = 1e-12;    // algebraic identities
inline constexpr double kNullspaceThreshold = 1e-10;  // relative SVD cutoff

/// A = Mat(n_1) (+) ... (+) Mat(n_m). Value type; equality is equality
/// of the block dimension lists.
class StarAlgebra {
 public:
  StarAlgebra() = default;
  explicit StarAlgebra(std::vector<int> block_dims);

  int num_blocks() const { return static_cast<int>(block_dims_.size()); }
  int block_dim(int k) const { return block_dims_[k]; }
  const std::vector<int>& block_dims() const { return block_dims_; }

  /// Sum of squared block dimensions; the length of the coordinate vector.
  int coord_dim() const { return coord_dim_; }

  /// First coordinate index of block k.
  int block_offset(int k) const { return offsets_[k]; }

  /// Coordinate index of the matrix unit e_{ij} in block k.
  int unit_index(int k, int i, int j) const {
    return offsets_[k] + i * block_dims_[k] + j;
  }

  /// Inverse of unit_index: (block, row, col) of a coordinate.
  std::tuple<int, int, int> unit_position(int index) const;

  friend bool operator==(const StarAlgebra&, const StarAlgebra&) = default;

 private:
  std::vector<int> block_dims_;
  std::vector<int> offsets_;
  int coord_dim_ = 0;
};

StarAlgebra make_algebra(std::vector<int> block_dims);

/// A block-diagonal complex matrix. Immutable after construction.
class AlgebraElement {
 public:
  AlgebraElement() = default;

  static AlgebraElement zero(const StarAlgebra& algebra);
  static AlgebraElement identity(const StarAlgebra& algebra);
  static AlgebraElement matrix_unit(const StarAlgebra& algebra, int block,
                                    int i, int j);
  static AlgebraElement from_blocks(StarAlgebra algebra,
                                    std::vector<Eigen::MatrixXcd> blocks);
  static AlgebraElement from_coords(const StarAlgebra& algebra,
                                    const Eigen::VectorXcd& coords);

  const StarAlgebra& algebra() const { return algebra_; }
  const Eigen::MatrixXcd& block(int k) const { return blocks_[k]; }
  const std::vector<Eigen::MatrixXcd>& blocks() const { return blocks_; }

  Eigen::VectorXcd coords() const;

  bool is_projection(double tol = kExactTolerance) const;

 private:
  StarAlgebra algebra_;
  std::vector<Eigen::MatrixXcd> blocks_;
};

AlgebraElement mul(const AlgebraElement& x, const AlgebraElement& y);
AlgebraElement add(const AlgebraElement& x, const AlgebraElement& y);
AlgebraElement sub(const AlgebraElement& x, const AlgebraElement& y);
AlgebraElement scale(Complex c, const AlgebraElement& x);
AlgebraElement adjoint(const AlgebraElement& x);
AlgebraElement commutator(const AlgebraElement& x, const AlgebraElement& y);

inline AlgebraElement operator*(const AlgebraElement& x,
                                const AlgebraElement& y) {
  return mul(x, y);
}
inline AlgebraElement operator+(const AlgebraElement& x,
                                const AlgebraElement& y) {
  return add(x, y);
}
inline AlgebraElement operator-(const AlgebraElement& x,
                                const AlgebraElement& y) {
  return sub(x, y);
}
inline AlgebraElement operator*(Complex c, const AlgebraElement& x) {
  return scale(c, x);
}
inline AlgebraElement operator-(const AlgebraElement& x) {
  return scale(-1.0, x);
}

/// Frobenius norm over all blocks; the norm behind every residual here.
double norm(const AlgebraElement& x);

/// An element of the center: one scalar per block (the element is the
/// block-diagonal matrix with scalar multiples of the block identities).
class CentralElement {
 public:
  CentralElement() = default;
  CentralElement(StarAlgebra algebra, Eigen::VectorXcd coefficients);

  static CentralElement zero(const StarAlgebra& algebra);

  const StarAlgebra& algebra() const { return algebra_; }
  const Eigen::VectorXcd& coefficients() const { return coefficients_; }
  Complex coefficient(int k) const { return coefficients_[k]; }

  AlgebraElement embed() const;

 private:
  StarAlgebra algebra_;
  Eigen::VectorXcd coefficients_;
};

/// The m block-identity projections; they span Z(A) and sum to 1.
std::vector<CentralElement> center_basis(const StarAlgebra& algebra);

/// Smallest central projection c with c*p = p.
CentralElement central_support(const AlgebraElement& p,
                               double tol = kExactTolerance);

/// Per-block floor(n_k/2) leading diagonal units. Requires every block
/// dimension >= 2; throws CommutativeSummandError otherwise. The result p
/// satisfies central_support(p) = central_support(1-p) = 1 and
/// rank(p) <= rank(1-p) in every block.
AlgebraElement halving_projection(const StarAlgebra& algebra);

/// u with u*u = p and uu* = q. Projections must have equal per-block
/// ranks; throws EquivalenceError otherwise. Diagonal 0/1 projections map
/// range units in order; general projections go through an eigenbasis.
AlgebraElement partial_isometry_between(const AlgebraElement& p,
                                        const AlgebraElement& q,
                                        double tol = kExactTolerance);

/// (z0, z1): z0 sums the identities of the 1x1 blocks, z1 = 1 - z0.
/// z0*A is the commutative summand; z1*A has none.
std::pair<CentralElement, CentralElement> split_commutative(
    const StarAlgebra& algebra);

/// Projection onto the span of the first ranks[k] range vectors of p in
/// each block (for diagonal projections: the leading diagonal units).
AlgebraElement leading_subprojection(const AlgebraElement& p,
                                     const std::vector<int>& ranks,
                                     double tol = kExactTolerance);

/// Per-block rank of a projection (rounded trace).
std::vector<int> projection_ranks(const AlgebraElement& p);

}  // namespace liederiv
