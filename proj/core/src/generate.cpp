#include "liederiv/linmap.hpp"
#include "liederiv/rng.hpp"

namespace liederiv {

AlgebraElement random_element(const StarAlgebra& algebra, Rng& rng) {
  std::vector<Eigen::MatrixXcd> blocks;
  blocks.reserve(algebra.num_blocks());
  for (int k = 0; k < algebra.num_blocks(); ++k) {
    const int n = algebra.block_dim(k);
    Eigen::MatrixXcd b(n, n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        b(i, j) = rng.complex_uniform();
      }
    }
    blocks.push_back(std::move(b));
  }
  return AlgebraElement::from_blocks(algebra, std::move(blocks));
}

AlgebraElement random_traceless(const StarAlgebra& algebra, Rng& rng) {
  return traceless_part(random_element(algebra, rng));
}

std::vector<CentralElement> random_weights(const StarAlgebra& algebra,
                                           Rng& rng) {
  std::vector<CentralElement> weights;
  weights.reserve(algebra.num_blocks());
  for (int k = 0; k < algebra.num_blocks(); ++k) {
    Eigen::VectorXcd c(algebra.num_blocks());
    for (int l = 0; l < algebra.num_blocks(); ++l) {
      c[l] = rng.complex_uniform();
    }
    weights.emplace_back(algebra, std::move(c));
  }
  return weights;
}

AlgebraElement random_projection(const StarAlgebra& algebra,
                                 const std::vector<int>& ranks, Rng& rng) {
  if (static_cast<int>(ranks.size()) != algebra.num_blocks()) {
    throw ShapeError("one rank per block required");
  }
  std::vector<Eigen::MatrixXcd> blocks;
  blocks.reserve(algebra.num_blocks());
  for (int k = 0; k < algebra.num_blocks(); ++k) {
    const int n = algebra.block_dim(k);
    if (ranks[k] < 0 || ranks[k] > n) {
      throw PreconditionError("rank out of range in block " +
                              std::to_string(k));
    }
    Eigen::MatrixXcd g(n, n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        g(i, j) = rng.complex_uniform();
      }
    }
    const Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
    const Eigen::MatrixXcd u = qr.householderQ();
    Eigen::MatrixXcd d = Eigen::MatrixXcd::Zero(n, n);
    for (int i = 0; i < ranks[k]; ++i) {
      d(i, i) = 1.0;
    }
    blocks.push_back(u * d * u.adjoint());
  }
  return AlgebraElement::from_blocks(algebra, std::move(blocks));
}

SampledOperator sample_lie_derivation(const StarAlgebra& algebra,
                                      std::uint64_t seed, SampleMode mode) {
  Rng rng(seed);
  if (mode == SampleMode::kGroundTruth) {
    GroundTruth truth{random_traceless(algebra, rng),
                      random_weights(algebra, rng)};
    LinearOperator op =
        inner_derivation(truth.a) + trace_from_weights(truth.weights);
    return {std::move(op), std::move(truth)};
  }
  const auto basis = lie_derivation_space(algebra);
  Eigen::MatrixXcd m =
      Eigen::MatrixXcd::Zero(algebra.coord_dim(), algebra.coord_dim());
  for (const auto& b : basis) {
    m += rng.complex_uniform() * b.matrix();
  }
  return {LinearOperator(algebra, std::move(m)), std::nullopt};
}

}  // namespace liederiv
