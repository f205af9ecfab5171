#include <benchmark/benchmark.h>

#include "liederiv/decompose.hpp"
#include "liederiv/rng.hpp"

using namespace liederiv;

namespace {

StarAlgebra algebra_for(const benchmark::State& state) {
  switch (state.range(0)) {
    case 0:
      return make_algebra({2});
    case 1:
      return make_algebra({2, 3});
    case 2:
      return make_algebra({2, 3, 1});
    default:
      return make_algebra({4, 4});
  }
}

void BM_StandardForm(benchmark::State& state) {
  const StarAlgebra algebra = algebra_for(state);
  const auto op =
      sample_lie_derivation(algebra, 7, SampleMode::kGroundTruth).op;
  for (auto _ : state) {
    benchmark::DoNotOptimize(standard_form(op));
  }
}
BENCHMARK(BM_StandardForm)->DenseRange(0, 3);

void BM_LieResidual(benchmark::State& state) {
  const StarAlgebra algebra = algebra_for(state);
  const auto op =
      sample_lie_derivation(algebra, 7, SampleMode::kGroundTruth).op;
  for (auto _ : state) {
    benchmark::DoNotOptimize(lie_residual(op));
  }
}
BENCHMARK(BM_LieResidual)->DenseRange(0, 3);

// The constraint system grows like coord_dim^3 x coord_dim^2; [4,4]
// already needs a 15872 x 1024 SVD, so the sweep stops at [2,3,1].
void BM_DerivationSpace(benchmark::State& state) {
  const StarAlgebra algebra = algebra_for(state);
  for (auto _ : state) {
    benchmark::DoNotOptimize(lie_derivation_space(algebra));
  }
}
BENCHMARK(BM_DerivationSpace)->DenseRange(0, 2);

void BM_SolveInner(benchmark::State& state) {
  const StarAlgebra algebra = algebra_for(state);
  Rng rng(13);
  const auto d = inner_derivation(random_traceless(algebra, rng));
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_inner(d));
  }
}
BENCHMARK(BM_SolveInner)->DenseRange(0, 3);

}  // namespace

BENCHMARK_MAIN();
