#include "liederiv/algebra.hpp"

#include <doctest.h>

#include "helpers.hpp"
#include "liederiv/rng.hpp"

using namespace liederiv;
using testutil::dist;
using testutil::unit;

TEST_CASE("make_algebra computes coordinate dimensions") {
  CHECK(make_algebra({2, 3, 1}).coord_dim() == 14);
  CHECK(make_algebra({1}).coord_dim() == 1);
  CHECK(make_algebra({2, 2}).coord_dim() == 8);
  CHECK_THROWS_AS(make_algebra({}), InvalidSpecError);
  CHECK_THROWS_AS(make_algebra({2, 0}), InvalidSpecError);
  CHECK_THROWS_AS(make_algebra({-1}), InvalidSpecError);
}

TEST_CASE("unit_index and unit_position are inverse") {
  const StarAlgebra a = make_algebra({2, 3});
  for (int idx = 0; idx < a.coord_dim(); ++idx) {
    const auto [k, i, j] = a.unit_position(idx);
    CHECK(a.unit_index(k, i, j) == idx);
  }
  CHECK(a.unit_index(1, 0, 0) == 4);
  CHECK(a.unit_index(1, 2, 2) == 12);
}

TEST_CASE("matrix-unit arithmetic") {
  const StarAlgebra m2 = make_algebra({2});
  const auto e11 = unit(m2, 0, 0, 0);
  const auto e12 = unit(m2, 0, 0, 1);
  const auto e21 = unit(m2, 0, 1, 0);

  CHECK(dist(commutator(e11, e12), e12) == 0.0);
  CHECK(dist(adjoint(e12), e21) == 0.0);

  Rng rng(11);
  const auto x = random_element(m2, rng);
  CHECK(norm(commutator(x, x)) == 0.0);

  const StarAlgebra other = make_algebra({3});
  CHECK_THROWS_AS(mul(e11, AlgebraElement::identity(other)), ShapeError);
}

TEST_CASE("frobenius norm") {
  const StarAlgebra m2 = make_algebra({2});
  CHECK(norm(AlgebraElement::zero(m2)) == 0.0);
  CHECK(norm(AlgebraElement::identity(m2)) == doctest::Approx(std::sqrt(2.0)));
  const StarAlgebra a22 = make_algebra({2, 2});
  const auto x = unit(a22, 0, 0, 1) + unit(a22, 1, 0, 1);
  CHECK(norm(x) == doctest::Approx(std::sqrt(2.0)));
}

TEST_CASE("center basis spans the block identities") {
  const StarAlgebra a = make_algebra({2, 3});
  const auto basis = center_basis(a);
  REQUIRE(basis.size() == 2);
  CHECK(basis[0].embed().block(0).isIdentity(0.0));
  CHECK(basis[0].embed().block(1).isZero(0.0));
  CHECK(basis[1].embed().block(1).isIdentity(0.0));

  AlgebraElement sum = AlgebraElement::zero(a);
  for (const auto& z : basis) sum = sum + z.embed();
  CHECK(dist(sum, AlgebraElement::identity(a)) == 0.0);

  CHECK(center_basis(make_algebra({1})).size() == 1);
  CHECK(center_basis(make_algebra({2})).size() == 1);
}

TEST_CASE("central support picks the blocks meeting p") {
  const StarAlgebra a22 = make_algebra({2, 2});
  const auto p = unit(a22, 0, 0, 0);
  const auto c = central_support(p);
  CHECK(c.coefficient(0) == Complex(1.0));
  CHECK(c.coefficient(1) == Complex(0.0));

  CHECK(central_support(AlgebraElement::zero(a22))
            .coefficients()
            .isZero(0.0));

  const StarAlgebra a23 = make_algebra({2, 3});
  const auto q = unit(a23, 0, 0, 0) + unit(a23, 1, 0, 0);
  CHECK(central_support(q).coefficients().isOnes());

  CHECK_THROWS_AS(central_support(unit(a23, 0, 0, 1)), PreconditionError);
}

TEST_CASE("central support is minimal among dominating central projections") {
  // Oracle: enumerate all 2^m central 0/1 projections and find the ones
  // with z p = p; the support must be the smallest.
  const StarAlgebra a = make_algebra({2, 1, 3});
  Rng rng(5);
  const auto p = random_projection(a, {1, 0, 2}, rng);
  const auto support = central_support(p, 1e-9);
  const int m = a.num_blocks();
  for (int mask = 0; mask < (1 << m); ++mask) {
    Eigen::VectorXcd c = Eigen::VectorXcd::Zero(m);
    for (int k = 0; k < m; ++k) {
      if (mask & (1 << k)) c[k] = 1.0;
    }
    const CentralElement z(a, c);
    const bool dominates = dist(mul(z.embed(), p), p) <= 1e-9;
    if (dominates) {
      // The support divides every dominating central projection.
      for (int k = 0; k < m; ++k) {
        if (support.coefficient(k) == Complex(1.0)) {
          CHECK(z.coefficient(k) == Complex(1.0));
        }
      }
    }
  }
  CHECK(dist(mul(support.embed(), p), p) <= 1e-9);
}

TEST_CASE("halving projection uses leading diagonal units") {
  const StarAlgebra a23 = make_algebra({2, 3});
  const auto p = halving_projection(a23);
  CHECK(dist(p, unit(a23, 0, 0, 0) + unit(a23, 1, 0, 0)) == 0.0);
  CHECK(p.is_projection(0.0));
  CHECK(central_support(p).coefficients().isOnes());
  CHECK(central_support(AlgebraElement::identity(a23) - p)
            .coefficients()
            .isOnes());

  const StarAlgebra m2 = make_algebra({2});
  CHECK(dist(halving_projection(m2), unit(m2, 0, 0, 0)) == 0.0);

  CHECK_THROWS_AS(halving_projection(make_algebra({2, 1})),
                  CommutativeSummandError);
}

TEST_CASE("partial isometries connect equivalent projections") {
  const StarAlgebra m2 = make_algebra({2});
  const auto e11 = unit(m2, 0, 0, 0);
  const auto e22 = unit(m2, 0, 1, 1);
  const auto u = partial_isometry_between(e11, e22);
  CHECK(dist(u, unit(m2, 0, 1, 0)) == 0.0);
  CHECK(dist(mul(adjoint(u), u), e11) == 0.0);
  CHECK(dist(mul(u, adjoint(u)), e22) == 0.0);

  CHECK(dist(partial_isometry_between(e11, e11), e11) == 0.0);

  const StarAlgebra a22 = make_algebra({2, 2});
  CHECK_THROWS_AS(
      partial_isometry_between(unit(a22, 0, 0, 0), unit(a22, 1, 0, 0)),
      EquivalenceError);
}

TEST_CASE("partial isometries work for rotated projections") {
  const StarAlgebra a = make_algebra({3, 2});
  Rng rng(17);
  const auto p = random_projection(a, {1, 1}, rng);
  const auto q = random_projection(a, {1, 1}, rng);
  const auto u = partial_isometry_between(p, q, 1e-9);
  CHECK(dist(mul(adjoint(u), u), p) <= 1e-12);
  CHECK(dist(mul(u, adjoint(u)), q) <= 1e-12);
}

TEST_CASE("split_commutative separates the 1x1 blocks") {
  const StarAlgebra a = make_algebra({2, 1, 3, 1});
  const auto [z0, z1] = split_commutative(a);
  CHECK(z0.coefficient(0) == Complex(0.0));
  CHECK(z0.coefficient(1) == Complex(1.0));
  CHECK(z0.coefficient(2) == Complex(0.0));
  CHECK(z0.coefficient(3) == Complex(1.0));
  CHECK(dist(z0.embed() + z1.embed(), AlgebraElement::identity(a)) == 0.0);
  CHECK(norm(mul(z0.embed(), z1.embed())) == 0.0);

  const auto [w0, w1] = split_commutative(make_algebra({2, 3}));
  CHECK(w0.coefficients().isZero(0.0));
  CHECK(w1.coefficients().isOnes());

  const auto [v0, v1] = split_commutative(make_algebra({1, 1}));
  CHECK(v0.coefficients().isOnes());
  CHECK(v1.coefficients().isZero(0.0));

  // Everything under z0 is central.
  Rng rng(3);
  const auto x = random_element(a, rng);
  const auto y = random_element(a, rng);
  CHECK(norm(commutator(mul(z0.embed(), x), y)) <= 1e-12);
}

TEST_CASE("algebraic identities hold on random elements") {
  const StarAlgebra a = make_algebra({2, 3, 1});
  Rng rng(23);
  for (int round = 0; round < 20; ++round) {
    const auto x = random_element(a, rng);
    const auto y = random_element(a, rng);
    const auto z = random_element(a, rng);
    CHECK(dist(mul(mul(x, y), z), mul(x, mul(y, z))) <= 1e-12);
    CHECK(dist(adjoint(mul(x, y)), mul(adjoint(y), adjoint(x))) <= 1e-12);
    const auto jacobi = commutator(x, commutator(y, z)) +
                        commutator(y, commutator(z, x)) +
                        commutator(z, commutator(x, y));
    CHECK(norm(jacobi) <= 1e-12);
  }
}

TEST_CASE("leading subprojection keeps diagonal order") {
  const StarAlgebra a = make_algebra({3});
  const auto p =
      unit(a, 0, 1, 1) + unit(a, 0, 2, 2);  // diag(0, 1, 1)
  const auto q = leading_subprojection(p, {1});
  CHECK(dist(q, unit(a, 0, 1, 1)) == 0.0);
  CHECK_THROWS_AS(leading_subprojection(p, {3}), EquivalenceError);
}
