#include "liederiv/linmap.hpp"

#include <doctest.h>

#include <Eigen/QR>

#include "helpers.hpp"
#include "liederiv/rng.hpp"

using namespace liederiv;
using testutil::dist;
using testutil::unit;

TEST_CASE("apply is linear and respects the coordinate embedding") {
  const StarAlgebra m2 = make_algebra({2});
  Rng rng(1);
  const auto x = random_element(m2, rng);
  CHECK(norm(LinearOperator::zero(m2).apply(x)) == 0.0);
  CHECK(dist(LinearOperator::identity_map(m2).apply(unit(m2, 0, 0, 1)),
             unit(m2, 0, 0, 1)) == 0.0);
  // [e12, e11] = e12 e11 - e11 e12 = -e12.
  CHECK(dist(inner_derivation(unit(m2, 0, 0, 1)).apply(unit(m2, 0, 0, 0)),
             -unit(m2, 0, 0, 1)) == 0.0);
  CHECK_THROWS_AS(LinearOperator::zero(m2).apply(
                      AlgebraElement::identity(make_algebra({3}))),
                  ShapeError);
}

TEST_CASE("inner derivations satisfy both derivation identities") {
  const StarAlgebra a = make_algebra({2, 3});
  Rng rng(2);
  const auto d = inner_derivation(random_element(a, rng));
  CHECK(lie_residual(d).max_residual <= 1e-12);
  CHECK(leibniz_residual(d).max_residual <= 1e-12);

  // Central elements commute with everything.
  const auto z = center_basis(a)[0].embed() + center_basis(a)[1].embed();
  CHECK(inner_derivation(z).frobenius_norm() == 0.0);
  CHECK(inner_derivation(AlgebraElement::zero(a)).frobenius_norm() == 0.0);

  // e12 e22 - e22 e12 = e12.
  const StarAlgebra m2 = make_algebra({2});
  CHECK(dist(inner_derivation(unit(m2, 0, 0, 1)).apply(unit(m2, 0, 1, 1)),
             unit(m2, 0, 0, 1)) == 0.0);
}

TEST_CASE("the identity map is not a Lie derivation on Mat(2)") {
  const StarAlgebra m2 = make_algebra({2});
  const auto r = lie_residual(LinearOperator::identity_map(m2));
  CHECK_FALSE(r.passed);
  // Defect 1 on ([e11, e12]); the worst pair (e12, e21) reaches sqrt(2).
  CHECK(r.max_residual >= 1.0 / 3.0);

  // All brackets vanish in a commutative algebra.
  const auto c = lie_residual(LinearOperator::identity_map(make_algebra({1, 1})));
  CHECK(c.max_residual == 0.0);
  CHECK(c.passed);
}

TEST_CASE("trace maps violate the Leibniz rule") {
  const StarAlgebra m2 = make_algebra({2});
  const auto basis = center_basis(m2);
  const auto e = trace_from_weights({basis[0]});  // E(x) = tr(x) I
  CHECK(leibniz_residual(LinearOperator::zero(m2)).max_residual == 0.0);
  const auto r = leibniz_residual(e);
  CHECK_FALSE(r.passed);
  // E(e11 e11) = I while E(e11) e11 + e11 E(e11) = 2 e11; defect sqrt(2).
  const auto e11 = unit(m2, 0, 0, 0);
  CHECK(norm(e.apply(mul(e11, e11)) - scale(2.0, mul(e.apply(e11), e11))) ==
        doctest::Approx(std::sqrt(2.0)));
}

TEST_CASE("trace residual accepts block traces and rejects inner maps") {
  const StarAlgebra a = make_algebra({2, 3});
  const auto e = trace_from_weights(center_basis(a));
  CHECK(trace_residual(e).max_residual <= 1e-15);

  const StarAlgebra m2 = make_algebra({2});
  const auto d = inner_derivation(unit(m2, 0, 0, 1));
  const auto r = trace_residual(d);
  CHECK_FALSE(r.passed);  // D(e11) = -e12 is not central

  CHECK(trace_residual(LinearOperator::zero(a)).max_residual == 0.0);
}

TEST_CASE("trace_from_weights matches its defining formula") {
  const StarAlgebra m2 = make_algebra({2});
  const auto zero_w = trace_from_weights({CentralElement::zero(m2)});
  CHECK(zero_w.frobenius_norm() == 0.0);

  // Weight I/2: E(1) = tr(I) * I/2 = I.
  const CentralElement half(m2, Eigen::VectorXcd::Constant(1, 0.5));
  const auto e = trace_from_weights({half});
  CHECK(dist(e.apply(AlgebraElement::identity(m2)),
             AlgebraElement::identity(m2)) == 0.0);

  // E(z_k) = n_k w_k.
  const StarAlgebra a = make_algebra({2, 3});
  Rng rng(7);
  const auto w = random_weights(a, rng);
  const auto ew = trace_from_weights(w);
  const auto zs = center_basis(a);
  CHECK(dist(ew.apply(zs[0].embed()), scale(2.0, w[0].embed())) <= 1e-14);
  CHECK(dist(ew.apply(zs[1].embed()), scale(3.0, w[1].embed())) <= 1e-14);

  // Traces kill commutators.
  const auto x = random_element(a, rng);
  const auto y = random_element(a, rng);
  CHECK(norm(ew.apply(commutator(x, y))) <= 1e-13);
}

TEST_CASE("composition brackets of inner derivations are inner") {
  // [D_a, D_b] = D_{[a,b]}.
  const StarAlgebra a = make_algebra({2, 3});
  Rng rng(27);
  const auto x = random_element(a, rng);
  const auto y = random_element(a, rng);
  const auto da = inner_derivation(x);
  const auto db = inner_derivation(y);
  const auto bracket = compose(da, db) - compose(db, da);
  CHECK(testutil::dist(bracket, inner_derivation(commutator(x, y))) <= 1e-12);
}

TEST_CASE("trace_from_weights validates its weight list") {
  const StarAlgebra a = make_algebra({2, 3});
  CHECK_THROWS_AS(trace_from_weights({center_basis(a)[0]}), ShapeError);
  CHECK_THROWS_AS(trace_from_weights({}), ShapeError);
  CHECK_THROWS_AS(
      trace_from_weights({center_basis(a)[0],
                          CentralElement::zero(make_algebra({1, 1}))}),
      ShapeError);
}

TEST_CASE("derivation space dimensions match the structure count") {
  // dim = sum (n_k^2 - 1) + m^2.
  CHECK(lie_derivation_space(make_algebra({1})).size() == 1);
  CHECK(lie_derivation_space(make_algebra({2})).size() == 4);
  CHECK(lie_derivation_space(make_algebra({2, 3})).size() == 15);
  CHECK(lie_derivation_space(make_algebra({2, 1})).size() == 7);
  CHECK(lie_derivation_space(make_algebra({1, 1})).size() == 4);
}

TEST_CASE("derivation space members pass the Lie residual") {
  for (const auto& dims : {std::vector<int>{2}, {2, 3}, {2, 1}}) {
    const StarAlgebra a = make_algebra(dims);
    for (const auto& op : lie_derivation_space(a)) {
      CHECK(lie_residual(op).max_residual <= 1e-9);
    }
  }
}

TEST_CASE("rank of the constraint system agrees with an independent route") {
  for (const auto& dims : {std::vector<int>{2}, {2, 3}, {1, 1}}) {
    const StarAlgebra a = make_algebra(dims);
    const Eigen::MatrixXcd k = lie_constraint_matrix(a);
    const int n2 = a.coord_dim() * a.coord_dim();
    Eigen::ColPivHouseholderQR<Eigen::MatrixXcd> qr(k);
    qr.setThreshold(1e-10);
    const int null_dim = n2 - static_cast<int>(qr.rank());
    CHECK(null_dim == static_cast<int>(lie_derivation_space(a).size()));
  }
}

TEST_CASE("inner derivations and traces lie in the derivation space") {
  const StarAlgebra a = make_algebra({2, 3});
  const auto space = lie_derivation_space(a);
  const int n2 = a.coord_dim() * a.coord_dim();
  Eigen::MatrixXcd basis(n2, space.size());
  for (size_t c = 0; c < space.size(); ++c) {
    basis.col(c) = Eigen::Map<const Eigen::VectorXcd>(
        space[c].matrix().data(), n2);
  }
  Rng rng(9);
  const auto check_member = [&](const LinearOperator& op) {
    const Eigen::VectorXcd v =
        Eigen::Map<const Eigen::VectorXcd>(op.matrix().data(), n2);
    // Basis columns are orthonormal (SVD right singular vectors).
    const double defect = (v - basis * (basis.adjoint() * v)).norm();
    CHECK(defect <= 1e-8 * (1.0 + v.norm()));
  };
  check_member(inner_derivation(random_traceless(a, rng)));
  check_member(trace_from_weights(random_weights(a, rng)));
}

TEST_CASE("sampling is deterministic and produces Lie derivations") {
  const StarAlgebra a = make_algebra({2, 3});
  const auto s1 = sample_lie_derivation(a, 42, SampleMode::kGroundTruth);
  const auto s2 = sample_lie_derivation(a, 42, SampleMode::kGroundTruth);
  CHECK(s1.op.matrix() == s2.op.matrix());
  REQUIRE(s1.truth.has_value());
  CHECK(dist(s1.truth->a, s2.truth->a) == 0.0);
  CHECK(lie_residual(s1.op).max_residual <= 1e-10);

  const auto n1 = sample_lie_derivation(a, 42, SampleMode::kNullspace);
  const auto n2 = sample_lie_derivation(a, 42, SampleMode::kNullspace);
  CHECK(n1.op.matrix() == n2.op.matrix());
  CHECK_FALSE(n1.truth.has_value());
  CHECK(lie_residual(n1.op).max_residual <= 1e-9);

  const auto other = sample_lie_derivation(a, 43, SampleMode::kGroundTruth);
  CHECK(other.op.matrix() != s1.op.matrix());
}

TEST_CASE("solve_inner recovers trace-free generators") {
  const StarAlgebra m2 = make_algebra({2});
  const auto e12 = unit(m2, 0, 0, 1);
  CHECK(dist(solve_inner(inner_derivation(e12)), e12) <= 1e-12);

  CHECK(norm(solve_inner(LinearOperator::zero(m2))) <= 1e-13);

  // The gauge subtracts (tr a / n) I: e11 maps to e11 - I/2.
  const auto e11 = unit(m2, 0, 0, 0);
  const auto expected = e11 - scale(0.5, AlgebraElement::identity(m2));
  CHECK(dist(solve_inner(inner_derivation(e11)), expected) <= 1e-12);

  const StarAlgebra a = make_algebra({2, 3, 1});
  Rng rng(4);
  const auto gen = random_traceless(a, rng);
  CHECK(dist(solve_inner(inner_derivation(gen)), gen) <= 1e-9);

  // A trace map is no derivation; nothing inner comes close.
  CHECK_THROWS_AS(solve_inner(trace_from_weights(center_basis(m2))),
                  NotInnerError);
}

TEST_CASE("projection bracket identity") {
  const StarAlgebra m2 = make_algebra({2});
  const auto p = unit(m2, 0, 0, 0);
  const auto x = unit(m2, 0, 0, 1);
  CHECK(projection_bracket_residual(LinearOperator::zero(m2), p, x)
            .max_residual == 0.0);

  // Lie derivations satisfy the identity at any projection.
  const StarAlgebra m3 = make_algebra({3});
  Rng rng(6);
  const auto l = inner_derivation(random_element(m3, rng));
  for (int round = 0; round < 10; ++round) {
    const auto proj = random_projection(m3, {1 + (round % 2)}, rng);
    const auto elem = random_element(m3, rng);
    CHECK(projection_bracket_residual(l, proj, elem).max_residual <= 1e-10);
  }

  // The identity map breaks it: lhs = -2 e12, rhs = 0, scaled by 1/6.
  const auto bad =
      projection_bracket_residual(LinearOperator::identity_map(m2), p, x);
  CHECK_FALSE(bad.passed);
  CHECK(bad.max_residual == doctest::Approx(1.0 / 3.0));
}
