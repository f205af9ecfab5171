#pragma once

#include <doctest.h>

#include "liederiv/algebra.hpp"
#include "liederiv/linmap.hpp"
#include "liederiv/rng.hpp"

namespace testutil {

inline liederiv::AlgebraElement unit(const liederiv::StarAlgebra& algebra,
                                     int block, int i, int j) {
  return liederiv::AlgebraElement::matrix_unit(algebra, block, i, j);
}

inline double dist(const liederiv::AlgebraElement& x,
                   const liederiv::AlgebraElement& y) {
  return liederiv::norm(x - y);
}

inline double dist(const liederiv::LinearOperator& a,
                   const liederiv::LinearOperator& b) {
  return (a.matrix() - b.matrix()).norm();
}

}  // namespace testutil
