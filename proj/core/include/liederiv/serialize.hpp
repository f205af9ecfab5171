#pragma once

// JSON wire formats. Numbers are written in shortest form that parses
// back to the same double, so every file round-trips exactly.
//
//   algebra   {"blocks": [2, 3, 1]}
//   element   {"blocks": [[[[re,im], ...], ...], ...]}   row-major blocks
//   operator  {"algebra": {...}, "matrix": [[[re,im], ...], ...]}
//             acting on matrix-unit coordinates, block by block and
//             row-major within a block
//   report    {"a":, "D":, "E":, "weights":, "residuals":, "frame":}
//   truth     {"algebra":, "a":, "weights":}
//
// Throws ParseError on malformed input.

#include <string>
#include <vector>

#include "liederiv/decompose.hpp"

namespace liederiv {

std::string algebra_to_json(const StarAlgebra& algebra);
StarAlgebra algebra_from_json(const std::string& text);

std::string element_to_json(const AlgebraElement& x);
AlgebraElement element_from_json(const std::string& text);

std::string operator_to_json(const LinearOperator& op);
LinearOperator operator_from_json(const std::string& text);

/// Block-trace weights of a center-valued trace: w_k = central part of
/// E(e^k_11), so that E(x) = sum_k tr_k(x) w_k when E is a trace map.
std::vector<CentralElement> trace_weights(const LinearOperator& E);

/// Full decomposition report. "a" is the trace-free inner witness of D
/// from solve_inner; "weights" the block-trace weights of E; "frame" the
/// per-block ranks of p1 (0 on commutative blocks), omitted entirely for
/// commutative algebras.
std::string standard_form_to_json(const StandardForm& form);

std::string ground_truth_to_json(const StarAlgebra& algebra,
                                 const GroundTruth& truth);
GroundTruth ground_truth_from_json(const std::string& text);

}  // namespace liederiv
