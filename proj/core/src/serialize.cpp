#include "liederiv/serialize.hpp"

#include <json.hpp>

namespace liederiv {

using nlohmann::json;

namespace {

json complex_to_json(const Complex& z) {
  return json::array({z.real(), z.imag()});
}

Complex complex_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() ||
      !j[1].is_number()) {
    throw ParseError("complex entry must be a [re, im] pair");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

json algebra_json(const StarAlgebra& algebra) {
  return json{{"blocks", algebra.block_dims()}};
}

StarAlgebra algebra_from(const json& j) {
  if (!j.is_object() || !j.contains("blocks") || !j["blocks"].is_array()) {
    throw ParseError("algebra must be an object with a \"blocks\" array");
  }
  std::vector<int> dims;
  for (const auto& d : j["blocks"]) {
    if (!d.is_number_integer()) {
      throw ParseError("block dimensions must be integers");
    }
    dims.push_back(d.get<int>());
  }
  return make_algebra(std::move(dims));
}

json element_json(const AlgebraElement& x) {
  json blocks = json::array();
  for (const auto& b : x.blocks()) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < b.rows(); ++i) {
      json row = json::array();
      for (Eigen::Index j = 0; j < b.cols(); ++j) {
        row.push_back(complex_to_json(b(i, j)));
      }
      rows.push_back(std::move(row));
    }
    blocks.push_back(std::move(rows));
  }
  return json{{"blocks", std::move(blocks)}};
}

AlgebraElement element_from(const json& j) {
  if (!j.is_object() || !j.contains("blocks") || !j["blocks"].is_array() ||
      j["blocks"].empty()) {
    throw ParseError("element must be an object with a \"blocks\" array");
  }
  std::vector<Eigen::MatrixXcd> blocks;
  std::vector<int> dims;
  for (const auto& rows : j["blocks"]) {
    if (!rows.is_array() || rows.empty()) {
      throw ParseError("element block must be a nonempty array of rows");
    }
    const int n = static_cast<int>(rows.size());
    Eigen::MatrixXcd b(n, n);
    for (int i = 0; i < n; ++i) {
      if (!rows[i].is_array() || static_cast<int>(rows[i].size()) != n) {
        throw ParseError("element block must be square");
      }
      for (int jj = 0; jj < n; ++jj) {
        b(i, jj) = complex_from_json(rows[i][jj]);
      }
    }
    dims.push_back(n);
    blocks.push_back(std::move(b));
  }
  return AlgebraElement::from_blocks(make_algebra(std::move(dims)),
                                     std::move(blocks));
}

json operator_json(const LinearOperator& op) {
  const auto& m = op.matrix();
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      row.push_back(complex_to_json(m(i, j)));
    }
    rows.push_back(std::move(row));
  }
  return json{{"algebra", algebra_json(op.algebra())},
              {"matrix", std::move(rows)}};
}

LinearOperator operator_from(const json& j) {
  if (!j.is_object() || !j.contains("algebra") || !j.contains("matrix")) {
    throw ParseError("operator needs \"algebra\" and \"matrix\" fields");
  }
  const StarAlgebra algebra = algebra_from(j["algebra"]);
  const int n = algebra.coord_dim();
  if (!j["matrix"].is_array() || static_cast<int>(j["matrix"].size()) != n) {
    throw ParseError("operator matrix must have coord_dim rows");
  }
  Eigen::MatrixXcd m(n, n);
  for (int i = 0; i < n; ++i) {
    const auto& row = j["matrix"][i];
    if (!row.is_array() || static_cast<int>(row.size()) != n) {
      throw ParseError("operator matrix must have coord_dim columns");
    }
    for (int jj = 0; jj < n; ++jj) {
      m(i, jj) = complex_from_json(row[jj]);
    }
  }
  return LinearOperator(algebra, std::move(m));
}

json weights_json(const std::vector<CentralElement>& weights) {
  json out = json::array();
  for (const auto& w : weights) {
    json coeffs = json::array();
    for (Eigen::Index l = 0; l < w.coefficients().size(); ++l) {
      coeffs.push_back(complex_to_json(w.coefficients()[l]));
    }
    out.push_back(std::move(coeffs));
  }
  return out;
}

std::vector<CentralElement> weights_from(const json& j,
                                         const StarAlgebra& algebra) {
  if (!j.is_array() ||
      static_cast<int>(j.size()) != algebra.num_blocks()) {
    throw ParseError("weights must list one central element per block");
  }
  std::vector<CentralElement> weights;
  for (const auto& coeffs : j) {
    if (!coeffs.is_array() ||
        static_cast<int>(coeffs.size()) != algebra.num_blocks()) {
      throw ParseError("each weight needs one coefficient per block");
    }
    Eigen::VectorXcd c(algebra.num_blocks());
    for (int l = 0; l < algebra.num_blocks(); ++l) {
      c[l] = complex_from_json(coeffs[l]);
    }
    weights.emplace_back(algebra, std::move(c));
  }
  return weights;
}

json parse(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) {
    throw ParseError("malformed JSON");
  }
  return j;
}

std::string dump(const json& j) { return j.dump() + "\n"; }

}  // namespace

std::string algebra_to_json(const StarAlgebra& algebra) {
  return dump(algebra_json(algebra));
}

StarAlgebra algebra_from_json(const std::string& text) {
  return algebra_from(parse(text));
}

std::string element_to_json(const AlgebraElement& x) {
  return dump(element_json(x));
}

AlgebraElement element_from_json(const std::string& text) {
  return element_from(parse(text));
}

std::string operator_to_json(const LinearOperator& op) {
  return dump(operator_json(op));
}

LinearOperator operator_from_json(const std::string& text) {
  return operator_from(parse(text));
}

std::vector<CentralElement> trace_weights(const LinearOperator& E) {
  const StarAlgebra& algebra = E.algebra();
  std::vector<CentralElement> weights;
  weights.reserve(algebra.num_blocks());
  for (int k = 0; k < algebra.num_blocks(); ++k) {
    const AlgebraElement image =
        E.apply(AlgebraElement::matrix_unit(algebra, k, 0, 0));
    Eigen::VectorXcd c(algebra.num_blocks());
    for (int l = 0; l < algebra.num_blocks(); ++l) {
      c[l] = image.block(l).trace() / static_cast<double>(algebra.block_dim(l));
    }
    weights.emplace_back(algebra, std::move(c));
  }
  return weights;
}

std::string standard_form_to_json(const StandardForm& form) {
  const StarAlgebra& algebra = form.D.algebra();
  json j;
  j["a"] = element_json(solve_inner(form.D));
  j["D"] = operator_json(form.D);
  j["E"] = operator_json(form.E);
  j["weights"] = weights_json(trace_weights(form.E));
  j["residuals"] = {{"lie", form.residuals.lie},
                    {"leibniz", form.residuals.leibniz},
                    {"trace", form.residuals.trace},
                    {"reconstruction", form.residuals.reconstruction}};
  if (form.frame) {
    // Frame ranks reported against the full block list; commutative
    // blocks carry no frame and rank 0.
    std::vector<int> ranks;
    size_t sub = 0;
    for (int k = 0; k < algebra.num_blocks(); ++k) {
      if (algebra.block_dim(k) >= 2) {
        ranks.push_back(form.frame->ranks()[sub++]);
      } else {
        ranks.push_back(0);
      }
    }
    j["frame"] = {{"ranks", ranks}};
  }
  return dump(j);
}

std::string ground_truth_to_json(const StarAlgebra& algebra,
                                 const GroundTruth& truth) {
  json j;
  j["algebra"] = algebra_json(algebra);
  j["a"] = element_json(truth.a);
  j["weights"] = weights_json(truth.weights);
  return dump(j);
}

GroundTruth ground_truth_from_json(const std::string& text) {
  const json j = parse(text);
  if (!j.is_object() || !j.contains("algebra") || !j.contains("a") ||
      !j.contains("weights")) {
    throw ParseError("ground truth needs \"algebra\", \"a\", \"weights\"");
  }
  const StarAlgebra algebra = algebra_from(j["algebra"]);
  AlgebraElement a = element_from(j["a"]);
  if (!(a.algebra() == algebra)) {
    throw ParseError("ground-truth element does not match its algebra");
  }
  return {std::move(a), weights_from(j["weights"], algebra)};
}

}  // namespace liederiv
