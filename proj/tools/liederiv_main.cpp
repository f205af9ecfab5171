// Command-line front end: check operators against the defining
// identities, decompose Lie derivations into derivation + central trace,
// generate seeded test instances, report derivation-space dimensions,
// and drive the invariant suite.
//
// Exit codes: 0 success, 1 semantic failure, 2 input or usage error.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "liederiv/decompose.hpp"
#include "liederiv/rng.hpp"
#include "liederiv/serialize.hpp"

using namespace liederiv;
using nlohmann::json;

namespace {

constexpr int kOk = 0;
constexpr int kSemanticFailure = 1;
constexpr int kInputError = 2;

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ParseError("cannot open input file: " + path);
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_text(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw ParseError("cannot open output file: " + path);
  }
  out << content;
}

void emit(const std::optional<std::string>& out_path, const std::string& text) {
  if (out_path) {
    write_text(*out_path, text);
  } else {
    std::cout << text;
  }
}

// --algebra accepts inline JSON ({"blocks": [...]} or a bare [...]) or a
// path to a file holding either form.
StarAlgebra load_algebra(const std::string& spec) {
  std::string text = spec;
  const auto first = spec.find_first_not_of(" \t\r\n");
  if (first == std::string::npos ||
      (spec[first] != '{' && spec[first] != '[')) {
    text = read_text(spec);
  }
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) {
    throw ParseError("algebra spec is not valid JSON");
  }
  if (j.is_array()) {
    j = json{{"blocks", j}};
  }
  return algebra_from_json(j.dump());
}

json report_json(const ResidualReport& r) {
  return json{{"residual", r.max_residual},
              {"tolerance", r.tolerance},
              {"passed", r.passed},
              {"witness", {r.witness_a, r.witness_b}}};
}

int run_check(const std::string& in_path,
              const std::optional<std::string>& out_path,
              const std::string& as_class, double tol) {
  const LinearOperator op = operator_from_json(read_text(in_path));
  const ResidualReport lie = lie_residual(op, tol);
  const ResidualReport leibniz = leibniz_residual(op, tol);
  const ResidualReport trace = trace_residual(op, tol);

  json j{{"lie", report_json(lie)},
         {"leibniz", report_json(leibniz)},
         {"trace", report_json(trace)}};
  json classes = json::array();
  if (lie.passed) classes.push_back("lie");
  if (leibniz.passed) classes.push_back("derivation");
  if (trace.passed) classes.push_back("trace");
  j["classification"] = classes;

  const auto line = [](const char* name, const ResidualReport& r) {
    std::cout << name << ": " << (r.passed ? "pass" : "fail") << " (residual "
              << r.max_residual << ")\n";
  };
  line("lie", lie);
  line("leibniz", leibniz);
  line("trace", trace);
  if (out_path) {
    write_text(*out_path, j.dump(2) + "\n");
  }

  bool requested_passed = lie.passed;
  if (as_class == "derivation") requested_passed = leibniz.passed;
  if (as_class == "trace") requested_passed = trace.passed;
  return requested_passed ? kOk : kSemanticFailure;
}

int run_decompose(const std::string& in_path,
                  const std::optional<std::string>& out_path, double tol) {
  const LinearOperator op = operator_from_json(read_text(in_path));
  try {
    const StandardForm form = standard_form(op, tol);
    emit(out_path, standard_form_to_json(form));
    return kOk;
  } catch (const DecompositionError& err) {
    json j{{"error",
            {{"stage", err.stage},
             {"witness", {err.witness_a, err.witness_b}},
             {"residual", err.residual},
             {"message", err.what()}}}};
    emit(out_path, j.dump(2) + "\n");
    return kSemanticFailure;
  }
}

int run_generate(const std::string& algebra_spec, std::uint64_t seed,
                 const std::string& mode, const std::string& out_path) {
  const StarAlgebra algebra = load_algebra(algebra_spec);
  const SampleMode sample_mode = mode == "groundtruth"
                                     ? SampleMode::kGroundTruth
                                     : SampleMode::kNullspace;
  const SampledOperator sample =
      sample_lie_derivation(algebra, seed, sample_mode);
  write_text(out_path, operator_to_json(sample.op));
  if (sample.truth) {
    write_text(out_path + ".truth.json",
               ground_truth_to_json(algebra, *sample.truth));
  }
  return kOk;
}

int run_spectrum(const std::string& algebra_spec,
                 const std::optional<std::string>& out_path) {
  const StarAlgebra algebra = load_algebra(algebra_spec);
  const int lie_dim =
      static_cast<int>(lie_derivation_space(algebra).size());
  const int inner_dim = qr_rank(inner_parametrization_matrix(algebra));
  const int trace_dim = qr_rank(trace_parametrization_matrix(algebra));
  const int predicted = inner_dim + trace_dim;
  json j{{"lie", lie_dim},
         {"inner", inner_dim},
         {"trace", trace_dim},
         {"predicted", predicted},
         {"match", lie_dim == predicted}};
  emit(out_path, j.dump(2) + "\n");
  return lie_dim == predicted ? kOk : kSemanticFailure;
}

// ---- verify -------------------------------------------------------------

struct CheckAccumulator {
  std::string name;
  double tolerance;
  double max_residual = 0.0;
  std::uint64_t worst_seed = 0;
  bool ran = false;

  void update(double residual, std::uint64_t seed) {
    ran = true;
    if (residual >= max_residual) {
      max_residual = residual;
      worst_seed = seed;
    }
  }
  bool passed() const { return !ran || max_residual <= tolerance; }
};

json accumulator_json(const CheckAccumulator& c) {
  json j{{"name", c.name},
         {"max_residual", c.max_residual},
         {"tolerance", c.tolerance},
         {"passed", c.passed()}};
  if (c.ran) j["worst_seed"] = c.worst_seed;
  return j;
}

// Runs the decomposition pipeline past the Lie gate and names the first
// stage that rejects the operator ("" when everything passes).
std::string first_failing_stage(const LinearOperator& op,
                                const PeirceFrame& frame, double tol) {
  try {
    const Normalization n = normalize(op, frame, tol);
    const ResidualReport cp =
        corner_preservation_residual(n.normalized, frame, tol);
    if (!cp.passed) {
      throw DecompositionError("corner-preservation", cp.witness_a,
                               cp.witness_b, cp.max_residual,
                               "off-corner leakage");
    }
    decompose_normalized(n.normalized, frame, tol);
    return "";
  } catch (const DecompositionError& err) {
    return err.stage;
  }
}

json run_adversarial_cases(const StarAlgebra& algebra, double tol,
                           bool& all_caught) {
  const StarAlgebra sub = noncommutative_part(algebra);
  const PeirceFrame frame = PeirceFrame::halving(sub);
  const int n = sub.coord_dim();
  json cases = json::array();

  const auto record = [&](const std::string& name,
                          const std::string& expected,
                          const std::string& actual) {
    const bool caught = actual == expected;
    all_caught = all_caught && caught;
    cases.push_back(json{{"name", name},
                         {"expected_stage", expected},
                         {"reported_stage", actual},
                         {"caught", caught}});
  };

  // The identity map fails the front gate outright.
  try {
    standard_form(LinearOperator::identity_map(sub), tol);
    record("identity-map", "lie", "");
  } catch (const DecompositionError& err) {
    record("identity-map", "lie", err.stage);
  }

  // Sends the first diagonal unit of p1 to itself: the projection image
  // picks up a non-central diagonal corner.
  Eigen::MatrixXcd noncentral = Eigen::MatrixXcd::Zero(n, n);
  noncentral(0, 0) = 1.0;
  record("noncentral-projection-image", "normalizer-centrality",
         first_failing_stage(LinearOperator(sub, noncentral), frame, tol));

  // Swaps the S_12 and S_21 coordinates.
  Eigen::MatrixXcd flip = Eigen::MatrixXcd::Zero(n, n);
  for (int k = 0; k < sub.num_blocks(); ++k) {
    const int half = sub.block_dim(k) / 2;
    for (int i = 0; i < half; ++i) {
      for (int j = half; j < sub.block_dim(k); ++j) {
        flip(sub.unit_index(k, j, i), sub.unit_index(k, i, j)) = 1.0;
        flip(sub.unit_index(k, i, j), sub.unit_index(k, j, i)) = 1.0;
      }
    }
  }
  record("corner-flip", "corner-preservation",
         first_failing_stage(LinearOperator(sub, flip), frame, tol));

  // Sends a diagonal-corner unit into an off-diagonal corner.
  Eigen::MatrixXcd leak = Eigen::MatrixXcd::Zero(n, n);
  const int half0 = sub.block_dim(0) / 2;
  leak(sub.unit_index(0, 0, half0), sub.unit_index(0, half0, half0)) = 1.0;
  record("diagonal-leak", "diagonal-split",
         first_failing_stage(LinearOperator(sub, leak), frame, tol));

  return cases;
}

int run_verify(const std::string& algebra_spec, std::uint64_t base_seed,
               int count, double tol, bool adversarial,
               const std::optional<std::string>& out_path) {
  const StarAlgebra algebra = load_algebra(algebra_spec);
  const auto [z0, z1] = split_commutative(algebra);
  const bool has_noncommutative = !z1.coefficients().isZero(0.0);

  std::vector<CheckAccumulator> checks;
  checks.reserve(16);  // references below must stay valid
  const auto acc = [&](const std::string& name) -> CheckAccumulator& {
    checks.push_back(CheckAccumulator{name, tol});
    return checks.back();
  };
  auto& bracket = acc("bracket-identity");
  auto& witness_check = acc("corner-witness");
  auto& normalizer = acc("normalizer");
  auto& preservation = acc("corner-preservation");
  auto& diag_split = acc("diagonal-split");
  auto& center_stability = acc("center-stability");
  auto& cross = acc("cross-traces");
  auto& annihilation = acc("commutator-annihilation");
  auto& frames_agree = acc("frame-independence");
  auto& reconstruction = acc("reconstruction");

  std::optional<PeirceFrame> frame;
  std::optional<PeirceFrame> alt_frame;
  std::optional<CornerWitness> witness;
  if (has_noncommutative) {
    const StarAlgebra sub = noncommutative_part(algebra);
    frame = PeirceFrame::halving(sub);
    AlgebraElement trailing = AlgebraElement::zero(sub);
    for (int k = 0; k < sub.num_blocks(); ++k) {
      const int d = sub.block_dim(k);
      for (int r = 0; r < d / 2; ++r) {
        trailing = trailing +
                   AlgebraElement::matrix_unit(sub, k, d - 1 - r, d - 1 - r);
      }
    }
    alt_frame = PeirceFrame::from_projection(trailing);
    witness = corner_witness(*frame);
  }

  for (std::uint64_t seed = base_seed; seed < base_seed + count; ++seed) {
    const auto sample =
        sample_lie_derivation(algebra, seed, SampleMode::kGroundTruth);
    const LinearOperator& op = sample.op;
    Rng rng(seed ^ 0x9e3779b97f4a7c15ull);

    // Bracket identity at a random projection against a random element.
    std::vector<int> ranks;
    for (int d : algebra.block_dims()) ranks.push_back(d / 2);
    const auto p = random_projection(algebra, ranks, rng);
    bracket.update(
        projection_bracket_residual(op, p, random_element(algebra, rng))
            .max_residual,
        seed);

    for (const auto& z : center_basis(algebra)) {
      center_stability.update(
          central_defect(op.apply(z.embed())) / (1.0 + op.frobenius_norm()),
          seed);
    }

    const auto f = cross_traces(op, z0, z1);
    cross.update(trace_residual(f.F1, tol).max_residual, seed);
    cross.update(trace_residual(f.F2, tol).max_residual, seed);
    cross.update(trace_residual(f.F3, tol).max_residual, seed);

    if (has_noncommutative) {
      const LinearOperator sub_op = restrict_to_noncommutative(op);
      const StarAlgebra& sub = sub_op.algebra();

      const auto x11 =
          peirce_split(random_element(sub, rng), *frame).x11;
      witness_check.update(
          norm(x11 - mul(x11, mul(witness->y, witness->u))) /
              (1.0 + norm(x11)),
          seed);

      const Normalization norm_step = normalize(sub_op, *frame, tol);
      const double scale = 1.0 + sub_op.frobenius_norm();
      normalizer.update(
          norm(sub_op.apply(frame->p1()) -
               commutator(frame->p1(), norm_step.a) - norm_step.z) /
              scale,
          seed);
      normalizer.update(
          norm(norm_step.normalized.apply(frame->p1()) - norm_step.z) / scale,
          seed);

      preservation.update(
          corner_preservation_residual(norm_step.normalized, *frame, tol)
              .max_residual,
          seed);

      for (const int corner : {1, 2}) {
        const auto x = corner == 1
                           ? peirce_split(random_element(sub, rng), *frame).x11
                           : peirce_split(random_element(sub, rng), *frame).x22;
        const auto split =
            diagonal_corner_split(norm_step.normalized, x, corner, *frame, tol);
        diag_split.update(split.corner_defect, seed);
      }
    }

    const StandardForm form = standard_form(op, tol);
    reconstruction.update(form.residuals.reconstruction, seed);
    reconstruction.update(form.residuals.leibniz, seed);
    reconstruction.update(form.residuals.trace, seed);

    for (int round = 0; round < 3; ++round) {
      const auto x = random_element(algebra, rng);
      const auto y = random_element(algebra, rng);
      annihilation.update(
          norm(form.E.apply(commutator(x, y))) /
              ((1.0 + norm(x)) * (1.0 + norm(y))),
          seed);
    }

    if (has_noncommutative) {
      const StandardForm alt = standard_form(op, *alt_frame, tol);
      const double scale = 1.0 + op.frobenius_norm();
      frames_agree.update(
          (form.D.matrix() - alt.D.matrix()).norm() / scale, seed);
      frames_agree.update(
          (form.E.matrix() - alt.E.matrix()).norm() / scale, seed);
    }
  }

  bool all_passed = true;
  json check_list = json::array();
  for (const auto& c : checks) {
    all_passed = all_passed && c.passed();
    check_list.push_back(accumulator_json(c));
  }

  json j{{"algebra", algebra.block_dims()},
         {"seed", base_seed},
         {"count", count},
         {"tolerance", tol},
         {"checks", check_list},
         {"passed", all_passed}};

  if (adversarial) {
    if (!has_noncommutative) {
      throw PreconditionError(
          "adversarial cases need a noncommutative part");
    }
    bool all_caught = true;
    j["adversarial"] = run_adversarial_cases(algebra, tol, all_caught);
    j["passed"] = all_passed && all_caught;
    all_passed = all_passed && all_caught;
  }

  emit(out_path, j.dump(2) + "\n");
  return all_passed ? kOk : kSemanticFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Decomposes Lie derivations on finite-dimensional *-algebras into an "
      "associative derivation plus a center-valued trace"};
  app.require_subcommand(1);

  std::string in_path;
  std::string algebra_spec;
  std::optional<std::string> out_path;
  std::string generate_out;
  std::string as_class = "lie";
  std::string mode = "groundtruth";
  std::uint64_t seed = 0;
  int count = 50;
  double tol = kDefaultTolerance;
  bool adversarial = false;

  auto* check = app.add_subcommand("check", "Classify an operator file");
  check->add_option("--in", in_path, "Operator JSON file")->required();
  check->add_option("--out", out_path, "Write the JSON report here");
  check->add_option("--as", as_class, "Class the exit code answers for")
      ->check(CLI::IsMember({"lie", "derivation", "trace"}));
  check->add_option("--tol", tol, "Residual tolerance")
      ->envname("LIEDERIV_TOL");

  auto* decompose =
      app.add_subcommand("decompose", "Write the standard-form report");
  decompose->add_option("--in", in_path, "Operator JSON file")->required();
  decompose->add_option("--out", out_path, "Report path (default stdout)");
  decompose->add_option("--tol", tol, "Residual tolerance")
      ->envname("LIEDERIV_TOL");

  auto* generate =
      app.add_subcommand("generate", "Emit a seeded Lie derivation");
  generate->add_option("--algebra", algebra_spec, "Algebra spec file or inline JSON")
      ->required();
  generate->add_option("--seed", seed, "Generator seed")->required();
  generate->add_option("--mode", mode, "groundtruth or nullspace")
      ->check(CLI::IsMember({"groundtruth", "nullspace"}));
  generate->add_option("--out", generate_out, "Operator output path")
      ->required();

  auto* spectrum = app.add_subcommand(
      "spectrum", "Report derivation-space dimensions and their split");
  spectrum->add_option("--algebra", algebra_spec, "Algebra spec file or inline JSON")
      ->required();
  spectrum->add_option("--out", out_path, "Write the JSON report here");

  auto* verify =
      app.add_subcommand("verify", "Run the invariant suite over seeds");
  verify->add_option("--algebra", algebra_spec, "Algebra spec file or inline JSON")
      ->required();
  verify->add_option("--seed", seed, "Base seed");
  verify->add_option("--count", count, "Number of seeds")
      ->check(CLI::PositiveNumber);
  verify->add_option("--tol", tol, "Residual tolerance")
      ->envname("LIEDERIV_TOL");
  verify->add_flag("--adversarial", adversarial,
                   "Also check that corrupted operators are rejected at "
                   "their stage");
  verify->add_option("--out", out_path, "Write the JSON report here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInputError;
  }

  try {
    if (check->parsed()) {
      return run_check(in_path, out_path, as_class, tol);
    }
    if (decompose->parsed()) {
      return run_decompose(in_path, out_path, tol);
    }
    if (generate->parsed()) {
      return run_generate(algebra_spec, seed, mode, generate_out);
    }
    if (spectrum->parsed()) {
      return run_spectrum(algebra_spec, out_path);
    }
    if (verify->parsed()) {
      return run_verify(algebra_spec, seed, count, tol, adversarial, out_path);
    }
  } catch (const ParseError& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kInputError;
  } catch (const InvalidSpecError& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kInputError;
  } catch (const Error& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kSemanticFailure;
  }
  return kInputError;
}
