// chartan: analyze presentations, fuzz identities, run deformation workflows.
//
// Exit codes: 0 success, 2 input error, 3 failed cross-check or failing
// suite, 4 mathematical degeneracy.

#include "chartan/errors.hpp"
#include "chartan/homology.hpp"
#include "chartan/io.hpp"
#include "chartan/jets.hpp"
#include "chartan/parallelogram.hpp"
#include "chartan/suites.hpp"

#include <CLI11.hpp>
#include <Eigen/LU>

#include <fstream>
#include <iostream>
#include <sstream>

using namespace chartan;

namespace {

constexpr const char* kVersion = "0.1.0";

enum ExitCode { kOk = 0, kInput = 2, kCrossCheck = 3, kDegenerate = 4 };

void emit(const Json& j) { std::cout << j.dump(2) << '\n'; }

std::vector<std::string> split_commas(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream in(text);
  std::string part;
  while (std::getline(in, part, ','))
    if (!part.empty()) out.push_back(part);
  return out;
}

template <class S>
double magnitude(const S& x) {
  return ScalarTraits<S>::magnitude(x);
}

template <class S>
int numeric_rank(const MatrixX<S>& m) {
  if constexpr (ScalarTraits<S>::exact) {
    return static_cast<int>(exact_rank(m));
  } else {
    Eigen::FullPivLU<MatrixX<S>> lu(m);
    lu.setThreshold(default_tolerance());
    return static_cast<int>(lu.rank());
  }
}

// ---------------------------------------------------------------------------
// analyze

F2Witness load_witness(const std::string& path, const Presentation& p) {
  const Json j = load_json(path);
  if (!j.contains("target") || !j["target"].is_array() || j["target"].size() != 2)
    throw InputError("witness: \"target\" must list the two free generators");
  F2Witness w;
  for (const auto& name : j["target"]) w.target_names.push_back(name.get<std::string>());
  if (!j.contains("images") || !j["images"].is_object()) throw InputError("witness: \"images\" must be an object");
  for (const auto& g : p.generator_names) {
    if (!j["images"].contains(g)) throw InputError("witness: no image for generator '" + g + "'");
    w.hom.images.push_back(parse_word(j["images"][g].get<std::string>(), w.target_names));
  }
  return w;
}

int cmd_analyze(const std::string& path, const std::string& witness_path, std::uint64_t seed, bool json) {
  const Presentation p = load_presentation(path);
  const HomologyData h = compute_h1(p);
  const ESpace e = e_space_basis(h);
  const DescentSolution descent = descent_solve(p);
  const std::optional<F2Witness> witness =
      witness_path.empty() ? std::nullopt : std::optional<F2Witness>(load_witness(witness_path, p));
  const SmoothnessReport verdict = smoothness_verdict(p, witness);

  const int r = h.h1_rank;
  const int dim_q = r * (r + 1) / 2;
  if (descent.dimension != dim_q + e.dimension)
    throw CrossCheckError("descent dimension " + std::to_string(descent.dimension) + " differs from dim Q + dim E = " +
                          std::to_string(dim_q) + " + " + std::to_string(e.dimension));

  // Spot check: every descended basis function is constant on relator cosets.
  int spot_checks = 0;
  for (std::size_t b = 0; b < descent.basis.size(); ++b) {
    Rng rng(derive_seed(seed, "analyze", b));
    for (int k = 0; k < 8 && !p.relators.empty(); ++k) {
      const Word x = random_word_up_to(rng, p.rank(), 6);
      const Word& rel = p.relators[rng.below(p.relators.size())];
      if (eval_parallelogram(descent.basis[b], x * rel) != eval_parallelogram(descent.basis[b], x))
        throw CrossCheckError("descended function " + std::to_string(b) + " is not constant on a relator coset");
      ++spot_checks;
    }
  }

  Json relators = Json::array();
  for (const Word& w : p.relators) relators.push_back(print_word(w, p.generator_names));
  Json torsion = Json::array();
  for (const Integer& t : h.torsion) torsion.push_back(t.str());
  Json trivial = Json::array();
  for (std::size_t j = static_cast<std::size_t>(h.reduction.ell); j < h.reduction.relators.size(); ++j)
    trivial.push_back(print_word(h.reduction.relators[j], p.generator_names));

  Json report;
  report["presentation"] = {{"generators", p.generator_names}, {"relators", relators}};
  report["h1"] = {{"rank", r}, {"torsion", torsion}};
  report["dim_Q"] = dim_q;
  report["dim_E"] = e.dimension;
  report["dim_P"] = descent.dimension;
  report["omega_dim"] = e.dimension;
  report["h2_generator_upper_bound"] = h.h2_generator_upper_bound();
  report["reduced_relators"] = {{"count", h.reduction.relators.size()},
                                {"independent", h.reduction.ell},
                                {"trivial_abelianization", trivial}};
  report["smoothness"] = {{"verdict", to_string(verdict.verdict)}, {"reason", verdict.reason}, {"n", verdict.n}};
  report["descent_spot_checks"] = spot_checks;
  report["seed"] = seed;
  report["version"] = kVersion;

  if (json) {
    emit(report);
  } else {
    std::cout << print_presentation(p) << '\n'
              << "H1: rank " << r << (h.torsion.empty() ? "" : ", torsion " + torsion.dump()) << '\n'
              << "dim Q = " << dim_q << ", dim E = " << e.dimension << ", dim P = " << descent.dimension
              << " (descent agrees)\n"
              << "H2 generators (upper bound): " << h.h2_generator_upper_bound() << '\n'
              << "smoothness at the trivial character: " << to_string(verdict.verdict) << " (" << verdict.reason << ")\n";
  }
  return kOk;
}

// ---------------------------------------------------------------------------
// check

int cmd_check(const std::string& suites, const SuiteOptions& options, bool json) {
  std::vector<std::string> names = suites == "all" ? suite_names() : split_commas(suites);
  if (names.empty()) throw InputError("--suite needs at least one name");
  Json results = Json::array();
  bool all_pass = true;
  for (const auto& name : names) {
    const SuiteResult result = run_suite(name, options);
    all_pass = all_pass && result.passed();
    results.push_back(to_json(result));
    if (!json)
      std::cout << name << ": " << (result.passed() ? "PASS" : "FAIL") << " (" << result.trials << " trials, "
                << result.failures << " failures, max residual " << to_string(result.max_residual) << ")\n";
  }
  if (json) {
    emit(Json{{"seed", options.seed},
              {"rank", options.rank},
              {"iters", options.iters},
              {"len", options.len},
              {"n", options.n},
              {"suites", results},
              {"status", all_pass ? "PASS" : "FAIL"}});
  } else {
    std::cout << (all_pass ? "PASS" : "FAIL") << '\n';
  }
  return all_pass ? kOk : kCrossCheck;
}

// ---------------------------------------------------------------------------
// deform

template <class S>
Json jet_report(const RepresentationData<S>& rep, ScalarMode mode) {
  const CharacterJet<S> jet = character_jet_from_rep(rep.gens, rep.order);
  const int rank = static_cast<int>(rep.gens.size());
  // Pairs of generators and of their two-letter products, in a fixed order.
  std::vector<Word> probes;
  for (int i = 1; i <= rank; ++i) probes.push_back(Word::generator(i));
  for (int i = 1; i <= rank; ++i)
    for (int j = 1; j <= rank; ++j)
      if (i != j) probes.push_back(Word::generator(i) * Word::generator(j));
  std::vector<std::pair<Word, Word>> pairs;
  for (const Word& x : probes)
    for (const Word& y : probes) pairs.emplace_back(x, y);

  Json equations = Json::array();
  bool all_hold = true;
  for (int n = 1; n <= rep.order; ++n) {
    const auto check = verify_jet_equation(jet, n, pairs);
    double worst = 0.0;
    for (const S& r : check.residuals) worst = std::max(worst, magnitude(r));
    all_hold = all_hold && check.holds;
    equations.push_back({{"order", n}, {"holds", check.holds}, {"max_residual", worst}});
  }
  Json out;
  out["mode"] = to_string(mode);
  out["order"] = rep.order;
  out["generators"] = rep.names;
  Json traces = Json::object();
  for (int i = 0; i < rank; ++i) traces[rep.names[static_cast<std::size_t>(i)]] = series_to_json(jet.trace(Word::generator(i + 1)));
  out["traces"] = traces;
  out["jet_equation"] = equations;
  if (rep.order >= 1) {
    const MatrixX<S> b = extract_bilinear(jet, rank);
    Json rows = Json::array();
    for (int i = 0; i < rank; ++i) {
      Json row = Json::array();
      for (int j = 0; j < rank; ++j) row.push_back(scalar_to_json(b(i, j)));
      rows.push_back(row);
    }
    const int r = numeric_rank(b);
    out["bilinear"] = rows;
    out["bilinear_rank"] = r;
    out["bilinear_rank_at_most_2"] = r <= 2;
  }
  out["status"] = all_hold ? "PASS" : "FAIL";
  if (!all_hold) throw CrossCheckError("jet equation fails for the supplied representation:\n" + out.dump(2));
  return out;
}

int cmd_deform_jet(const std::string& path) {
  const Json j = load_json(path);
  switch (const ScalarMode mode = detect_mode(j)) {
    case ScalarMode::kRational: emit(jet_report(parse_representation<Rational>(j), mode)); break;
    case ScalarMode::kGaussian: emit(jet_report(parse_representation<GaussianRational>(j), mode)); break;
    case ScalarMode::kFloating: emit(jet_report(parse_representation<Complex>(j), mode)); break;
  }
  return kOk;
}

int cmd_deform_obstruct(const std::string& path, bool presented) {
  const FirstOrderData data = parse_first_order(load_json(path));
  const ObstructionReport report = obstruction_report(data.q, data.phi, !presented);
  emit(Json{{"order2", report.order2_extendable},
            {"order3", report.order3_extendable},
            {"rank", report.rank},
            {"semantics", report.semantics}});
  return kOk;
}

template <class S>
std::pair<Json, int> parabolic_run(const VectorX<S>& first, const VectorX<S>& second, const RationalMatrix& q,
                                   int order, std::uint64_t seed) {
  const int rank = static_cast<int>(first.size());
  RepresentationData<S> rep;
  rep.order = order;
  rep.names = default_generator_names(rank);
  for (const auto& m : build_parabolic_deformation(first, second)) rep.gens.push_back(truncated<S>(m, order + 1));

  GroupHom<Mat2<S>> hom{rep.gens};
  Rng rng(derive_seed(seed, "parabolic", 0));
  std::vector<Word> words;
  for (int i = 1; i <= rank; ++i) words.push_back(Word::generator(i));
  for (int k = 0; k < 64; ++k) words.push_back(random_word_up_to(rng, rank, 10));
  double worst = 0.0;
  for (const Word& w : words) {
    const Series<S> tr = trace<S>(evaluate_hom(w, hom, Mat2Ops<S>{2}));
    const RationalVector x = to_rational(abelianize(w, rank));
    const Series<S> expected = Series<S>(S(2)) + Series<S>::t() * Series<S>(ScalarTraits<S>::from_rational(quadratic_value(q, x)));
    worst = std::max(worst, residual(tr, expected, 2));
  }
  return {Json{{"rep", to_json(rep)}, {"words_checked", words.size()}, {"max_residual", worst},
               {"trace_check", within_tolerance<S>(worst) ? "PASS" : "FAIL"}},
          within_tolerance<S>(worst) ? kOk : kCrossCheck};
}

int cmd_deform_parabolic(const std::string& path, int order, const std::string& out_path, std::uint64_t seed,
                         bool json) {
  if (order < 1 || order > 64) throw InputError("--order must be in 1..64");
  const FirstOrderData data = parse_first_order(load_json(path));
  if (!data.phi.isZero()) throw DegeneracyError("ORDER2_OBSTRUCTED", "phi is nonzero, so no order-2 jet exists");
  const ObstructionReport obstruction = obstruction_report(data.q, data.phi);
  if (!obstruction.order3_extendable)
    throw DegeneracyError("RANK_EXCEEDS_TWO",
                          "q has rank " + std::to_string(obstruction.rank) + "; a parabolic deformation needs rank <= 2");
  const FormFactorization f = factor_quadratic_form(data.q);
  auto [result, code] = f.exact ? parabolic_run<GaussianRational>(f.first, f.second, data.q, order, seed)
                                : parabolic_run<Complex>(f.first_floating, f.second_floating, data.q, order, seed);
  result["mode"] = f.exact ? to_string(ScalarMode::kGaussian) : to_string(ScalarMode::kFloating);
  if (!out_path.empty()) {
    std::ofstream out(out_path);
    if (!out) throw InputError("cannot write '" + out_path + "'");
    out << result["rep"].dump(2) << '\n';
  }
  if (json) {
    emit(result);
  } else {
    if (out_path.empty()) std::cout << result["rep"].dump(2) << '\n';
    else std::cout << "wrote " << out_path << '\n';
    std::cout << "trace check: " << result["trace_check"].get<std::string>() << '\n';
  }
  return code;
}

template <class S>
Json lift_report(const TraceTriple<S>& traces, ScalarMode mode) {
  const TwoGeneratorLift<S> lift = lift_two_generator_character(traces.x, traces.y, traces.z, traces.order);
  Json out;
  out["mode"] = to_string(mode);
  out["order"] = traces.order;
  out["branch"] = lift.branch;
  out["precision"] = lift.precision;
  out["A"] = matrix_to_json(truncated<S>(lift.a, lift.precision));
  out["B"] = matrix_to_json(truncated<S>(lift.b, lift.precision));
  out["residuals"] = {{"trace_a", lift.residuals[0]}, {"trace_b", lift.residuals[1]}, {"trace_ab", lift.residuals[2]}};
  out["tolerance"] = ScalarTraits<S>::exact ? 0.0 : default_tolerance();
  out["status"] = "PASS";
  return out;
}

template <class S>
TraceTriple<S> with_order(TraceTriple<S> traces, int order) {
  if (order < 0) return traces;
  if (order > traces.order)
    throw InputError("--order " + std::to_string(order) + " exceeds the file's order " + std::to_string(traces.order));
  traces.order = order;
  return traces;
}

int cmd_deform_lift(const std::string& path, int order) {
  const Json j = load_json(path);
  switch (const ScalarMode mode = detect_mode(j)) {
    case ScalarMode::kRational: emit(lift_report(with_order(parse_trace_triple<Rational>(j), order), mode)); break;
    case ScalarMode::kGaussian:
      emit(lift_report(with_order(parse_trace_triple<GaussianRational>(j), order), mode));
      break;
    case ScalarMode::kFloating: emit(lift_report(with_order(parse_trace_triple<Complex>(j), order), mode)); break;
  }
  return kOk;
}

int report_error(const std::string& code, const std::string& message, int exit_code, bool json) {
  std::cerr << "error (" << code << "): " << message << '\n';
  if (json) emit(Json{{"status", "error"}, {"code", code}, {"reason", message}});
  return exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Trivial-character deformations of SL2 character varieties"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);
  bool json = false;

  auto* analyze = app.add_subcommand("analyze", "Analyze a presentation at the trivial character");
  std::string pres_path, witness_path;
  std::uint64_t analyze_seed = 1;
  analyze->add_option("path", pres_path, "Presentation file")->required();
  analyze->add_option("--witness", witness_path, "JSON file with a surjection onto F2");
  analyze->add_option("--seed", analyze_seed, "Seed for the descent spot checks");
  analyze->add_flag("--json", json, "Emit JSON");

  auto* check = app.add_subcommand("check", "Run seeded identity suites");
  std::string suites = "all";
  SuiteOptions options;
  check->add_option("--suite", suites, "Comma-separated suite names, or 'all'");
  check->add_option("--rank", options.rank, "Free group rank");
  check->add_option("--iters", options.iters, "Trials per suite");
  check->add_option("--len", options.len, "Maximum word length");
  check->add_option("--seed", options.seed, "Seed");
  check->add_option("--n", options.n, "Dimension for the frobenius suite");
  check->add_flag("--json", json, "Emit JSON");

  auto* deform = app.add_subcommand("deform", "Jet, obstruction, deformation and lifting workflows");
  deform->require_subcommand(1);
  std::string rep_path, f1_path, q_path, traces_path, out_path;
  int order = 6;
  bool presented = false;
  std::uint64_t deform_seed = 1;
  auto* jet = deform->add_subcommand("jet", "Verify the jet of a representation file");
  jet->add_option("--rep", rep_path, "Representation JSON")->required();
  auto* obstruct = deform->add_subcommand("obstruct", "Obstructions for first-order data");
  obstruct->add_option("--f1", f1_path, "(q, phi) JSON")->required();
  obstruct->add_flag("--presented", presented, "Data lives on a presented group: conditions are only necessary");
  auto* parabolic = deform->add_subcommand("parabolic", "Parabolic deformation of a rank <= 2 form");
  parabolic->add_option("--q", q_path, "(q, phi) JSON")->required();
  parabolic->add_option("--order", order, "Jet order of the emitted representation");
  parabolic->add_option("--out", out_path, "Write the representation JSON here");
  parabolic->add_option("--seed", deform_seed, "Seed for the trace check words");
  parabolic->add_flag("--json", json, "Emit JSON");
  auto* lift = deform->add_subcommand("lift", "Lift a two-generator trace triple to matrices");
  lift->add_option("--traces", traces_path, "Trace-triple JSON")->required();
  int lift_order = -1;
  lift->add_option("--order", lift_order, "Truncation order (defaults to the file's)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInput;
  }

  const bool json_errors = json || deform->parsed();
  try {
    if (analyze->parsed()) return cmd_analyze(pres_path, witness_path, analyze_seed, json);
    if (check->parsed()) return cmd_check(suites, options, json);
    if (jet->parsed()) return cmd_deform_jet(rep_path);
    if (obstruct->parsed()) return cmd_deform_obstruct(f1_path, presented);
    if (parabolic->parsed()) return cmd_deform_parabolic(q_path, order, out_path, deform_seed, json);
    if (lift->parsed()) return cmd_deform_lift(traces_path, lift_order);
  } catch (const DegeneracyError& e) {
    return report_error(e.code(), e.what(), kDegenerate, json_errors);
  } catch (const CrossCheckError& e) {
    return report_error("CROSS_CHECK", e.what(), kCrossCheck, json_errors);
  } catch (const std::invalid_argument& e) {
    return report_error("INPUT", e.what(), kInput, json_errors);
  } catch (const nlohmann::json::exception& e) {
    return report_error("INPUT", e.what(), kInput, json_errors);
  } catch (const std::exception& e) {
    return report_error("INTERNAL", e.what(), kCrossCheck, json_errors);
  }
  return kOk;
}
