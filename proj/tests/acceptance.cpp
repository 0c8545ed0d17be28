// Acceptance run: one PASS/FAIL line per criterion, with the tolerances and
// time budgets fixed below. Exits nonzero if any criterion fails.

#include "chartan/errors.hpp"
#include "chartan/homology.hpp"
#include "chartan/jets.hpp"
#include "chartan/parallelogram.hpp"
#include "chartan/permutation.hpp"
#include "chartan/pseudochar.hpp"
#include "chartan/suites.hpp"

#include <chrono>
#include <functional>
#include <map>
#include <iomanip>
#include <iostream>
#include <sstream>

using namespace chartan;

namespace {

constexpr double kFloatingTolerance = 1e-9;

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Appends to the detail text and folds a condition into the verdict.
struct Tally {
  Outcome out;
  std::ostringstream text;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      out.pass = false;
      text << "[failed: " << what << "] ";
    }
  }
  void note(const std::string& what) { text << what << ' '; }
  Outcome finish() {
    out.detail = text.str();
    if (!out.detail.empty()) out.detail.pop_back();
    return out;
  }
};

bool run_criterion(int number, const std::string& title, double budget_seconds, const std::function<Outcome()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Outcome outcome;
  try {
    outcome = body();
  } catch (const std::exception& e) {
    outcome = {false, std::string("unexpected exception: ") + e.what()};
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const bool in_time = budget_seconds <= 0 || seconds < budget_seconds;
  const bool pass = outcome.pass && in_time;
  std::cout << (pass ? "PASS" : "FAIL") << "  " << std::setw(2) << number << ". " << title << " -- " << outcome.detail
            << (in_time ? "" : " [over time budget]") << " (" << std::fixed << std::setprecision(2) << seconds << " s";
  if (budget_seconds > 0) std::cout << " of " << budget_seconds << " s";
  std::cout << ")\n";
  return pass;
}

void suite_outcome(Tally& tally, const std::string& name, const SuiteOptions& options) {
  const SuiteResult r = run_suite(name, options);
  tally.require(r.passed() && r.max_residual == 0, name + " residual " + to_string(r.max_residual));
}

Presentation corpus(const std::string& name) {
  return load_presentation(std::string(CHARTAN_DATA_DIR) + "/" + name + ".pres");
}

Outcome counting_anchor() {
  Tally l;
  const auto names = default_generator_names(3);
  l.require(counting_f3(parse_word("abc", names)) == 1, "f(abc) = 1");
  l.require(counting_f3(parse_word("cba", names)) == -1, "f(cba) = -1");
  SuiteOptions o;
  o.iters = 500;
  o.len = 14;
  o.seed = 1;
  suite_outcome(l, "counting", o);
  l.note("f(abc)=1, f(cba)=-1, 500 words of length <= 14 agree with the dual volume form, residual 0");
  return l.finish();
}

Outcome identity_suite() {
  Tally l;
  SuiteOptions o;
  o.iters = 100;
  o.len = 8;
  for (const char* name : {"parallelogram", "elem", "cubic", "alter3", "versggg"})
    for (int rank = 1; rank <= 5; ++rank) {
      o.rank = rank;
      o.seed = static_cast<std::uint64_t>(rank);
      suite_outcome(l, name, o);
    }
  o.rank = 4;
  o.seed = 1;
  for (const char* name : {"formule4", "noyaup"}) suite_outcome(l, name, o);
  l.note("5 identities x 500 random (q, phi) on F1..F5; FORMULE4, NOYAUP on 100 SL2(Z) reps of F4; residual 0");
  return l.finish();
}

Outcome descent_cross_check() {
  Tally l;
  const std::map<std::string, int> anchors = {{"f3", 1}, {"z3", 0}, {"genus2", 0}, {"genus3", 14}};
  for (const char* name : {"f2", "f3", "f5", "z2", "z3", "genus2", "genus3", "trefoil", "triangle333"}) {
    const Presentation p = corpus(name);
    const HomologyData h = compute_h1(p);
    const int r = h.h1_rank;
    const int dim_e = e_space_basis(h).dimension;
    const int dim_p = descent_solve(p).dimension;
    l.require(dim_p == r * (r + 1) / 2 + dim_e, std::string(name) + " descent " + std::to_string(dim_p));
    if (auto it = anchors.find(name); it != anchors.end())
      l.require(dim_e == it->second, std::string(name) + " dim E " + std::to_string(dim_e));
  }
  l.note("descent dimension = r(r+1)/2 + dim E on 9 presentations; dim E: F3 1, Z3 0, genus-2 0, genus-3 14");
  return l.finish();
}

Outcome smoothness() {
  Tally l;
  const std::vector<std::pair<std::string, Verdict>> expected = {{"trefoil", Verdict::kSmooth},
                                                                 {"f2", Verdict::kSmooth},
                                                                 {"f3", Verdict::kNotSmooth},
                                                                 {"z3", Verdict::kNotSmooth},
                                                                 {"genus2", Verdict::kNotSmooth},
                                                                 {"triangle333", Verdict::kUnknown}};
  for (const auto& [name, verdict] : expected) {
    const Verdict got = smoothness_verdict(corpus(name)).verdict;
    l.require(got == verdict, name + " gave " + to_string(got));
    l.note(name + "=" + to_string(got));
  }
  return l.finish();
}

Outcome matrix_identities() {
  Tally l;
  SuiteOptions o;
  o.iters = 500;
  o.seed = 1;
  suite_outcome(l, "traceid", o);
  suite_outcome(l, "gram", o);
  Mat2Q a, b;
  a << 1, 1, 0, 1;
  b << 1, 0, 1, 1;
  const auto gram = check_matrix_identity(MatrixIdentity::kGram, a, b);
  l.require(gram.holds && gram.value == -1, "fixed pair Gram det " + to_string(gram.value));
  l.note("500 SL2(Z) pairs, residual 0; fixed pair Gram det " + to_string(gram.value));
  return l.finish();
}

Outcome jets() {
  Tally l;
  SuiteOptions o;
  o.rank = 3;
  o.iters = 50;
  o.len = 6;
  o.seed = 1;
  suite_outcome(l, "jets", o);
  l.note("50 reps of F3 mod t^5: jet equation orders 1-4, rank <= 2, squared-form identity, g2 eps5 = g2 eps6 = 0, residual 0");
  return l.finish();
}

// Rank <= 2 forms from three families that factor over Q(i):
// l1 l2 symmetrized, c l^2, and l1^2 + l2^2.
RationalMatrix factorable_form(Rng& rng, int family, int n) {
  auto vec = [&] {
    RationalVector v(n);
    for (int i = 0; i < n; ++i) v(i) = small_rational(rng);
    return v;
  };
  const RationalVector l1 = vec(), l2 = vec();
  switch (family) {
    case 0: return (l1 * l2.transpose() + l2 * l1.transpose()) / Rational(2);
    case 1: return small_rational(rng) * (l1 * l1.transpose());
    default: return l1 * l1.transpose() + l2 * l2.transpose();
  }
}

Outcome parabolic() {
  Tally l;
  Rng rng(derive_seed(1, "acceptance-parabolic", 0));
  int words_checked = 0, rank_two = 0;
  for (int trial = 0; trial < 20; ++trial) {
    const RationalMatrix q = factorable_form(rng, trial % 3, 4);
    if (exact_rank(q) == 2) ++rank_two;
    const FormFactorization f = factor_quadratic_form(q);
    l.require(f.exact, "form " + std::to_string(trial) + " did not factor exactly");
    if (!f.exact) continue;
    const auto rep = build_parabolic_deformation(f.first, f.second);
    GroupHom<Mat2<GaussianRational>> hom{rep};
    for (int k = 0; k < 100; ++k) {
      const Word w = random_word_up_to(rng, 4, 12);
      const auto tr = trace<GaussianRational>(evaluate_hom(w, hom, Mat2Ops<GaussianRational>{2}));
      const Rational expected = quadratic_value(q, to_rational(abelianize(w, 4)));
      l.require(tr.coefficient(0) == GaussianRational{Rational(2)} && tr.coefficient(1) == GaussianRational{expected},
                "trace mismatch on form " + std::to_string(trial));
      ++words_checked;
    }
  }
  l.note("20 forms on F4 (" + std::to_string(rank_two) + " of rank 2), " + std::to_string(words_checked) +
         " words: Tr = 2 + t q(w) mod t^2 exactly");
  return l.finish();
}

Outcome lifting() {
  Tally l;
  using Q = Series<Rational>;
  Rng rng(derive_seed(1, "acceptance-lift", 0));
  constexpr int kOrder = 8;
  int lifted = 0, min_precision = kOrder + 1;
  double worst = 0.0, worst_floating = 0.0;
  std::map<std::string, int> branches;
  while (lifted < 20) {
    VectorX<Rational> first(2), second(2);
    for (int i = 0; i < 2; ++i) {
      first(i) = small_rational(rng);
      second(i) = small_rational(rng);
    }
    const auto rep = build_parabolic_deformation(first, second);
    const Q x = trace<Rational>(rep[0]).truncated(kOrder + 1);
    const Q y = trace<Rational>(rep[1]).truncated(kOrder + 1);
    const Q z = trace<Rational>(Mat2<Rational>(rep[0] * rep[1])).truncated(kOrder + 1);
    if (trace_discriminant(x, y, z).is_zero()) continue;
    const auto lift = lift_two_generator_character(x, y, z, kOrder);
    for (double r : lift.residuals) worst = std::max(worst, r);
    min_precision = std::min(min_precision, lift.precision);
    ++branches[lift.branch];
    // The same jet in floating mode.
    auto to_c = [](const Q& s) { return s.map<Complex>([](const Rational& c) { return Complex(to_double(c), 0.0); }); };
    const auto floating = lift_two_generator_character(to_c(x), to_c(y), to_c(z), kOrder);
    for (double r : floating.residuals) worst_floating = std::max(worst_floating, r);
    ++lifted;
  }
  l.require(worst == 0.0, "exact residual " + std::to_string(worst));
  l.require(worst_floating <= kFloatingTolerance, "floating residual " + std::to_string(worst_floating));
  bool degenerate = false;
  try {
    solve_trace_system(Q(2), Q(2), Q(2), kOrder);
  } catch (const DegeneracyError& e) {
    degenerate = e.code() == "DEGENERATE";
  }
  l.require(degenerate, "trivial input did not report DEGENERATE");
  std::ostringstream branch_text;
  for (const auto& [name, count] : branches) branch_text << name << " " << count << ", ";
  std::ostringstream floating_text;
  floating_text << std::scientific << std::setprecision(1) << worst_floating;
  l.note("20 jets with nonzero discriminant at order 8, branches " + branch_text.str() +
         "exact residual 0, floating residual " + floating_text.str() + " (tolerance 1e-9); traces matched mod t^" +
         std::to_string(min_precision) + " at worst; trivial input -> DEGENERATE");
  return l.finish();
}

Outcome pseudo_characters() {
  Tally l;
  SuiteOptions o;
  o.iters = 200;
  o.seed = 1;
  for (int n : {2, 3}) {
    o.n = n;
    suite_outcome(l, "frobenius", o);
  }
  for (int len = 1; len <= 6; ++len)
    l.require(signed_cycle_polynomial(len) == falling_factorial(len), "cycle polynomial l = " + std::to_string(len));
  o.rank = 3;
  o.len = 5;
  suite_outcome(l, "tangent", o);
  l.note("Frobenius sum 0 on 200 integer tuples at n = 2, 3; cycle polynomial = falling factorial for l <= 6; "
         "GL2 tangent sum 0 on 200 jet triples");
  return l.finish();
}

Outcome symmetric_group_remark() {
  Tally l;
  const std::vector<std::string> names{"a", "b", "c", "d"};
  GroupHom<Permutation> psi{{Permutation::from_cycles("(1 2 3)", 6), Permutation::from_cycles("(1 4)(2 5)(3 6)", 6),
                             Permutation::from_cycles("(1 6 3 5 2 4)", 6), Permutation::from_cycles("(2 3 4)", 6)}};
  const PermutationOps ops{6};
  auto image = [&](const char* word) { return evaluate_hom(parse_word(word, names), psi, ops); };
  const Permutation first = image("c^4 [a,b]^2");
  const Permutation second = image("d^3 [a,b]^3");
  const Permutation third = image("[[c,[a,b]],[d,[a,b]]]");
  l.require(first.is_identity(), "c^4[a,b]^2 -> " + first.to_string());
  l.require(second.is_identity(), "d^3[a,b]^3 -> " + second.to_string());
  l.require(!third.is_identity(), "[[c,[a,b]],[d,[a,b]]] -> identity");
  l.note("c^4[a,b]^2 -> " + first.to_string() + ", d^3[a,b]^3 -> " + second.to_string() +
         ", [[c,[a,b]],[d,[a,b]]] -> " + third.to_string());
  return l.finish();
}

Outcome determinism() {
  Tally l;
  SuiteOptions o;
  o.iters = 20;
  o.seed = 20261016;
  for (const auto& name : suite_names()) {
    const std::string once = to_json(run_suite(name, o)).dump();
    const std::string twice = to_json(run_suite(name, o)).dump();
    l.require(once == twice, name + " JSON differs between runs");
  }
  l.note(std::to_string(suite_names().size()) + " suites rerun with the same seed give byte-identical JSON");
  return l.finish();
}

}  // namespace

int main() {
  int failures = 0;
  auto run = [&](int n, const std::string& title, double budget, const std::function<Outcome()>& body) {
    if (!run_criterion(n, title, budget, body)) ++failures;
  };
  run(1, "counting-function anchor", 5, counting_anchor);
  run(2, "identity suite", 60, identity_suite);
  run(3, "descent cross-check", 30, descent_cross_check);
  run(4, "smoothness verdicts", 0, smoothness);
  run(5, "matrix identities", 10, matrix_identities);
  run(6, "jet identities", 60, jets);
  run(7, "parabolic deformation", 30, parabolic);
  run(8, "lifting round trip", 0, lifting);
  run(9, "pseudo-characters", 0, pseudo_characters);
  run(10, "S6 remark", 0, symmetric_group_remark);
  run(11, "determinism", 0, determinism);
  std::cout << (failures == 0 ? "ALL PASS" : std::to_string(failures) + " criterion(s) FAILED") << '\n';
  return failures == 0 ? 0 : 1;
}
