#include "chartan/suites.hpp"

#include "chartan/errors.hpp"
#include "chartan/pseudochar.hpp"

#include <algorithm>
#include <functional>
#include <map>

namespace chartan {

Word random_word_up_to(Rng& rng, int rank, int max_len) {
  return random_word(rank, static_cast<int>(rng.below(static_cast<std::uint64_t>(max_len) + 1)), rng);
}

Rational small_rational(Rng& rng, int numerator_bound, int denominator_bound) {
  return Rational(rng.between(-numerator_bound, numerator_bound)) / Rational(rng.between(1, denominator_bound));
}

RationalMatrix random_symmetric(Rng& rng, int n) {
  RationalMatrix q(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) q(i, j) = q(j, i) = small_rational(rng);
  return q;
}

ParallelogramFunction random_free_function(Rng& rng, int n) {
  RationalMatrix q = random_symmetric(rng, n);
  Lambda3Form phi(triple_count(n));
  for (Eigen::Index k = 0; k < phi.size(); ++k) phi(k) = small_rational(rng);
  return make_free_parallelogram(q, phi);
}

Mat2Q random_sl2z(Rng& rng, int entry_bound, int steps) {
  Mat2Q m = Mat2Q::Identity();
  for (int step = 0; step < steps; ++step) {
    Mat2Q e = Mat2Q::Identity();
    (step % 2 == 0 ? e(0, 1) : e(1, 0)) = Rational(rng.between(-entry_bound, entry_bound));
    m = m * e;
  }
  return m;
}

Mat2<Rational> random_unipotent_residue(Rng& rng) {
  using Q = Series<Rational>;
  auto poly = [&](int degree, int shift) {
    std::vector<Rational> c;
    for (int k = 0; k <= degree; ++k) c.push_back(small_rational(rng, 3, 2));
    return Q::from_coefficients(c, shift);
  };
  const Q one(1), zero(0);
  Mat2<Rational> upper = make_mat2<Rational>(one, poly(2, 0), zero, one);
  Mat2<Rational> lower = make_mat2<Rational>(one, zero, poly(2, 1), one);
  Mat2<Rational> upper2 = make_mat2<Rational>(one, poly(1, 1), zero, one);
  return upper * lower * upper2;
}

namespace {

Rational abs_value(const Rational& x) { return x < 0 ? Rational(-x) : x; }

// Collects residuals for one suite run.
struct Tally {
  SuiteResult& result;
  bool trial_ok = true;

  void record(const Rational& residual) {
    result.max_residual = std::max(result.max_residual, abs_value(residual));
    if (residual != 0) trial_ok = false;
  }
  void require(bool ok) {
    if (!ok) trial_ok = false;
  }
};

using TrialFn = std::function<void(Rng&, const SuiteOptions&, Tally&)>;

TrialFn identity_on_forms(Identity id) {
  return [id](Rng& rng, const SuiteOptions& o, Tally& tally) {
    auto f = as_word_function(random_free_function(rng, o.rank));
    std::vector<Word> in;
    for (int k = 0; k < arity(id); ++k) in.push_back(random_word_up_to(rng, o.rank, o.len));
    const IdentityCheck check = verify_identity(id, f, in);
    tally.record(check.residual);
    tally.require(check.holds);
  };
}

TrialFn identity_on_traces(Identity id) {
  return [id](Rng& rng, const SuiteOptions& o, Tally& tally) {
    std::vector<Mat2Q> rep;
    for (int k = 0; k < o.rank; ++k) rep.push_back(random_sl2z(rng));
    const CentralFunction trace = trace_central_function(rep);
    WordFunction f = [eval = trace.eval](const Word& w) { return eval(w) - 2; };
    std::vector<Word> in;
    for (int k = 0; k < arity(id); ++k) in.push_back(random_word_up_to(rng, o.rank, o.len));
    const IdentityCheck check = verify_identity(id, f, in);
    tally.record(check.residual);
    tally.require(check.holds);
  };
}

void counting_trial(Rng& rng, const SuiteOptions& o, Tally& tally) {
  static const ParallelogramFunction dual_volume = [] {
    Lambda3Form phi(1);
    phi(0) = 1;
    return make_free_parallelogram(RationalMatrix::Zero(3, 3), phi);
  }();
  const Word w = random_word_up_to(rng, 3, o.len);
  tally.record(Rational(counting_f3(w)) - eval_parallelogram(dual_volume, w));
}

TrialFn matrix_identity(MatrixIdentity kind) {
  return [kind](Rng& rng, const SuiteOptions&, Tally& tally) {
    const Mat2Q a = random_sl2z(rng), b = random_sl2z(rng);
    const auto check = check_matrix_identity(kind, a, b);
    tally.record(check.value - check.expected);
    tally.require(check.holds);
  };
}

CharacterJet<Rational> random_jet(Rng& rng, int rank, int order) {
  std::vector<Mat2<Rational>> rep;
  for (int i = 0; i < rank; ++i) rep.push_back(random_unipotent_residue(rng));
  return character_jet_from_rep(rep, order);
}

void jets_trial(Rng& rng, const SuiteOptions& o, Tally& tally) {
  const auto jet = random_jet(rng, o.rank, 4);
  std::vector<std::pair<Word, Word>> pairs;
  for (int k = 0; k < 4; ++k) pairs.emplace_back(random_word_up_to(rng, o.rank, o.len), random_word_up_to(rng, o.rank, o.len));
  for (int order = 1; order <= 4; ++order) {
    const auto check = verify_jet_equation(jet, order, pairs);
    for (const Rational& r : check.residuals) tally.record(r);
    tally.require(check.holds);
  }
  tally.require(exact_rank(extract_bilinear(jet, o.rank)) <= 2);

  const int short_len = std::min(o.len, 4);
  std::vector<Word> w;
  for (int k = 0; k < 6; ++k) w.push_back(random_word_up_to(rng, o.rank, short_len));
  const auto g1 = jet.coefficient_function(1);
  const auto g2 = jet.coefficient_function(2);
  tally.record(epsilon_eval(g1, {w[0], w[1], w[2], w[3]}));
  tally.record(epsilon_eval(g2, {w[0], w[1], w[2], w[3], w[4]}));
  tally.record(epsilon_eval(g2, w));
  auto pair = [&](int i, int j) { return bilinear_pairing(jet, w[i], w[j]); };
  tally.record(2 * epsilon_eval(g2, {w[0], w[1], w[2], w[3]}) -
               (pair(0, 1) * pair(2, 3) + pair(0, 3) * pair(1, 2) - pair(0, 2) * pair(1, 3)));
}

void frobenius_trial(Rng& rng, const SuiteOptions& o, Tally& tally) {
  std::vector<RationalMatrix> mats;
  for (int k = 0; k <= o.n; ++k) {
    RationalMatrix m(o.n, o.n);
    for (int i = 0; i < o.n; ++i)
      for (int j = 0; j < o.n; ++j) m(i, j) = Rational(rng.between(-4, 4));
    mats.push_back(std::move(m));
  }
  // Only the generators and their positive products are ever evaluated.
  PseudoCharacter<Rational> t{o.n, [&mats, n = o.n](const Word& w) {
                                RationalMatrix p = RationalMatrix::Identity(n, n);
                                for (const Letter& l : w) p = p * mats[static_cast<std::size_t>(l.generator - 1)];
                                return Rational(p.trace());
                              }};
  std::vector<Word> gens;
  for (int k = 1; k <= o.n + 1; ++k) gens.push_back(Word::generator(k));
  tally.record(frobenius_sum(t, gens));
}

void tangent_trial(Rng& rng, const SuiteOptions& o, Tally& tally) {
  const auto g1 = random_jet(rng, o.rank, 1).coefficient_function(1);
  std::vector<Word> triple;
  for (int k = 0; k < 3; ++k) triple.push_back(random_word_up_to(rng, o.rank, o.len));
  const Rational dual = linearized_tangent_sum<Rational>(g1, triple, 2);
  tally.record(dual);
  tally.record(dual + 2 * tangent_closed_form<Rational>(g1, triple));
}

struct SuiteEntry {
  TrialFn trial;
  std::string note;
};

const std::map<std::string, SuiteEntry>& registry() {
  static const std::map<std::string, SuiteEntry> suites = {
      {"parallelogram", {identity_on_forms(Identity::kParallelogram), "random (q, phi) on the free group"}},
      {"elem", {identity_on_forms(Identity::kElem), "random (q, phi) on the free group"}},
      {"cubic", {identity_on_forms(Identity::kCubic), "random (q, phi) on the free group"}},
      {"alter3", {identity_on_forms(Identity::kAlter3), "random (q, phi) on the free group"}},
      {"versggg", {identity_on_forms(Identity::kVersGGG), "random (q, phi) on the free group"}},
      {"order5", {identity_on_forms(Identity::kOrder5), "random (q, phi) on the free group"}},
      {"formule4", {identity_on_traces(Identity::kFormule4), "trace minus 2 of random integer SL2 representations"}},
      {"noyaup", {identity_on_traces(Identity::kNoyauP), "trace minus 2 of random integer SL2 representations"}},
      {"counting", {counting_trial, "counting function against the dual volume form on F3"}},
      {"traceid", {matrix_identity(MatrixIdentity::kTraceId), "random integer SL2 pairs"}},
      {"gram", {matrix_identity(MatrixIdentity::kGram), "random integer SL2 pairs"}},
      {"jets", {jets_trial, "jets of random unipotent-residue representations, order 4"}},
      {"frobenius", {frobenius_trial, "traces of random integer n x n matrices"}},
      {"tangent", {tangent_trial, "GL2 tangent condition on first-order jets"}},
  };
  return suites;
}

}  // namespace

std::vector<std::string> suite_names() {
  std::vector<std::string> names;
  for (const auto& [name, entry] : registry()) names.push_back(name);
  return names;
}

SuiteResult run_suite(const std::string& name, const SuiteOptions& options) {
  const auto it = registry().find(name);
  if (it == registry().end()) throw InputError("unknown suite '" + name + "'");
  if (options.rank < 1 || options.rank > 8) throw InputError("--rank must be in 1..8");
  if (options.iters < 0) throw InputError("--iters must be non-negative");
  if (options.len < 0 || options.len > 64) throw InputError("--len must be in 0..64");
  if (options.n < 1 || options.n + 1 > kMaxFrobeniusLetters) throw InputError("--n must be in 1..7");

  SuiteResult result;
  result.name = name;
  result.note = it->second.note;
  for (int trial = 0; trial < options.iters; ++trial) {
    Rng rng(derive_seed(options.seed, name, static_cast<std::uint64_t>(trial)));
    Tally tally{result};
    it->second.trial(rng, options, tally);
    ++result.trials;
    if (!tally.trial_ok) ++result.failures;
  }
  return result;
}

nlohmann::ordered_json to_json(const SuiteResult& result) {
  nlohmann::ordered_json j;
  j["suite"] = result.name;
  j["status"] = result.passed() ? "PASS" : "FAIL";
  j["trials"] = result.trials;
  j["failures"] = result.failures;
  j["max_residual"] = to_string(result.max_residual);
  j["sampling"] = result.note;
  return j;
}

}  // namespace chartan
