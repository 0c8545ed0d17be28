#pragma once

// Seeded fuzz suites over the identity catalog, the matrix identities, the
// jet identities and the Frobenius identity. Each trial draws from its own
// Rng seeded by derive_seed(seed, suite, trial), so results do not depend on
// the order in which trials run.

#include "chartan/jets.hpp"
#include "chartan/parallelogram.hpp"

#include <json.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace chartan {

struct SuiteOptions {
  int rank = 3;
  int iters = 100;
  int len = 8;  // maximum word length
  std::uint64_t seed = 1;
  int n = 2;    // dimension for the frobenius suite
};

struct SuiteResult {
  std::string name;
  int trials = 0;
  int failures = 0;
  Rational max_residual{0};
  std::string note;

  bool passed() const { return failures == 0; }
};

std::vector<std::string> suite_names();

/// Throws InputError for an unknown name or out-of-range options.
SuiteResult run_suite(const std::string& name, const SuiteOptions& options);

nlohmann::ordered_json to_json(const SuiteResult& result);

// Samplers shared by the suites and the acceptance checks.

Word random_word_up_to(Rng& rng, int rank, int max_len);
Rational small_rational(Rng& rng, int numerator_bound = 4, int denominator_bound = 3);
RationalMatrix random_symmetric(Rng& rng, int n);
ParallelogramFunction random_free_function(Rng& rng, int n);
/// Product of elementary integer matrices, so determinant 1.
Mat2Q random_sl2z(Rng& rng, int entry_bound = 3, int steps = 4);
/// Generator image that is unimodular over Q[t] and unipotent upper-triangular at t = 0.
Mat2<Rational> random_unipotent_residue(Rng& rng);

}  // namespace chartan
