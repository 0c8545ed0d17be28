#pragma once

// First homology of a finitely presented group, the relator reduction that
// separates H_2 generators from the rest, the c-classes of those generators
// in Lambda^2 H_1, the space E of alternating 3-forms killing H_1 ^ c(H_2),
// and the smoothness verdict at the trivial character.

#include "chartan/exterior.hpp"
#include "chartan/words.hpp"

#include <optional>
#include <string>
#include <vector>

namespace chartan {

struct SmithForm {
  std::vector<Integer> invariants;  // nonzero diagonal entries, each dividing the next
  IntegerMatrix u;                  // unimodular, rows x rows
  IntegerMatrix v;                  // unimodular, cols x cols
  IntegerMatrix v_inverse;
  IntegerMatrix diagonal;           // u * m * v
};

SmithForm smith_normal_form(const IntegerMatrix& m);

/// Relator matrix: one row per relator, the exponent sums of its letters.
IntegerMatrix abelianized_relators(const Presentation& p);

/// One step of relator reduction, mirrored as word arithmetic:
/// kSwap exchanges relators `target` and `source`; kMultiply replaces relator
/// `target` by relator(target) * relator(source)^power.
struct ReductionStep {
  enum Kind { kSwap, kMultiply } kind;
  int target;
  int source;
  long long power;
};

struct ReducedRelators {
  std::vector<Word> relators;
  int ell = 0;  // relators [0, ell) have independent abelianizations, the rest zero
  std::vector<ReductionStep> log;
};

ReducedRelators reduce_relators(const Presentation& p);

/// Replays a reduction log on the original relators.
std::vector<Word> replay_reduction(const std::vector<Word>& original, const std::vector<ReductionStep>& log);

struct HomologyData {
  int generator_count = 0;
  int h1_rank = 0;
  std::vector<Integer> torsion;
  /// h1_rank x generator_count: exponent vector -> free H_1 coordinates.
  RationalMatrix free_basis_projection;
  /// h1_rank x generator_count: exponent vectors of lifts of the free basis.
  IntegerMatrix lifted_generators;
  ReducedRelators reduction;
  /// Classes of the relators reduction.relators[ell..], in free H_1 coordinates.
  std::vector<Lambda2Vector> c_classes;

  int h2_generator_upper_bound() const { return static_cast<int>(c_classes.size()); }
};

HomologyData compute_h1(const Presentation& p);

/// Class of reduced relator j (0-based, j >= ell) in Lambda^2 of free H_1.
Lambda2Vector c_class(const HomologyData& h, int j);

struct ESpace {
  int dimension = 0;
  std::vector<Lambda3Form> basis;  // forms on free H_1 coordinates
};

ESpace e_space_basis(const HomologyData& h);

enum class Verdict { kSmooth, kNotSmooth, kUnknown };
std::string to_string(Verdict v);

struct SmoothnessReport {
  Verdict verdict = Verdict::kUnknown;
  std::string reason;
  int n = 0;
};

/// A claimed surjection onto F_2 = <x, y>: one image word per generator,
/// written over generators 1 and 2 of the target.
struct F2Witness {
  std::vector<std::string> target_names;
  GroupHom<Word> hom;
};

/// Checks that the witness kills every relator and is onto F_2.
bool verify_f2_witness(const Presentation& p, const F2Witness& witness, std::string* why = nullptr);

SmoothnessReport smoothness_verdict(const Presentation& p, const std::optional<F2Witness>& witness = std::nullopt);

}  // namespace chartan
