#pragma once

// Parallelogram functions: maps f on a group with
//   f(xy) + f(xy^-1) = 2 f(x) + 2 f(y).
// On a free group every such f is determined by a quadratic form q and an
// alternating 3-form phi on H_1; on a finitely presented group the pairs
// (q, phi) that descend are cut out by linear constraints per relator.

#include "chartan/group_algebra.hpp"
#include "chartan/homology.hpp"

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace chartan {

/// Scalar-valued function on words, the common currency of this module.
using WordFunction = std::function<Rational(const Word&)>;

struct FreeAmbient {
  int rank = 0;
};

/// A presentation together with its homology and the linear correction that
/// makes the evaluation formula constant on cosets of the relators.
struct PresentationAmbient {
  Presentation presentation;
  HomologyData homology;
  /// generator_count blocks of h1_rank x h1_rank antisymmetric matrices:
  /// L(x) = sum_i x_i * section_correction[i].
  std::vector<Lambda2Vector> section_correction;
};

std::shared_ptr<const PresentationAmbient> make_presentation_ambient(const Presentation& p);

using Ambient = std::variant<FreeAmbient, std::shared_ptr<const PresentationAmbient>>;

/// f(x) = x^T q x + (cubic part encoded by phi), on the free part of H_1.
struct ParallelogramFunction {
  Ambient ambient;
  RationalMatrix q;  // symmetric, h1_rank x h1_rank
  Lambda3Form phi;   // length C(h1_rank, 3)

  int dimension() const { return static_cast<int>(q.rows()); }
};

ParallelogramFunction make_free_parallelogram(const RationalMatrix& q, const Lambda3Form& phi);
/// Checks shapes and symmetry; for presentation ambients also that phi lies
/// in E, which is what makes the function descend.
void validate(const ParallelogramFunction& f);

Rational eval_parallelogram(const ParallelogramFunction& f, const Word& w);
WordFunction as_word_function(const ParallelogramFunction& f);

/// The same function viewed on the free group over the presentation's
/// generators (identity for free ambients).
ParallelogramFunction pull_back_to_free(const ParallelogramFunction& f);

/// The counting function on F_3: signed count of subsequences spelling a
/// cyclic rotation of abc minus those spelling one of acb.
long long counting_f3(const std::vector<Letter>& letters);
inline long long counting_f3(const Word& w) { return counting_f3(w.letters()); }

/// f o epsilon_n(w_1, ..., w_n) by inclusion-exclusion over subsets.
template <class F>
auto epsilon_eval(const F& f, const std::vector<Word>& words) -> decltype(f(Word())) {
  using S = decltype(f(Word()));
  const std::size_t n = words.size();
  if (n == 0 || n > 20) throw std::invalid_argument("epsilon_eval: need 1..20 words");
  S total = S(0);
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    Word product;
    int size = 0;
    for (std::size_t k = 0; k < n; ++k)
      if (mask & (1u << k)) {
        product = word_product(product, words[k]);
        ++size;
      }
    const S value = f(product);
    if ((n - size) % 2 == 0)
      total += value;
    else
      total -= value;
  }
  return total;
}

// ---------------------------------------------------------------------------
// Descent from the free group.

/// Coordinates of (q, phi) on the free group over n generators: the
/// n(n+1)/2 entries q(i,j), i <= j, in row order, then C(n,3) entries of phi.
struct FreeCoordinates {
  int n;
  Eigen::Index quadratic_count() const { return static_cast<Eigen::Index>(n) * (n + 1) / 2; }
  Eigen::Index size() const { return quadratic_count() + triple_count(n); }
  /// Row vector c with f(w) = c . (q, phi) for every (q, phi).
  RationalVector evaluation_functional(const Word& w) const;
  ParallelogramFunction unpack(const RationalVector& coords) const;
  RationalVector pack(const ParallelogramFunction& f) const;
};

struct DescentSolution {
  int dimension = 0;
  std::vector<ParallelogramFunction> basis;  // free-ambient functions on the presentation's generators
};

DescentSolution descent_solve(const Presentation& p);

// ---------------------------------------------------------------------------
// Identity catalog.

enum class Identity { kParallelogram, kElem, kCubic, kAlter3, kVersGGG, kFormule4, kNoyauP, kOrder5 };

std::string to_string(Identity id);
std::optional<Identity> parse_identity(const std::string& name);
int arity(Identity id);

struct IdentityCheck {
  bool holds = false;
  Rational residual;  // largest absolute deviation among the checked equations
};

IdentityCheck verify_identity(Identity id, const WordFunction& f, const std::vector<Word>& inputs);

/// Right-hand sides of the catalogued group-algebra identities, exposed for
/// tests that want to evaluate them with other functions.
GroupAlgebraElement formule4_rhs(const Word& a, const Word& b, const Word& c, const Word& d);
std::pair<GroupAlgebraTensor, GroupAlgebraTensor> noyaup_kernel(const Word& a, const Word& b, const Word& c);
GroupAlgebraElement alter3_rhs(const Word& a, const Word& b, const Word& c);

// ---------------------------------------------------------------------------
// Central functions and the Johnson action.

using Mat2Q = Eigen::Matrix<Rational, 2, 2>;

/// Evaluator with spot-checked class-function properties.
struct CentralFunction {
  WordFunction eval;
  int rank = 0;
  Rational operator()(const Word& w) const { return eval(w); }
};

/// Wraps an evaluator after checking f(1) = 0, f(g) = f(g^-1) and
/// f(gh) = f(hg) on seeded random words.
CentralFunction make_central_function(WordFunction eval, int rank, std::uint64_t seed = 1);

/// w -> Tr(rho(w)) - 2 for generator images of determinant one.
CentralFunction trace_central_function(const std::vector<Mat2Q>& rep);

struct Mat2QOps {
  using value_type = Mat2Q;
  Mat2Q identity() const { return Mat2Q::Identity(); }
  Mat2Q product(const Mat2Q& x, const Mat2Q& y) const { return x * y; }
  Mat2Q inverse(const Mat2Q& x) const;
};

/// Quadratic form x -> 2 phi(x ^ tau(x)) induced by an automorphism acting
/// trivially on H_1; cross-checked against f o phi_map - f on sample words.
RationalMatrix johnson_action(const GroupHom<Word>& phi_map, const ParallelogramFunction& f);

/// Quadratic form value x^T q x.
Rational quadratic_value(const RationalMatrix& q, const RationalVector& x);
RationalVector to_rational(const ExponentVector& e);

}  // namespace chartan
