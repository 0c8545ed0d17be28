#include "doctest.h"

#include "chartan/errors.hpp"
#include "chartan/magnus.hpp"
#include "chartan/parallelogram.hpp"

using namespace chartan;

namespace {

Presentation load(const std::string& name) { return load_presentation(std::string(CHARTAN_DATA_DIR) + "/" + name); }

Rational small_rational(Rng& rng) { return Rational(rng.between(-4, 4)) / Rational(rng.between(1, 3)); }

ParallelogramFunction random_free_function(Rng& rng, int n) {
  RationalMatrix q(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) q(i, j) = q(j, i) = small_rational(rng);
  Lambda3Form phi(triple_count(n));
  for (Eigen::Index t = 0; t < phi.size(); ++t) phi(t) = small_rational(rng);
  return make_free_parallelogram(q, phi);
}

Word random_short(Rng& rng, int rank, int max_len) {
  return random_word(rank, static_cast<int>(rng.below(static_cast<std::uint64_t>(max_len) + 1)), rng);
}

// The evaluation formula written out literally: u is the ordered monomial
// with the same exponent sums as w, and the commutator part u^-1 w is read
// through its degree-two Magnus coefficients.
Rational literal_formula(const ParallelogramFunction& f, const Word& w) {
  const int n = f.dimension();
  ExponentVector x = abelianize(w, n);
  Word u;
  for (int i = 0; i < n; ++i) u = u * word_power(Word::generator(i + 1), x(i));
  RationalVector e = to_rational(x);
  Rational value = e.dot(f.q * e);
  for (const auto& [i, j, k] : increasing_triples(n))
    value += e(i) * e(j) * e(k) * f.phi(triple_index(n, i, j, k));
  if (n >= 3) value += 2 * f.phi.dot(wedge(e, lambda2_class(word_inverse(u) * w, n)));
  return value;
}

Mat2Q mat(long a, long b, long c, long d) {
  Mat2Q m;
  m << Rational(a), Rational(b), Rational(c), Rational(d);
  return m;
}

Mat2Q random_sl2(Rng& rng) {
  Mat2Q m = Mat2Q::Identity();
  for (int step = 0; step < 3; ++step) {
    const long k = rng.between(-2, 2);
    m = m * (step % 2 == 0 ? mat(1, k, 0, 1) : mat(1, 0, k, 1));
  }
  return m;
}

// Kernel of the system f(x r) - f(x) = 0 over every word x of length <= len
// and every original relator r; an independent description of descent.
int brute_force_descent_dimension(const Presentation& p, int len) {
  const int n = p.rank();
  FreeCoordinates coords{n};
  std::vector<Word> words{Word()};
  for (std::size_t start = 0, level = 0; level < static_cast<std::size_t>(len); ++level) {
    const std::size_t end = words.size();
    for (std::size_t k = start; k < end; ++k)
      for (int g = 1; g <= n; ++g)
        for (int s : {1, -1}) {
          Word next = words[k] * Word::generator(g, s);
          if (next.size() == words[k].size() + 1) words.push_back(next);
        }
    start = end;
  }
  std::vector<RationalVector> rows;
  for (const Word& r : p.relators)
    for (const Word& x : words) rows.push_back(coords.evaluation_functional(x * r) - coords.evaluation_functional(x));
  if (rows.empty()) return static_cast<int>(coords.size());
  RationalMatrix system(static_cast<Eigen::Index>(rows.size()), coords.size());
  for (std::size_t k = 0; k < rows.size(); ++k) system.row(static_cast<Eigen::Index>(k)) = rows[k].transpose();
  return static_cast<int>(coords.size()) - exact_rank(system);
}

const char* kCorpus[] = {"f2.pres",     "f3.pres",      "f5.pres",          "z2.pres",
                         "z3.pres",     "genus2.pres",  "genus3.pres",      "trefoil.pres",
                         "bs12.pres",   "triangle333.pres", "gamma_prime.pres"};

}  // namespace

TEST_CASE("eval_parallelogram examples") {
  auto f = make_free_parallelogram(RationalMatrix::Zero(3, 3), dual_triple(3, 0, 1, 2));
  auto names = default_generator_names(3);
  CHECK(eval_parallelogram(f, parse_word("a b c", names)) == 1);
  CHECK(eval_parallelogram(f, parse_word("c b a", names)) == -1);
  CHECK(eval_parallelogram(f, Word()) == 0);
  CHECK_THROWS_AS(eval_parallelogram(f, parse_word("d", default_generator_names(4))), std::out_of_range);
  CHECK_THROWS_AS(make_free_parallelogram(RationalMatrix::Zero(3, 3), Lambda3Form::Zero(2)), PreconditionError);
  RationalMatrix asym = RationalMatrix::Zero(2, 2);
  asym(0, 1) = 1;
  CHECK_THROWS_AS(make_free_parallelogram(asym, Lambda3Form()), PreconditionError);
}

TEST_CASE("eval_parallelogram matches the literal formula") {
  Rng rng(101);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + static_cast<int>(rng.below(5));
    auto f = random_free_function(rng, n);
    Word w = random_short(rng, n, 16);
    CHECK(eval_parallelogram(f, w) == literal_formula(f, w));
  }
}

TEST_CASE("parallelogram law on free groups") {
  Rng rng(102);
  for (int trial = 0; trial < 500; ++trial) {
    const int n = 1 + static_cast<int>(rng.below(5));
    auto f = random_free_function(rng, n);
    Word x = random_short(rng, n, 20), y = random_short(rng, n, 20);
    auto check = verify_identity(Identity::kParallelogram, as_word_function(f), {x, y});
    CHECK(check.holds);
    CHECK(check.residual == 0);
  }
}

TEST_CASE("counting_f3") {
  auto names = default_generator_names(3);
  CHECK(counting_f3(parse_word("a b c", names)) == 1);
  CHECK(counting_f3(parse_word("c b a", names)) == -1);
  CHECK(counting_f3(parse_word("a^-1 b c", names)) == -1);
  // Unreduced input counts every position triple.
  CHECK(counting_f3(std::vector<Letter>{{1, 1}, {1, -1}, {2, 1}, {3, 1}}) == 0);

  auto f = make_free_parallelogram(RationalMatrix::Zero(3, 3), dual_triple(3, 0, 1, 2));
  WordFunction counting = [](const Word& w) { return Rational(counting_f3(w)); };
  Rng rng(103);
  for (int trial = 0; trial < 500; ++trial) {
    Word w = random_short(rng, 3, 14);
    CHECK(counting_f3(w) == eval_parallelogram(f, w));
    CHECK(counting_f3(word_inverse(w)) == counting_f3(w));
    Word x = random_short(rng, 3, 10);
    CHECK(verify_identity(Identity::kParallelogram, counting, {w, x}).residual == 0);
  }
}

TEST_CASE("epsilon_eval") {
  auto trace = trace_central_function({mat(1, 1, 0, 1), mat(1, 0, 1, 1)});
  auto names = default_generator_names(2);
  CHECK(epsilon_eval(trace, {parse_word("a", names), parse_word("b", names)}) == 1);

  Rng rng(104);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 3 + static_cast<int>(rng.below(3));
    auto f = random_free_function(rng, n);
    auto fw = as_word_function(f);
    Word w = random_short(rng, n, 8);
    CHECK(epsilon_eval(fw, {w}) == fw(w));
    // Arity three recovers phi on generators.
    for (const auto& [i, j, k] : increasing_triples(n))
      CHECK(epsilon_eval(fw, {Word::generator(i + 1), Word::generator(j + 1), Word::generator(k + 1)}) ==
            f.phi(triple_index(n, i, j, k)));
    Word a = random_short(rng, n, 6), a2 = random_short(rng, n, 6), b = random_short(rng, n, 6),
         c = random_short(rng, n, 6), d = random_short(rng, n, 6);
    // Cubic, alternating, and additive in the first slot.
    CHECK(epsilon_eval(fw, {a, b, c, d}) == 0);
    CHECK(epsilon_eval(fw, {a, b, c}) == -epsilon_eval(fw, {b, a, c}));
    CHECK(epsilon_eval(fw, {a, b, c}) == -epsilon_eval(fw, {a, c, b}));
    CHECK(epsilon_eval(fw, {a * a2, b, c}) == epsilon_eval(fw, {a, b, c}) + epsilon_eval(fw, {a2, b, c}));
  }
  CHECK_THROWS_AS(epsilon_eval(trace, {}), std::invalid_argument);
}

TEST_CASE("descent_solve dimensions") {
  struct Expected {
    const char* file;
    int dimension;
  };
  for (auto [file, dim] : {Expected{"f2.pres", 3}, Expected{"f3.pres", 7}, Expected{"f5.pres", 25},
                           Expected{"z2.pres", 3}, Expected{"z3.pres", 6}, Expected{"genus2.pres", 10},
                           Expected{"genus3.pres", 35}, Expected{"trefoil.pres", 1},
                           Expected{"triangle333.pres", 3}}) {
    CAPTURE(file);
    auto sol = descent_solve(load(file));
    CHECK(sol.dimension == dim);
  }
  for (const auto& f : descent_solve(load("z3.pres")).basis) CHECK(f.phi.isZero());
  for (const auto& f : descent_solve(load("genus2.pres")).basis) CHECK(f.phi.isZero());
}

TEST_CASE("descent_solve matches Q plus E on the corpus") {
  for (const char* file : kCorpus) {
    CAPTURE(file);
    auto p = load(file);
    auto h = compute_h1(p);
    CHECK(descent_solve(p).dimension == h.h1_rank * (h.h1_rank + 1) / 2 + e_space_basis(h).dimension);
  }
}

TEST_CASE("descent_solve agrees with brute-force descent") {
  for (const char* file : {"z2.pres", "z3.pres", "trefoil.pres", "bs12.pres", "genus2.pres"}) {
    CAPTURE(file);
    auto p = load(file);
    CHECK(descent_solve(p).dimension == brute_force_descent_dimension(p, 3));
  }
  Rng rng(105);
  for (int trial = 0; trial < 25; ++trial) {
    const int n = 2 + static_cast<int>(rng.below(2));
    Presentation p = free_presentation(n);
    const int k = 1 + static_cast<int>(rng.below(2));
    for (int j = 0; j < k; ++j) {
      // Mix relators with and without abelianization.
      Word r = rng.coin() ? commutator(random_short(rng, n, 3), random_short(rng, n, 3)) : random_short(rng, n, 5);
      p.relators.push_back(r);
    }
    auto sol = descent_solve(p);
    CHECK(sol.dimension == brute_force_descent_dimension(p, n == 2 ? 4 : 3));
    // Every basis element satisfies f(x r) = f(x) on longer random words.
    for (const auto& f : sol.basis)
      for (int s = 0; s < 5; ++s) {
        Word x = random_short(rng, n, 8), g = random_short(rng, n, 4);
        for (const Word& r : p.relators) {
          CHECK(eval_parallelogram(f, x * r) == eval_parallelogram(f, x));
          CHECK(eval_parallelogram(f, x * g * r * word_inverse(g)) == eval_parallelogram(f, x));
        }
      }
  }
}

TEST_CASE("presentation ambient evaluation descends") {
  Rng rng(106);
  for (const char* file : kCorpus) {
    CAPTURE(file);
    auto p = load(file);
    auto amb = make_presentation_ambient(p);
    const int n = p.rank(), r = amb->homology.h1_rank;
    auto e = e_space_basis(amb->homology);
    for (int trial = 0; trial < 4; ++trial) {
      RationalMatrix q(r, r);
      for (int i = 0; i < r; ++i)
        for (int j = i; j < r; ++j) q(i, j) = q(j, i) = small_rational(rng);
      Lambda3Form phi = Lambda3Form::Zero(triple_count(r));
      for (const auto& b : e.basis) phi += small_rational(rng) * b;
      ParallelogramFunction f{amb, q, phi};
      validate(f);
      auto free = pull_back_to_free(f);
      auto descended = descent_solve(p);
      // The pull-back lies in the span of the descent basis.
      FreeCoordinates coords{n};
      RationalMatrix span(coords.size(), descended.dimension + 1);
      for (int k = 0; k < descended.dimension; ++k) span.col(k) = coords.pack(descended.basis[k]);
      span.col(descended.dimension) = coords.pack(free);
      CHECK(exact_rank(span) == descended.dimension);
      for (int s = 0; s < 6; ++s) {
        Word x = random_short(rng, n, 10), g = random_short(rng, n, 4);
        CHECK(eval_parallelogram(f, x) == eval_parallelogram(free, x));
        for (const Word& rel : p.relators) {
          CHECK(eval_parallelogram(f, x * rel) == eval_parallelogram(f, x));
          CHECK(eval_parallelogram(f, g * rel * word_inverse(g) * x) == eval_parallelogram(f, x));
        }
      }
      // epsilon_3 on lifted generators reads off phi.
      std::vector<Word> lifts;
      for (int k = 0; k < r; ++k) {
        Word w;
        for (int i = 0; i < n; ++i)
          w = w * word_power(Word::generator(i + 1), amb->homology.lifted_generators(k, i).convert_to<long long>());
        lifts.push_back(w);
      }
      auto fw = as_word_function(f);
      for (const auto& [i, j, k] : increasing_triples(r))
        CHECK(epsilon_eval(fw, {lifts[i], lifts[j], lifts[k]}) == phi(triple_index(r, i, j, k)));
    }
  }
}

TEST_CASE("validate rejects phi outside E") {
  auto amb = make_presentation_ambient(load("genus3.pres"));
  ParallelogramFunction f{amb, RationalMatrix::Zero(6, 6), dual_triple(6, 0, 1, 2)};
  CHECK_THROWS_AS(validate(f), PreconditionError);
}

TEST_CASE("identity catalog on parallelogram functions") {
  Rng rng(107);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 3 + static_cast<int>(rng.below(3));
    auto f = as_word_function(random_free_function(rng, n));
    for (Identity id : {Identity::kParallelogram, Identity::kElem, Identity::kCubic, Identity::kAlter3,
                        Identity::kVersGGG, Identity::kFormule4, Identity::kNoyauP, Identity::kOrder5}) {
      CAPTURE(to_string(id));
      std::vector<Word> in;
      for (int k = 0; k < arity(id); ++k) in.push_back(random_short(rng, n, 5));
      auto check = verify_identity(id, f, in);
      CHECK(check.holds);
      CHECK(check.residual == 0);
    }
  }
}

TEST_CASE("identity catalog on trace functions") {
  Rng rng(108);
  int parallelogram_failures = 0;
  for (int trial = 0; trial < 40; ++trial) {
    std::vector<Mat2Q> rep;
    for (int k = 0; k < 4; ++k) rep.push_back(random_sl2(rng));
    auto f = trace_central_function(rep);
    std::vector<Word> in;
    for (int k = 0; k < 4; ++k) in.push_back(random_short(rng, 4, 4));
    CHECK(verify_identity(Identity::kFormule4, f.eval, in).holds);
    CHECK(verify_identity(Identity::kNoyauP, f.eval, {in[0], in[1], in[2]}).holds);
    // The symmetrized triple product equals its p-expression for any class
    // function; it need not vanish here.
    const Rational lhs = epsilon_eval(f, {in[0], in[1], in[2]}) + epsilon_eval(f, {in[0], in[2], in[1]});
    CHECK(lhs == chartan::apply(f, alter3_rhs(in[0], in[1], in[2])));
    if (!verify_identity(Identity::kParallelogram, f.eval, {in[0], in[1]}).holds) ++parallelogram_failures;
  }
  // Trace functions are not parallelogram functions in general.
  CHECK(parallelogram_failures > 0);
}

TEST_CASE("identity selectors") {
  CHECK(parse_identity("formule4") == Identity::kFormule4);
  CHECK(parse_identity("ORDER5") == Identity::kOrder5);
  CHECK_FALSE(parse_identity("nope").has_value());
  WordFunction zero = [](const Word&) { return Rational(0); };
  CHECK_THROWS_AS(verify_identity(Identity::kCubic, zero, {Word()}), std::invalid_argument);
}

TEST_CASE("trace_central_function") {
  auto f = trace_central_function({mat(1, 1, 0, 1), mat(1, 0, 1, 1)});
  auto names = default_generator_names(2);
  CHECK(f(parse_word("a b", names)) == 1);
  CHECK(f(Word()) == 0);
  CHECK(f(parse_word("[a,b]", names)) == 1);
  CHECK_THROWS_AS(trace_central_function({mat(2, 0, 0, 1)}), PreconditionError);
  WordFunction not_central = [](const Word& w) { return Rational(w.empty() ? 0 : w.letters().front().sign); };
  CHECK_THROWS_AS(make_central_function(not_central, 2), PreconditionError);
}

TEST_CASE("johnson_action") {
  auto names = default_generator_names(3);
  auto f = make_free_parallelogram(RationalMatrix::Zero(3, 3), dual_triple(3, 0, 1, 2));
  GroupHom<Word> phi{{parse_word("a [b,c]", names), parse_word("b", names), parse_word("c", names)}};
  RationalMatrix expected = RationalMatrix::Zero(3, 3);
  expected(0, 0) = 2;
  CHECK(johnson_action(phi, f) == expected);

  GroupHom<Word> identity{{parse_word("a", names), parse_word("b", names), parse_word("c", names)}};
  CHECK(johnson_action(identity, f).isZero());

  Word g = parse_word("a b^-1 c a", names);
  GroupHom<Word> inner;
  for (int i = 1; i <= 3; ++i) inner.images.push_back(g * Word::generator(i) * word_inverse(g));
  Rng rng(109);
  auto random_f = random_free_function(rng, 3);
  CHECK(johnson_action(inner, random_f).isZero());

  GroupHom<Word> not_torelli{{parse_word("b", names), parse_word("a", names), parse_word("c", names)}};
  CHECK_THROWS_AS(johnson_action(not_torelli, f), PreconditionError);

  // Composite automorphism in F_4 against direct evaluation.
  auto names4 = default_generator_names(4);
  GroupHom<Word> psi{{parse_word("a [b,d]", names4), parse_word("b [c,a]^2", names4), parse_word("c", names4),
                      parse_word("[a,b] d", names4)}};
  auto f4 = random_free_function(rng, 4);
  RationalMatrix form = johnson_action(psi, f4);
  for (int trial = 0; trial < 30; ++trial) {
    Word w = random_short(rng, 4, 10);
    CHECK(eval_parallelogram(f4, evaluate_hom(w, psi, FreeGroupOps{})) - eval_parallelogram(f4, w) ==
          quadratic_value(form, to_rational(abelianize(w, 4))));
  }
}
