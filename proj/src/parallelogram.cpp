#include "chartan/parallelogram.hpp"

#include "chartan/errors.hpp"
#include "chartan/magnus.hpp"

#include <Eigen/LU>

#include <algorithm>

namespace chartan {

RationalVector to_rational(const ExponentVector& e) {
  return e.unaryExpr([](std::int64_t t) { return Rational(t); });
}

Rational quadratic_value(const RationalMatrix& q, const RationalVector& x) { return x.dot(q * x); }

// ---------------------------------------------------------------------------
// Ambients and evaluation.

std::shared_ptr<const PresentationAmbient> make_presentation_ambient(const Presentation& p) {
  auto amb = std::make_shared<PresentationAmbient>();
  amb->presentation = p;
  amb->homology = compute_h1(p);
  const HomologyData& h = amb->homology;
  const int n = p.rank(), r = h.h1_rank, ell = h.reduction.ell;
  if (ell + r != n) throw CrossCheckError("relator rank and H1 rank do not add up to the generator count");

  // Basis of Q^n: abelianized relators with independent images, then the
  // lifted free generators. The correction L is the linear map sending each
  // such relator x(r_j) to -P A(r_j) P^T and each lifted generator to zero,
  // so that P A(w) P^T + L(x(w)) is unchanged by right multiplication by any
  // relator of nonzero abelianization.
  RationalMatrix basis(n, n);
  RationalMatrix targets = RationalMatrix::Zero(n, static_cast<Eigen::Index>(r) * r);
  const RationalMatrix& proj = h.free_basis_projection;
  for (int j = 0; j < ell; ++j) {
    const Word& rel = h.reduction.relators[j];
    basis.row(j) = to_rational(abelianize(rel, n)).transpose();
    Lambda2Vector t = -push_forward(proj, half_wedge_sum(rel, n));
    targets.row(j) = t.reshaped().transpose();
  }
  for (int k = 0; k < r; ++k)
    basis.row(ell + k) = h.lifted_generators.row(k).unaryExpr([](const Integer& z) { return Rational(z); });

  RationalMatrix stacked = n == 0 ? RationalMatrix(0, 0) : solve_exact(basis, targets);
  for (int i = 0; i < n; ++i) amb->section_correction.push_back(stacked.row(i).reshaped(r, r));
  return amb;
}

ParallelogramFunction make_free_parallelogram(const RationalMatrix& q, const Lambda3Form& phi) {
  ParallelogramFunction f{FreeAmbient{static_cast<int>(q.rows())}, q, phi};
  validate(f);
  return f;
}

namespace {

int ambient_dimension(const Ambient& a) {
  if (const auto* free = std::get_if<FreeAmbient>(&a)) return free->rank;
  return std::get<1>(a)->homology.h1_rank;
}

}  // namespace

void validate(const ParallelogramFunction& f) {
  const int r = ambient_dimension(f.ambient);
  if (f.q.rows() != r || f.q.cols() != r)
    throw PreconditionError("parallelogram function: q must be " + std::to_string(r) + "x" + std::to_string(r));
  if (f.q != RationalMatrix(f.q.transpose())) throw PreconditionError("parallelogram function: q is not symmetric");
  if (f.phi.size() != triple_count(r))
    throw PreconditionError("parallelogram function: phi needs " + std::to_string(triple_count(r)) + " entries");
  if (const auto* amb = std::get_if<1>(&f.ambient)) {
    for (const auto& c : (*amb)->homology.c_classes)
      for (int m = 0; m < r; ++m) {
        RationalVector unit = RationalVector::Zero(r);
        unit(m) = 1;
        if (f.phi.dot(wedge(unit, c)) != 0)
          throw PreconditionError("parallelogram function: phi does not vanish on H1 ^ c(H2), so f does not descend");
      }
  }
}

Rational eval_parallelogram(const ParallelogramFunction& f, const Word& w) {
  if (const auto* free = std::get_if<FreeAmbient>(&f.ambient)) {
    const int n = free->rank;
    if (w.max_generator() > n) throw std::out_of_range("eval_parallelogram: generator index exceeds rank");
    RationalVector x = to_rational(abelianize(w, n));
    Rational value = quadratic_value(f.q, x);
    if (n >= 3) value += 2 * f.phi.dot(wedge(x, half_wedge_sum(w, n)));
    return value;
  }
  const PresentationAmbient& amb = *std::get<1>(f.ambient);
  const int n = amb.presentation.rank();
  const int r = amb.homology.h1_rank;
  if (w.max_generator() > n) throw std::out_of_range("eval_parallelogram: generator index exceeds rank");
  RationalVector x = to_rational(abelianize(w, n));
  RationalVector e = amb.homology.free_basis_projection * x;
  Rational value = quadratic_value(f.q, e);
  if (r >= 3) {
    Lambda2Vector a = push_forward(amb.homology.free_basis_projection, half_wedge_sum(w, n));
    for (int i = 0; i < n; ++i)
      if (x(i) != 0) a += x(i) * amb.section_correction[i];
    value += 2 * f.phi.dot(wedge(e, a));
  }
  return value;
}

WordFunction as_word_function(const ParallelogramFunction& f) {
  return [f](const Word& w) { return eval_parallelogram(f, w); };
}

ParallelogramFunction pull_back_to_free(const ParallelogramFunction& f) {
  if (std::holds_alternative<FreeAmbient>(f.ambient)) return f;
  const PresentationAmbient& amb = *std::get<1>(f.ambient);
  const int n = amb.presentation.rank();
  const int r = amb.homology.h1_rank;
  const RationalMatrix& p = amb.homology.free_basis_projection;
  RationalMatrix q = p.transpose() * f.q * p;
  if (r >= 3) {
    // The correction contributes x -> 2 phi(Px ^ L(x)), a quadratic form.
    RationalMatrix beta(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) beta(i, j) = 2 * f.phi.dot(wedge(RationalVector(p.col(i)), amb.section_correction[j]));
    q += (beta + RationalMatrix(beta.transpose())) / Rational(2);
  }
  return {FreeAmbient{n}, q, r >= 3 ? pull_back(p, f.phi) : Lambda3Form::Zero(triple_count(n))};
}

long long counting_f3(const std::vector<Letter>& letters) {
  const std::size_t len = letters.size();
  long long total = 0;
  for (std::size_t i = 0; i < len; ++i)
    for (std::size_t j = i + 1; j < len; ++j)
      for (std::size_t k = j + 1; k < len; ++k) {
        const int g1 = letters[i].generator, g2 = letters[j].generator, g3 = letters[k].generator;
        if (g1 > 3 || g2 > 3 || g3 > 3) throw std::out_of_range("counting_f3: word is not over three generators");
        if (g1 == g2 || g2 == g3 || g1 == g3) continue;
        const long long sign = letters[i].sign * letters[j].sign * letters[k].sign;
        // abc, bca, cab are the cyclic rotations of (1,2,3).
        const bool cyclic = (g2 - g1 + 3) % 3 == 1;
        total += cyclic ? sign : -sign;
      }
  return total;
}

// ---------------------------------------------------------------------------
// Descent.

namespace {

Eigen::Index quadratic_index(int n, int i, int j) {
  if (i > j) std::swap(i, j);
  // Rows 0..i-1 hold n, n-1, ... entries.
  return static_cast<Eigen::Index>(i) * n - static_cast<Eigen::Index>(i) * (i - 1) / 2 + (j - i);
}

}  // namespace

RationalVector FreeCoordinates::evaluation_functional(const Word& w) const {
  RationalVector c = RationalVector::Zero(size());
  RationalVector x = to_rational(abelianize(w, n));
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) c(quadratic_index(n, i, j)) = (i == j ? 1 : 2) * x(i) * x(j);
  if (n >= 3) c.tail(triple_count(n)) = 2 * wedge(x, half_wedge_sum(w, n));
  return c;
}

ParallelogramFunction FreeCoordinates::unpack(const RationalVector& coords) const {
  RationalMatrix q(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) q(i, j) = q(j, i) = coords(quadratic_index(n, i, j));
  return {FreeAmbient{n}, q, coords.tail(triple_count(n))};
}

RationalVector FreeCoordinates::pack(const ParallelogramFunction& f) const {
  RationalVector c(size());
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) c(quadratic_index(n, i, j)) = f.q(i, j);
  c.tail(triple_count(n)) = f.phi;
  return c;
}

DescentSolution descent_solve(const Presentation& p) {
  const int n = p.rank();
  FreeCoordinates coords{n};
  std::vector<RationalVector> rows;
  for (const Word& r : reduce_relators(p).relators) {
    const RationalVector fr = coords.evaluation_functional(r);
    rows.push_back(fr);
    for (int m = 1; m <= n; ++m) {
      const Word am = Word::generator(m);
      rows.push_back(coords.evaluation_functional(am * r) - coords.evaluation_functional(am) - fr);
    }
    const RationalVector rbar = to_rational(abelianize(r, n));
    if (rbar.isZero() || n < 3) continue;
    for (int m = 0; m < n; ++m)
      for (int m2 = m + 1; m2 < n; ++m2) {
        RationalVector em = RationalVector::Zero(n), em2 = RationalVector::Zero(n);
        em(m) = 1;
        em2(m2) = 1;
        RationalVector row = RationalVector::Zero(coords.size());
        row.tail(triple_count(n)) = wedge(em, em2, rbar);
        rows.push_back(row);
      }
  }
  RationalMatrix system(static_cast<Eigen::Index>(rows.size()), coords.size());
  for (std::size_t k = 0; k < rows.size(); ++k) system.row(static_cast<Eigen::Index>(k)) = rows[k].transpose();
  RationalMatrix kernel = rows.empty() ? RationalMatrix(RationalMatrix::Identity(coords.size(), coords.size()))
                                       : kernel_basis(system);
  DescentSolution out;
  out.dimension = static_cast<int>(kernel.cols());
  for (Eigen::Index k = 0; k < kernel.cols(); ++k) out.basis.push_back(coords.unpack(kernel.col(k)));
  return out;
}

// ---------------------------------------------------------------------------
// Identity catalog.

std::string to_string(Identity id) {
  switch (id) {
    case Identity::kParallelogram: return "PARALLELOGRAM";
    case Identity::kElem: return "ELEM";
    case Identity::kCubic: return "CUBIC";
    case Identity::kAlter3: return "ALTER3";
    case Identity::kVersGGG: return "VERSGGG";
    case Identity::kFormule4: return "FORMULE4";
    case Identity::kNoyauP: return "NOYAUP";
    case Identity::kOrder5: return "ORDER5";
  }
  return "?";
}

std::optional<Identity> parse_identity(const std::string& name) {
  std::string upper = name;
  std::transform(upper.begin(), upper.end(), upper.begin(), [](unsigned char ch) { return std::toupper(ch); });
  for (Identity id : {Identity::kParallelogram, Identity::kElem, Identity::kCubic, Identity::kAlter3,
                      Identity::kVersGGG, Identity::kFormule4, Identity::kNoyauP, Identity::kOrder5})
    if (to_string(id) == upper) return id;
  return std::nullopt;
}

int arity(Identity id) {
  switch (id) {
    case Identity::kParallelogram:
    case Identity::kElem: return 2;
    case Identity::kAlter3:
    case Identity::kVersGGG:
    case Identity::kNoyauP: return 3;
    case Identity::kCubic:
    case Identity::kFormule4: return 4;
    case Identity::kOrder5: return 5;
  }
  return 0;
}

GroupAlgebraElement alter3_rhs(const Word& a, const Word& b, const Word& c) {
  GroupAlgebraTensor t = tensor(epsilon({a, b}), c) + tensor(epsilon({a, c}), b) -
                         tensor(epsilon({b, word_inverse(c)}), a);
  return parallelogram_map(t);
}

GroupAlgebraElement formule4_rhs(const Word& a, const Word& b, const Word& c, const Word& d) {
  const Word ci = word_inverse(c), di = word_inverse(d);
  GroupAlgebraTensor t = tensor(epsilon({a, b, c}), d) + tensor(epsilon({b, c, d}), a) +
                         tensor(epsilon({a, b, d}), c) + tensor(epsilon({c, a, di}), b) -
                         tensor(epsilon({a, di}), epsilon({b, c})) - tensor(epsilon({b, d}), epsilon({c, a})) -
                         tensor(epsilon({d, ci}), epsilon({a, b}));
  return parallelogram_map(t);
}

std::pair<GroupAlgebraTensor, GroupAlgebraTensor> noyaup_kernel(const Word& a, const Word& b, const Word& c) {
  const Word bi = word_inverse(b), ci = word_inverse(c);
  GroupAlgebraTensor first = tensor(epsilon({a, b}), c) + tensor(epsilon({a, bi}), c) - tensor(epsilon({c, a}), b) -
                             tensor(epsilon({ci, a}), b);
  GroupAlgebraTensor second = tensor(epsilon({b, c}), a) - tensor(epsilon({c, b}), a) + tensor(epsilon({b, a}), c) -
                              tensor(epsilon({a, b}), c) - tensor(epsilon({a, ci}), b) + tensor(epsilon({ci, a}), b);
  return {first, second};
}

IdentityCheck verify_identity(Identity id, const WordFunction& f, const std::vector<Word>& in) {
  if (static_cast<int>(in.size()) != arity(id))
    throw std::invalid_argument("verify_identity: " + to_string(id) + " takes " + std::to_string(arity(id)) +
                                " words, got " + std::to_string(in.size()));
  std::vector<Rational> deviations;
  switch (id) {
    case Identity::kParallelogram:
      deviations.push_back(f(in[0] * in[1]) + f(in[0] * word_inverse(in[1])) - 2 * f(in[0]) - 2 * f(in[1]));
      break;
    case Identity::kElem: {
      const Rational fg = f(in[0]);
      for (int k = -3; k <= 3; ++k) deviations.push_back(f(word_power(in[0], k)) - k * k * fg);
      deviations.push_back(f(in[0] * in[1]) - f(in[1] * in[0]));
      deviations.push_back(f(commutator(in[0], in[1])));
      break;
    }
    case Identity::kCubic:
      deviations.push_back(epsilon_eval(f, in));
      break;
    case Identity::kAlter3: {
      const Rational lhs = epsilon_eval(f, {in[0], in[1], in[2]}) + epsilon_eval(f, {in[0], in[2], in[1]});
      deviations.push_back(lhs);
      deviations.push_back(lhs - chartan::apply(f, alter3_rhs(in[0], in[1], in[2])));
      break;
    }
    case Identity::kVersGGG:
      deviations.push_back(f(in[0] * commutator(in[1], in[2])) - f(in[0]) - 2 * epsilon_eval(f, in));
      break;
    case Identity::kFormule4:
      deviations.push_back(2 * epsilon_eval(f, in) - chartan::apply(f, formule4_rhs(in[0], in[1], in[2], in[3])));
      break;
    case Identity::kNoyauP: {
      auto [first, second] = noyaup_kernel(in[0], in[1], in[2]);
      deviations.push_back(chartan::apply(f, parallelogram_map(first)));
      deviations.push_back(chartan::apply(f, parallelogram_map(second)));
      break;
    }
    case Identity::kOrder5:
      deviations.push_back(epsilon_eval(f, in));
      break;
  }
  IdentityCheck out{true, Rational(0)};
  for (const auto& d : deviations) {
    out.residual = std::max(out.residual, Rational(mp::abs(d)));
    if (d != 0) out.holds = false;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Central functions.

Mat2Q Mat2QOps::inverse(const Mat2Q& x) const {
  const Rational det = x.determinant();
  if (det == 0) throw std::domain_error("singular 2x2 matrix");
  Mat2Q inv;
  inv << x(1, 1), -x(0, 1), -x(1, 0), x(0, 0);
  return inv / det;
}

CentralFunction make_central_function(WordFunction eval, int rank, std::uint64_t seed) {
  if (eval(Word()) != 0) throw PreconditionError("central function: f(1) must be 0");
  Rng rng(seed);
  for (int trial = 0; trial < 8; ++trial) {
    Word g = random_word(rank, 1 + static_cast<int>(rng.below(6)), rng);
    Word h = random_word(rank, 1 + static_cast<int>(rng.below(6)), rng);
    if (eval(g) != eval(word_inverse(g))) throw PreconditionError("central function: f(g) != f(g^-1)");
    if (eval(g * h) != eval(h * g)) throw PreconditionError("central function: f(gh) != f(hg)");
  }
  return {std::move(eval), rank};
}

CentralFunction trace_central_function(const std::vector<Mat2Q>& rep) {
  for (const auto& m : rep)
    if (m.determinant() != 1) throw PreconditionError("trace_central_function: generator image has determinant != 1");
  GroupHom<Mat2Q> hom{rep};
  auto eval = [hom](const Word& w) { return Rational(evaluate_hom(w, hom, Mat2QOps{}).trace() - 2); };
  return make_central_function(eval, static_cast<int>(rep.size()));
}

// ---------------------------------------------------------------------------
// Johnson action.

RationalMatrix johnson_action(const GroupHom<Word>& phi_map, const ParallelogramFunction& f) {
  const auto* free = std::get_if<FreeAmbient>(&f.ambient);
  if (!free) throw PreconditionError("johnson_action: needs a free-group parallelogram function");
  const int n = free->rank;
  if (static_cast<int>(phi_map.images.size()) != n) throw PreconditionError("johnson_action: image count != rank");
  std::vector<Lambda2Vector> tau;
  for (int i = 0; i < n; ++i) {
    ExponentVector unit = ExponentVector::Zero(n);
    unit(i) = 1;
    if (abelianize(phi_map.images[i], n) != unit)
      throw PreconditionError("johnson_action: automorphism does not act trivially on H1 (generator " +
                              std::to_string(i + 1) + ")");
    tau.push_back(lambda2_class(phi_map.images[i] * Word::generator(i + 1, -1), n));
  }
  // beta(u, v) = 2 phi(u ^ tau(v)); the form is its symmetrization.
  RationalMatrix beta = RationalMatrix::Zero(n, n);
  if (n >= 3)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        RationalVector ei = RationalVector::Zero(n);
        ei(i) = 1;
        beta(i, j) = 2 * f.phi.dot(wedge(ei, tau[j]));
      }
  RationalMatrix form = (beta + RationalMatrix(beta.transpose())) / Rational(2);

  FreeGroupOps ops;
  Rng rng(0x6a6f686e);
  for (int trial = 0; trial < 24; ++trial) {
    Word w = random_word(n, static_cast<int>(rng.below(9)), rng);
    Rational lhs = eval_parallelogram(f, evaluate_hom(w, phi_map, ops)) - eval_parallelogram(f, w);
    if (lhs != quadratic_value(form, to_rational(abelianize(w, n))))
      throw CrossCheckError("johnson_action: f o phi - f differs from the induced quadratic form on " +
                            print_word(w, default_generator_names(n)));
  }
  return form;
}

}  // namespace chartan
