#pragma once

// Deformations of the trivial SL2 character: 2x2 matrices over truncated
// series, character jets t_w = 2 + g_1(w) t + ... + g_N(w) t^N, the order-two
// and order-three obstructions, parabolic deformations of rank <= 2 forms,
// and lifting of two-generator trace data back to matrices.

#include "chartan/exterior.hpp"
#include "chartan/linalg.hpp"
#include "chartan/series.hpp"
#include "chartan/words.hpp"

#include <Eigen/LU>

#include <array>
#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace chartan {

template <class S>
using Mat2 = Eigen::Matrix<Series<S>, 2, 2>;

template <class S>
Series<S> trace(const Mat2<S>& m) {
  return m(0, 0) + m(1, 1);
}

template <class S>
Series<S> determinant(const Mat2<S>& m) {
  return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
}

template <class S>
Mat2<S> make_mat2(Series<S> a, Series<S> b, Series<S> c, Series<S> d) {
  Mat2<S> m;
  m << std::move(a), std::move(b), std::move(c), std::move(d);
  return m;
}

template <class S>
Mat2<S> truncated(const Mat2<S>& m, int precision) {
  return m.unaryExpr([precision](const Series<S>& s) { return s.truncated(precision); });
}

/// Group structure on unimodular matrices mod t^precision. The inverse is
/// the adjugate, valid because determinants are one.
template <class S>
struct Mat2Ops {
  using value_type = Mat2<S>;
  int precision = Series<S>::kExact;
  Mat2<S> identity() const { return make_mat2<S>(1, 0, 0, 1); }
  Mat2<S> product(const Mat2<S>& x, const Mat2<S>& y) const { return truncated<S>(x * y, precision); }
  Mat2<S> inverse(const Mat2<S>& x) const { return make_mat2<S>(x(1, 1), -x(0, 1), -x(1, 0), x(0, 0)); }
};

/// Largest coefficient magnitude of a - b below `precision`, scaled down
/// by the size of the operands in floating mode.
template <class S>
double residual(const Series<S>& a, const Series<S>& b, int precision) {
  const Series<S> diff = a - b;
  const int hi = std::min(precision, diff.precision());
  double worst = 0.0, scale = 1.0;
  for (int k = std::min(diff.valuation(), std::min(a.valuation(), b.valuation())); k < hi; ++k) {
    worst = std::max(worst, ScalarTraits<S>::magnitude(diff.coefficient(k)));
    if (k < a.precision()) scale = std::max(scale, ScalarTraits<S>::magnitude(a.coefficient(k)));
    if (k < b.precision()) scale = std::max(scale, ScalarTraits<S>::magnitude(b.coefficient(k)));
  }
  return ScalarTraits<S>::exact ? worst : worst / scale;
}

template <class S>
bool within_tolerance(double r) {
  return ScalarTraits<S>::exact ? r == 0.0 : r <= default_tolerance();
}

// ---------------------------------------------------------------------------
// Character jets.

template <class S>
struct CharacterJet {
  int order = 0;
  /// Trace series known mod t^(order+1).
  std::function<Series<S>(const Word&)> trace;

  /// Plain coefficient g_k(w); g_0 = 2.
  S g(int k, const Word& w) const { return trace(w).coefficient(k); }
  std::function<S(const Word&)> coefficient_function(int k) const {
    auto self = *this;
    return [self, k](const Word& w) { return self.g(k, w); };
  }
};

/// Jet of w -> Tr rho(w) for generator images that are unimodular mod
/// t^(order+1) and reduce at t = 0 to unipotent upper-triangular matrices.
template <class S>
CharacterJet<S> character_jet_from_rep(const std::vector<Mat2<S>>& rep, int order) {
  if (order < 0) throw PreconditionError("character jet: order must be >= 0");
  const int precision = order + 1;
  std::vector<Mat2<S>> images;
  for (std::size_t i = 0; i < rep.size(); ++i) {
    Mat2<S> m = truncated<S>(rep[i], precision);
    const std::string where = "generator " + std::to_string(i + 1);
    if (!within_tolerance<S>(residual(determinant<S>(m), Series<S>(1), precision)))
      throw PreconditionError("character jet: determinant of " + where + " is not 1 mod t^" + std::to_string(precision));
    for (int r = 0; r < 2; ++r)
      for (int c = 0; c < 2; ++c)
        if (m(r, c).valuation() < 0) throw PreconditionError("character jet: " + where + " has a pole");
    const bool unipotent = within_tolerance<S>(residual(m(0, 0), Series<S>(1), 1)) &&
                           within_tolerance<S>(residual(m(1, 1), Series<S>(1), 1)) &&
                           within_tolerance<S>(residual(m(1, 0), Series<S>(0), 1));
    if (!unipotent)
      throw PreconditionError("character jet: " + where + " is not unipotent upper-triangular at t = 0");
    images.push_back(std::move(m));
  }
  GroupHom<Mat2<S>> hom{std::move(images)};
  Mat2Ops<S> ops{precision};
  return {order, [hom, ops](const Word& w) { return trace<S>(evaluate_hom(w, hom, ops)).truncated(ops.precision); }};
}

template <class S>
struct JetEquationCheck {
  bool holds = true;
  std::vector<S> residuals;  // one per pair
};

/// g_n(xy) + g_n(xy^-1) = 2 g_n(x) + 2 g_n(y) + sum_{0<k<n} g_k(x) g_{n-k}(y).
template <class S>
JetEquationCheck<S> verify_jet_equation(const CharacterJet<S>& jet, int n,
                                        const std::vector<std::pair<Word, Word>>& pairs) {
  if (n < 1 || n > jet.order) throw PreconditionError("jet equation: order out of range");
  JetEquationCheck<S> out;
  for (const auto& [x, y] : pairs) {
    const Series<S> tx = jet.trace(x), ty = jet.trace(y);
    S r = jet.g(n, x * y) + jet.g(n, x * word_inverse(y)) - S(2) * tx.coefficient(n) - S(2) * ty.coefficient(n);
    for (int k = 1; k < n; ++k) r -= tx.coefficient(k) * ty.coefficient(n - k);
    bool zero;
    if constexpr (ScalarTraits<S>::exact)
      zero = ScalarTraits<S>::is_zero(r);
    else
      zero = ScalarTraits<S>::is_zero(r, default_tolerance());
    out.holds = out.holds && zero;
    out.residuals.push_back(r);
  }
  return out;
}

/// <x, y> = g_1(xy) - g_1(x) - g_1(y), the polarization of g_1.
template <class S>
S bilinear_pairing(const CharacterJet<S>& jet, const Word& x, const Word& y) {
  if (jet.order < 1) throw PreconditionError("bilinear pairing needs a jet of order >= 1");
  return jet.g(1, x * y) - jet.g(1, x) - jet.g(1, y);
}

/// Matrix of <a_i, a_j> on the generators; the diagonal is <a_i, a_i> = 2 g_1(a_i).
template <class S>
MatrixX<S> extract_bilinear(const CharacterJet<S>& jet, int rank) {
  MatrixX<S> m(rank, rank);
  for (int i = 0; i < rank; ++i)
    for (int j = i; j < rank; ++j)
      m(i, j) = m(j, i) = bilinear_pairing(jet, Word::generator(i + 1), Word::generator(j + 1));
  return m;
}

// ---------------------------------------------------------------------------
// Obstructions and the parabolic deformation.

struct ObstructionReport {
  bool order2_extendable = false;
  bool order3_extendable = false;
  int rank = 0;
  /// Whether the answers are only necessary conditions or also sufficient.
  std::string semantics;
};

/// First-order data (q, phi): order two needs phi = 0, order three also
/// needs rank q <= 2. Over free groups both conditions are sufficient.
ObstructionReport obstruction_report(const RationalMatrix& q, const Lambda3Form& phi, bool free_ambient = true);

struct FormFactorization {
  bool exact = false;
  VectorX<GaussianRational> first, second;          // exact factors when `exact`
  VectorX<Complex> first_floating, second_floating;  // always present
};

/// Linear forms l1, l2 with l1(x) l2(x) = x^T q x, for symmetric q of rank <= 2.
FormFactorization factor_quadratic_form(const RationalMatrix& q);

/// rho(a_i) = [[1, l1_i], [0, 1]] [[1, 0], [t l2_i, 1]], whose trace on w is
/// 2 + t l1(w) l2(w) + O(t^2).
template <class S>
std::vector<Mat2<S>> build_parabolic_deformation(const VectorX<S>& first, const VectorX<S>& second) {
  if (first.size() != second.size()) throw PreconditionError("parabolic deformation: forms of different length");
  std::vector<Mat2<S>> rep;
  const Series<S> t = Series<S>::t();
  for (Eigen::Index i = 0; i < first.size(); ++i) {
    const Series<S> u(first(i)), l(second(i));
    rep.push_back(make_mat2<S>(Series<S>(1) + u * l * t, u, l * t, Series<S>(1)));
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Identities of SL2 matrices.

enum class MatrixIdentity { kTraceId, kGram, kIrred };

template <class S>
struct MatrixIdentityCheck {
  bool holds = false;
  S value{};     // left-hand side (TRACE_ID, GRAM) or Tr[A,B] (IRRED)
  S expected{};  // right-hand side, or 2 for IRRED
};

template <class S>
using Matrix2 = Eigen::Matrix<S, 2, 2>;

template <class S>
Matrix2<S> unimodular_inverse(const Matrix2<S>& m) {
  Matrix2<S> inv;
  inv << m(1, 1), -m(0, 1), -m(1, 0), m(0, 0);
  return inv;
}

/// TRACE_ID: Tr A Tr B = Tr AB + Tr AB^-1. GRAM: the Gram determinant of
/// (1, A, B, AB) under (M, N) -> Tr MN equals -(Tr[A,B] - 2)^2. IRRED: holds
/// when Tr[A,B] != 2, which certifies that <A, B> is irreducible.
template <class S>
MatrixIdentityCheck<S> check_matrix_identity(MatrixIdentity kind, const Matrix2<S>& a, const Matrix2<S>& b) {
  if (a.determinant() != S(1) || b.determinant() != S(1))
    throw PreconditionError("matrix identity: determinants must be 1");
  const Matrix2<S> ai = unimodular_inverse(a), bi = unimodular_inverse(b);
  const S commutator_trace = (a * b * ai * bi).trace();
  MatrixIdentityCheck<S> out;
  switch (kind) {
    case MatrixIdentity::kTraceId:
      out.value = a.trace() * b.trace();
      out.expected = (a * b).trace() + (a * bi).trace();
      out.holds = out.value == out.expected;
      break;
    case MatrixIdentity::kGram: {
      const std::array<Matrix2<S>, 4> basis{Matrix2<S>::Identity(), a, b, a * b};
      Eigen::Matrix<S, 4, 4> gram;
      for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) gram(i, j) = (basis[i] * basis[j]).trace();
      out.value = gram.determinant();
      out.expected = -(commutator_trace - S(2)) * (commutator_trace - S(2));
      out.holds = out.value == out.expected;
      break;
    }
    case MatrixIdentity::kIrred:
      out.value = commutator_trace;
      out.expected = S(2);
      out.holds = commutator_trace != S(2);
      break;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Lifting two-generator characters.

template <class S>
Series<S> trace_discriminant(const Series<S>& x, const Series<S>& y, const Series<S>& z) {
  return x * x + y * y + z * z - x * y * z - Series<S>(4);
}

template <class S>
struct TraceSolution {
  Series<S> a, b, c, d;
  std::string strategy;  // linear | square | scaled-square | two-squares
  int precision = 0;     // equations hold mod t^precision
};

namespace detail {

template <class S>
S half() {
  return S(1) / S(2);
}

template <class S>
bool is_constant(const Series<S>& s, int value) {
  return within_tolerance<S>(residual(s, Series<S>(value), s.precision()));
}

template <class S>
int min_precision(std::initializer_list<Series<S>> xs) {
  int p = Series<S>::kExact;
  for (const auto& s : xs) p = std::min(p, s.precision());
  return p;
}

}  // namespace detail

/// Solves a + d = y, b - c + d x = z, a d - b c = 1 for series a, b, c, d,
/// given x, y, z known mod t^(order+1). Completing squares turns the system
/// into a'^2 + k b'^2 = R with k = (4 - x^2)/4 and R = Delta/(4 - x^2); the
/// branch is picked by which square roots exist.
template <class S>
TraceSolution<S> solve_trace_system(Series<S> x, Series<S> y, Series<S> z, int order) {
  using Ser = Series<S>;
  const int precision = order + 1;
  x = x.truncated(precision);
  y = y.truncated(precision);
  z = z.truncated(precision);
  const Ser delta = trace_discriminant(x, y, z);
  if (delta.is_zero())
    throw DegeneracyError("DEGENERATE", "x^2 + y^2 + z^2 - xyz - 4 vanishes mod t^" + std::to_string(precision) +
                                            "; the character is reducible to this order");
  const S h2 = detail::half<S>();
  const Ser four_minus = Ser(4) - x * x;
  TraceSolution<S> out;
  Ser a, b;
  if (four_minus.is_zero()) {
    // x = +-2: the quadratic in b degenerates to a linear equation.
    const Ser slope = z - h2 * (x * y);
    b = (Ser(1) - S(1) / S(4) * (y * y)) / slope;
    a = h2 * y + h2 * (b * x);
    out.strategy = "linear";
  } else {
    const Ser k = S(1) / S(4) * four_minus;
    const Ser r = delta / four_minus;
    const Ser shift = (S(2) * z - x * y) / four_minus;
    std::vector<std::string> failures;
    auto attempt = [&](const char* name, auto&& solve) {
      if (!out.strategy.empty()) return;
      try {
        auto [ap, bp] = solve();
        b = bp + shift;
        a = ap + h2 * y + h2 * (b * x);
        out.strategy = name;
      } catch (const DegeneracyError& e) {
        failures.push_back(std::string(name) + ": " + e.what());
      }
    };
    attempt("square", [&] { return std::pair{r.sqrt(), Ser::zero(r.precision())}; });
    attempt("scaled-square", [&] { return std::pair{Ser::zero(r.precision()), (r / k).sqrt()}; });
    attempt("two-squares", [&] {
      // a'^2 + k b'^2 = (a' + s b')(a' - s b') with s^2 = -k; take the
      // factors R and 1.
      const Ser s = (-k).sqrt();
      return std::pair{h2 * (r + Ser(1)), (r - Ser(1)) / (S(2) * s)};
    });
    if (out.strategy.empty()) {
      std::string why;
      for (const auto& f : failures) why += "; " + f;
      throw DegeneracyError("EXACT_SQRT_UNAVAILABLE",
                            "no branch of the trace system has square roots in " +
                                std::string(ScalarTraits<S>::mode) + " mode" + why);
    }
  }
  out.a = a;
  out.b = b;
  out.d = y - a;
  out.c = b + out.d * x - z;
  const Ser det = out.a * out.d - out.b * out.c;
  out.precision = std::min({detail::min_precision<S>({out.a, out.b, out.c, out.d}), det.precision(), precision});
  const double worst = std::max({residual(out.a + out.d, y, out.precision),
                                 residual(out.b - out.c + out.d * x, z, out.precision),
                                 residual(det, Ser(1), out.precision)});
  if (!within_tolerance<S>(worst))
    throw CrossCheckError("trace system: back-substitution residual " + std::to_string(worst));
  return out;
}

template <class S>
struct TwoGeneratorLift {
  Mat2<S> a, b;
  std::string branch;  // irreducible | reducible-a | reducible-b | reducible-ab | scalar
  int precision = 0;   // traces match mod t^precision
  std::array<double, 3> residuals{};  // Tr A - x, Tr B - y, Tr AB - z
};

namespace detail {

template <class S>
Mat2<S> companion(const Series<S>& w) {
  return make_mat2<S>(Series<S>(0), Series<S>(-1), Series<S>(1), w);
}

// [[u, v], [-v, u - v w]] commutes with companion(w).
template <class S>
Mat2<S> centralizer_element(const Series<S>& u, const Series<S>& v, const Series<S>& w) {
  return make_mat2<S>(u, v, -v, u - v * w);
}

template <class S>
int sign_of_two(const Series<S>& s) {
  if (is_constant(s, 2)) return 1;
  if (is_constant(s, -2)) return -1;
  return 0;
}

}  // namespace detail

/// Matrices (A, B) with Tr A = x, Tr B = y, Tr AB = z for a two-generator
/// character jet that is trivial at t = 0. Irreducible jets use
/// A = [[0, -1], [1, x]]; reducible ones put A and B in the centralizer of
/// the companion matrix of whichever of a, b, ab has trace not +-2.
template <class S>
TwoGeneratorLift<S> lift_two_generator_character(Series<S> x, Series<S> y, Series<S> z, int order) {
  using Ser = Series<S>;
  const int precision = order + 1;
  x = x.truncated(precision);
  y = y.truncated(precision);
  z = z.truncated(precision);
  for (const auto* s : {&x, &y, &z})
    if (!within_tolerance<S>(residual(*s, Ser(2), 1)))
      throw PreconditionError("lift: traces must have constant term 2 (trivial residual character)");

  TwoGeneratorLift<S> out;
  const Ser delta = trace_discriminant(x, y, z);
  if (!delta.is_zero()) {
    auto sol = solve_trace_system(x, y, z, order);
    out.a = detail::companion(x);
    out.b = make_mat2<S>(sol.a, sol.b, sol.c, sol.d);
    out.branch = "irreducible";
  } else {
    const int sx = detail::sign_of_two(x), sy = detail::sign_of_two(y), sz = detail::sign_of_two(z);
    if (sx != 0 && sy != 0 && sz != 0) {
      out.a = make_mat2<S>(Ser(sx), Ser(0), Ser(0), Ser(sx));
      out.b = make_mat2<S>(Ser(sy), Ser(0), Ser(0), Ser(sy));
      out.branch = "scalar";
    } else {
      // Two linear equations in (u, v), solved by Cramer's rule.
      auto cramer = [](const Ser& p, const Ser& q, const Ser& r, const Ser& s, const Ser& e, const Ser& f) {
        const Ser det = p * s - q * r;
        return std::pair{(e * s - q * f) / det, (p * f - e * r) / det};
      };
      if (sx == 0) {
        // B commutes with A: 2u - x v = y and x u + (2 - x^2) v = z.
        auto [u, v] = cramer(Ser(2), -x, x, Ser(2) - x * x, y, z);
        out.a = detail::companion(x);
        out.b = detail::centralizer_element(u, v, x);
        out.branch = "reducible-a";
      } else if (sy == 0) {
        auto [u, v] = cramer(Ser(2), -y, y, Ser(2) - y * y, x, z);
        out.a = detail::centralizer_element(u, v, y);
        out.b = detail::companion(y);
        out.branch = "reducible-b";
      } else {
        // C = AB is the companion of z, A commutes with it and B = A^-1 C:
        // Tr A = 2u - z v = x and Tr B = z u - 2v = y.
        auto [u, v] = cramer(Ser(2), -z, z, Ser(-2), x, y);
        out.a = detail::centralizer_element(u, v, z);
        out.b = Mat2Ops<S>{}.inverse(out.a) * detail::companion(z);
        out.branch = "reducible-ab";
      }
    }
  }
  const Ser ta = trace<S>(out.a), tb = trace<S>(out.b), tab = trace<S>(Mat2<S>(out.a * out.b));
  out.precision = std::min({ta.precision(), tb.precision(), tab.precision(), determinant<S>(out.a).precision(),
                            determinant<S>(out.b).precision(), precision});
  out.residuals = {residual(ta, x, out.precision), residual(tb, y, out.precision), residual(tab, z, out.precision)};
  const double det_residual = std::max(residual(determinant<S>(out.a), Ser(1), out.precision),
                                       residual(determinant<S>(out.b), Ser(1), out.precision));
  if (!within_tolerance<S>(std::max({out.residuals[0], out.residuals[1], out.residuals[2], det_residual})))
    throw CrossCheckError("lift: traces or determinants of the lifted matrices do not match; for a reducible "
                          "branch this means the input is not a character jet");
  return out;
}

}  // namespace chartan
