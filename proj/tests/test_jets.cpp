#include "doctest.h"

#include "chartan/jets.hpp"
#include "chartan/parallelogram.hpp"

using namespace chartan;

namespace {

using QSeries = Series<Rational>;
using GSeries = Series<GaussianRational>;
using CSeries = Series<Complex>;

QSeries poly(std::initializer_list<long> coeffs, int precision = QSeries::kExact) {
  std::vector<Rational> c;
  for (long x : coeffs) c.emplace_back(x);
  return QSeries::from_coefficients(c, 0, precision);
}

Rational small(Rng& rng) { return Rational(rng.between(-3, 3)) / Rational(rng.between(1, 2)); }

QSeries random_poly(Rng& rng, int degree, int shift) {
  std::vector<Rational> c;
  for (int k = 0; k <= degree; ++k) c.push_back(small(rng));
  return QSeries::from_coefficients(c, shift);
}

// Unimodular by construction and unipotent upper-triangular at t = 0.
Mat2<Rational> random_unipotent_residue(Rng& rng) {
  const QSeries one(1), zero(0);
  Mat2<Rational> upper = make_mat2<Rational>(one, random_poly(rng, 2, 0), zero, one);
  Mat2<Rational> lower = make_mat2<Rational>(one, zero, random_poly(rng, 2, 1), one);
  Mat2<Rational> upper2 = make_mat2<Rational>(one, random_poly(rng, 1, 1), zero, one);
  return upper * lower * upper2;
}

Matrix2<Rational> random_sl2z(Rng& rng) {
  Matrix2<Rational> m = Matrix2<Rational>::Identity();
  for (int step = 0; step < 4; ++step) {
    Matrix2<Rational> e = Matrix2<Rational>::Identity();
    (step % 2 == 0 ? e(0, 1) : e(1, 0)) = Rational(rng.between(-3, 3));
    m = m * e;
  }
  return m;
}

Word random_short(Rng& rng, int rank, int max_len) {
  return random_word(rank, static_cast<int>(rng.below(static_cast<std::uint64_t>(max_len) + 1)), rng);
}

Rational det3(const RationalMatrix& m) {
  return m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) - m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
         m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
}

}  // namespace

TEST_CASE("series arithmetic") {
  const QSeries inv = poly({1, 1}).truncated(4).inverse();
  CHECK(inv == poly({1, -1, 1, -1}, 4));
  const QSeries laurent = QSeries::from_coefficients({1, 1}, 1, 5).inverse();
  CHECK(laurent.valuation() == -1);
  CHECK(laurent.precision() == 3);
  CHECK(laurent.window(-1, 3) == std::vector<Rational>{1, -1, 1, -1});
  CHECK(poly({1, 1}) * poly({1, -1}) == poly({1, 0, -1}));
  CHECK(QSeries(0).is_zero());
  CHECK_THROWS_AS(QSeries(0).inverse(), std::domain_error);
  CHECK_THROWS_AS(poly({1, 1}).inverse(), std::domain_error);
  CHECK(QSeries::monomial(2, 3).inverse() == QSeries::monomial(Rational(1, 2), -3));
  CHECK_THROWS_AS(poly({1}, 3).coefficient(3), std::out_of_range);

  // Precision bookkeeping: (t + O(t^4)) * (t^-1 + O(t^2)) is 1 + O(t^3).
  const QSeries a = QSeries::from_coefficients({1}, 1, 4);
  const QSeries b = QSeries::from_coefficients({1}, -1, 2);
  CHECK((a * b).precision() == 3);
  CHECK((a + b).precision() == 2);

  Rng rng(201);
  for (int trial = 0; trial < 50; ++trial) {
    QSeries s = random_poly(rng, 4, static_cast<int>(rng.between(-2, 2))).truncated(6);
    if (s.is_zero()) continue;
    QSeries product = s * s.inverse();
    CHECK(agree(product, QSeries(1), product.precision()));
  }
}

TEST_CASE("series square roots") {
  CHECK(poly({1, 1}, 3).sqrt() == QSeries::from_coefficients({1, Rational(1, 2), Rational(-1, 8)}, 0, 3));
  CHECK(QSeries::monomial(4, 2).sqrt() == QSeries::monomial(2, 1));
  try {
    (void)QSeries::t().sqrt();
    FAIL("expected ODD_SQUARE_CLASS");
  } catch (const DegeneracyError& e) {
    CHECK(e.code() == "ODD_SQUARE_CLASS");
  }
  try {
    (void)QSeries(2).sqrt();
    FAIL("expected NON_SQUARE_LEADING");
  } catch (const DegeneracyError& e) {
    CHECK(e.code() == "NON_SQUARE_LEADING");
  }
  CHECK(GSeries(GaussianRational(-1)).sqrt() == GSeries(GaussianRational::i()));
  CHECK(std::abs(CSeries(Complex(2, 0)).sqrt().coefficient(0) - std::sqrt(2.0)) < 1e-15);

  Rng rng(202);
  for (int trial = 0; trial < 50; ++trial) {
    QSeries root = random_poly(rng, 3, static_cast<int>(rng.between(-1, 2)));
    if (root.is_zero()) continue;
    QSeries square = (root * root).truncated(root.valuation() * 2 + 6);
    QSeries s = square.sqrt();
    CHECK(agree(s * s, square, (s * s).precision()));
  }
}

TEST_CASE("character jets from representations") {
  const QSeries one(1), zero(0), t = QSeries::t();
  std::vector<Mat2<Rational>> rep{make_mat2<Rational>(one, one, zero, one), make_mat2<Rational>(one, zero, t, one)};
  auto jet = character_jet_from_rep(rep, 4);
  auto names = default_generator_names(2);
  CHECK(jet.trace(parse_word("a b", names)) == poly({2, 1}, 5));
  CHECK(jet.trace(Word()) == poly({2}, 5));
  CHECK(jet.trace(parse_word("a", names)) == poly({2}, 5));

  CHECK_THROWS_AS(character_jet_from_rep<Rational>({make_mat2<Rational>(QSeries(2), zero, zero, one)}, 2),
                  PreconditionError);
  CHECK_THROWS_AS(character_jet_from_rep<Rational>({make_mat2<Rational>(one, zero, one, one)}, 2), PreconditionError);

  // The constant representation has every residual zero.
  auto trivial = character_jet_from_rep<Rational>({make_mat2<Rational>(one, zero, zero, one)}, 3);
  CHECK(verify_jet_equation(trivial, 3, {{Word::generator(1), Word()}}).holds);
  CHECK(extract_bilinear(trivial, 1).isZero());
}

TEST_CASE("jet identities on random unipotent-residue representations") {
  Rng rng(203);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Mat2<Rational>> rep;
    for (int i = 0; i < 3; ++i) rep.push_back(random_unipotent_residue(rng));
    auto jet = character_jet_from_rep(rep, 4);
    std::vector<std::pair<Word, Word>> pairs;
    for (int k = 0; k < 6; ++k) pairs.emplace_back(random_short(rng, 3, 6), random_short(rng, 3, 6));
    for (int n = 1; n <= 4; ++n) {
      auto check = verify_jet_equation(jet, n, pairs);
      CHECK(check.holds);
    }
    auto g1 = jet.coefficient_function(1);
    auto g2 = jet.coefficient_function(2);
    CHECK(exact_rank(extract_bilinear(jet, 3)) <= 2);
    std::vector<Word> w;
    for (int k = 0; k < 6; ++k) w.push_back(random_short(rng, 3, 4));
    CHECK(verify_identity(Identity::kParallelogram, g1, {w[0], w[1]}).holds);
    CHECK(epsilon_eval(g1, {w[0], w[1], w[2], w[3]}) == 0);
    CHECK(epsilon_eval(g2, {w[0], w[1], w[2], w[3], w[4]}) == 0);
    CHECK(epsilon_eval(g2, w) == 0);
    auto pair = [&](int i, int j) { return bilinear_pairing(jet, w[i], w[j]); };
    CHECK(2 * epsilon_eval(g2, {w[0], w[1], w[2], w[3]}) ==
          pair(0, 1) * pair(2, 3) + pair(0, 3) * pair(1, 2) - pair(0, 2) * pair(1, 3));
    // Rows a3, a5, a6 against columns a1, a4, a2.
    RationalMatrix minor(3, 3);
    const int rows[] = {2, 4, 5}, cols[] = {0, 3, 1};
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) minor(i, j) = pair(rows[i], cols[j]);
    CHECK(det3(minor) == 0);
  }
}

TEST_CASE("obstruction_report") {
  auto r1 = obstruction_report(RationalMatrix::Identity(3, 3), dual_triple(3, 0, 1, 2));
  CHECK_FALSE(r1.order2_extendable);
  auto r2 = obstruction_report(RationalMatrix::Identity(3, 3), Lambda3Form::Zero(1));
  CHECK(r2.order2_extendable);
  CHECK_FALSE(r2.order3_extendable);
  CHECK(r2.rank == 3);
  auto r3 = obstruction_report(RationalMatrix::Zero(3, 3), Lambda3Form::Zero(1), false);
  CHECK(r3.order2_extendable);
  CHECK(r3.order3_extendable);
  CHECK(r3.rank == 0);
  CHECK(r3.semantics.find("necessary only") != std::string::npos);
}

TEST_CASE("factor_quadratic_form") {
  auto product_matches = [](const FormFactorization& f, const RationalMatrix& q) {
    for (Eigen::Index i = 0; i < q.rows(); ++i)
      for (Eigen::Index j = 0; j < q.cols(); ++j) {
        const Complex sym = 0.5 * (f.first_floating(i) * f.second_floating(j) + f.first_floating(j) * f.second_floating(i));
        if (std::abs(sym - Complex(to_double(q(i, j)), 0)) > 1e-9) return false;
      }
    return true;
  };
  RationalMatrix xy = RationalMatrix::Zero(2, 2);
  xy(0, 1) = xy(1, 0) = Rational(1, 2);
  auto f = factor_quadratic_form(xy);
  CHECK(f.exact);
  // Up to scalars the factors are x1 and x2.
  CHECK(((f.first(1) == 0 && f.second(0) == 0) || (f.first(0) == 0 && f.second(1) == 0)));

  RationalMatrix square = RationalMatrix::Zero(2, 2);
  square(0, 0) = 1;
  auto g = factor_quadratic_form(square);
  CHECK(g.first == g.second);
  CHECK(g.first(0) == GaussianRational(1));

  auto h = factor_quadratic_form(RationalMatrix::Identity(2, 2));
  CHECK(h.exact);
  CHECK(h.first(1) == GaussianRational(0, 1) * h.first(0));
  CHECK(h.second(1) == GaussianRational(0, -1) * h.second(0));

  RationalMatrix irrational = RationalMatrix::Identity(2, 2);
  irrational(1, 1) = 2;
  auto k = factor_quadratic_form(irrational);
  CHECK_FALSE(k.exact);
  CHECK(product_matches(k, irrational));
  CHECK_THROWS_AS(factor_quadratic_form(RationalMatrix::Identity(3, 3)), PreconditionError);

  Rng rng(204);
  for (int trial = 0; trial < 40; ++trial) {
    RationalVector u(4), v(4);
    for (int i = 0; i < 4; ++i) {
      u(i) = small(rng);
      v(i) = small(rng);
    }
    RationalMatrix q = (u * v.transpose() + v * u.transpose()) / Rational(2);
    auto fq = factor_quadratic_form(q);
    CHECK(fq.exact);
    CHECK(product_matches(fq, q));
  }
}

TEST_CASE("parabolic deformation") {
  VectorX<Rational> first(2), second(2);
  first << 1, 0;
  second << 0, 1;
  auto rep = build_parabolic_deformation(first, second);
  auto names = default_generator_names(2);
  Mat2<Rational> ab = rep[0] * rep[1];
  CHECK(trace<Rational>(ab) == poly({2, 1}));
  auto jet = character_jet_from_rep(rep, 3);
  RationalMatrix expected(2, 2);
  expected << 0, 1, 1, 0;
  CHECK(extract_bilinear(jet, 2) == expected);

  auto identity = build_parabolic_deformation<Rational>(VectorX<Rational>::Zero(3), VectorX<Rational>::Zero(3));
  for (const auto& m : identity) CHECK(m == make_mat2<Rational>(1, 0, 0, 1));

  Rng rng(205);
  VectorX<Rational> l1(4), l2(4);
  for (int i = 0; i < 4; ++i) {
    l1(i) = small(rng);
    l2(i) = small(rng);
  }
  auto rep4 = build_parabolic_deformation(l1, l2);
  GroupHom<Mat2<Rational>> hom{rep4};
  for (int trial = 0; trial < 200; ++trial) {
    Word w = random_short(rng, 4, 10);
    RationalVector x = to_rational(abelianize(w, 4));
    QSeries tr = trace<Rational>(evaluate_hom(w, hom, Mat2Ops<Rational>{2}));
    CHECK(tr.coefficient(0) == 2);
    CHECK(tr.coefficient(1) == l1.dot(x) * l2.dot(x));
  }
}

TEST_CASE("matrix identities") {
  Matrix2<Rational> a, b;
  a << 1, 1, 0, 1;
  b << 1, 0, 1, 1;
  auto gram = check_matrix_identity(MatrixIdentity::kGram, a, b);
  CHECK(gram.value == -1);
  CHECK(gram.holds);
  CHECK(check_matrix_identity(MatrixIdentity::kIrred, a, b).holds);
  CHECK_FALSE(check_matrix_identity(MatrixIdentity::kIrred, a, Matrix2<Rational>(a * a)).holds);
  Matrix2<Rational> bad = Matrix2<Rational>::Identity();
  bad(0, 0) = 2;
  CHECK_THROWS_AS(check_matrix_identity(MatrixIdentity::kTraceId, bad, a), PreconditionError);

  Rng rng(206);
  for (int trial = 0; trial < 200; ++trial) {
    Matrix2<Rational> x = random_sl2z(rng), y = random_sl2z(rng);
    CHECK(check_matrix_identity(MatrixIdentity::kTraceId, x, y).holds);
    CHECK(check_matrix_identity(MatrixIdentity::kGram, x, y).holds);
  }
}

TEST_CASE("solve_trace_system") {
  const int order = 8;
  auto sol = solve_trace_system(GSeries(0), GSeries(0), GSeries(0), order);
  CHECK(sol.a == GSeries(GaussianRational::i()).truncated(sol.a.precision()));
  CHECK(sol.b.is_zero());
  CHECK(sol.c.is_zero());
  CHECK(sol.d == GSeries(-GaussianRational::i()).truncated(sol.d.precision()));

  auto x = GSeries::from_coefficients({2, 1}, 0);
  auto s2 = solve_trace_system(x, GSeries(2), GSeries(2), order);
  CHECK(s2.precision >= 1);
  CHECK(agree(s2.a * s2.d - s2.b * s2.c, GSeries(1), s2.precision));

  try {
    (void)solve_trace_system(QSeries(2), QSeries(2), QSeries(2), order);
    FAIL("expected DEGENERATE");
  } catch (const DegeneracyError& e) {
    CHECK(e.code() == "DEGENERATE");
  }

  // Floating mode reaches every branch and matches the equations.
  Rng rng(207);
  for (int trial = 0; trial < 30; ++trial) {
    auto rand_c = [&](int shift) {
      std::vector<Complex> c;
      for (int k = 0; k < 4; ++k) c.emplace_back(static_cast<double>(rng.between(-3, 3)), 0.0);
      return CSeries::from_coefficients(c, shift);
    };
    CSeries cx = rand_c(0), cy = rand_c(0), cz = rand_c(0);
    if (trace_discriminant(cx, cy, cz).truncated(order + 1).is_zero()) continue;
    auto fs = solve_trace_system(cx, cy, cz, order);
    CHECK(residual(fs.a * fs.d - fs.b * fs.c, CSeries(Complex(1, 0)), fs.precision) < 1e-9);
  }
}

TEST_CASE("lift_two_generator_character") {
  const int order = 8;
  // Round trip through a parabolic deformation of F2.
  Rng rng(208);
  int lifted = 0;
  for (int trial = 0; trial < 30; ++trial) {
    VectorX<Rational> l1(2), l2(2);
    for (int i = 0; i < 2; ++i) {
      l1(i) = small(rng);
      l2(i) = small(rng);
    }
    auto jet = character_jet_from_rep(build_parabolic_deformation(l1, l2), order);
    auto names = default_generator_names(2);
    QSeries x = jet.trace(Word::generator(1)), y = jet.trace(Word::generator(2)),
            z = jet.trace(parse_word("a b", names));
    if (trace_discriminant(x, y, z).is_zero()) continue;
    auto lift = lift_two_generator_character(x, y, z, order);
    CHECK(lift.branch == "irreducible");
    CHECK(lift.residuals == std::array<double, 3>{0, 0, 0});
    ++lifted;
  }
  CHECK(lifted > 10);

  auto trivial = lift_two_generator_character(QSeries(2), QSeries(2), QSeries(2), order);
  CHECK(trivial.branch == "scalar");
  CHECK(trivial.a == make_mat2<Rational>(1, 0, 0, 1));

  // Diagonal character with lambda = 1 + t, mu = lambda^2.
  const QSeries lambda = poly({1, 1}, order + 1);
  const QSeries mu = lambda * lambda;
  const QSeries x = lambda + lambda.inverse(), y = mu + mu.inverse(), z = lambda * mu + (lambda * mu).inverse();
  CHECK(trace_discriminant(x, y, z).is_zero());
  auto red = lift_two_generator_character(x, y, z, order);
  CHECK(red.branch == "reducible-a");
  CHECK(red.residuals == std::array<double, 3>{0, 0, 0});

  // x = 2 exactly forces the lift through the other generator.
  const QSeries y2 = mu + mu.inverse();
  auto via_b = lift_two_generator_character(QSeries(2), y2, y2, order);
  CHECK(via_b.branch == "reducible-b");

  CHECK_THROWS_AS(lift_two_generator_character(QSeries(3), QSeries(2), QSeries(2), order), PreconditionError);
}
