#include "chartan/jets.hpp"

namespace chartan {

ObstructionReport obstruction_report(const RationalMatrix& q, const Lambda3Form& phi, bool free_ambient) {
  if (q.rows() != q.cols() || q != RationalMatrix(q.transpose()))
    throw PreconditionError("obstruction report: q must be a symmetric square matrix");
  if (phi.size() != triple_count(q.rows()))
    throw PreconditionError("obstruction report: phi has the wrong length for q");
  ObstructionReport out;
  out.rank = static_cast<int>(exact_rank(q));
  out.order2_extendable = phi.isZero();
  out.order3_extendable = out.order2_extendable && out.rank <= 2;
  out.semantics = free_ambient ? "free group: the conditions are necessary and sufficient"
                               : "presented group: the conditions are necessary only";
  return out;
}

namespace {

struct DiagonalTerm {
  Rational weight;
  RationalVector form;
};

// Lagrange's method: peel off weight * form(x)^2 using any v with
// v^T M v != 0, preferring a basis vector.
std::vector<DiagonalTerm> diagonalize(RationalMatrix m) {
  std::vector<DiagonalTerm> terms;
  const Eigen::Index n = m.rows();
  while (!m.isZero()) {
    RationalVector v = RationalVector::Zero(n);
    bool found = false;
    for (Eigen::Index k = 0; k < n && !found; ++k)
      if (m(k, k) != 0) {
        v(k) = 1;
        found = true;
      }
    for (Eigen::Index i = 0; i < n && !found; ++i)
      for (Eigen::Index j = i + 1; j < n && !found; ++j)
        if (m(i, j) != 0) {
          v(i) = 1;
          v(j) = 1;
          found = true;
        }
    const RationalVector w = m * v;
    const Rational d = v.dot(w);
    terms.push_back({d, w / d});
    m -= w * w.transpose() / d;
  }
  return terms;
}

VectorX<GaussianRational> to_gaussian(const RationalVector& v) {
  return v.unaryExpr([](const Rational& x) { return GaussianRational(x); });
}

VectorX<Complex> to_complex(const VectorX<GaussianRational>& v) {
  return v.unaryExpr([](const GaussianRational& x) { return chartan::to_complex(x); });
}

VectorX<Complex> to_complex(const RationalVector& v) {
  return v.unaryExpr([](const Rational& x) { return Complex(to_double(x), 0.0); });
}

}  // namespace

FormFactorization factor_quadratic_form(const RationalMatrix& q) {
  if (q.rows() != q.cols() || q != RationalMatrix(q.transpose()))
    throw PreconditionError("factor_quadratic_form: q must be a symmetric square matrix");
  const auto rank = exact_rank(q);
  if (rank > 2)
    throw PreconditionError("factor_quadratic_form: rank " + std::to_string(rank) +
                            " > 2, not a product of two linear forms");
  const Eigen::Index n = q.rows();
  auto terms = diagonalize(q);
  FormFactorization out;
  if (terms.empty()) {
    out.exact = true;
    out.first = out.second = VectorX<GaussianRational>::Zero(n);
  } else if (terms.size() == 1) {
    out.exact = true;
    out.first = to_gaussian(terms[0].weight * terms[0].form);
    out.second = to_gaussian(terms[0].form);
  } else {
    // d1 l1^2 + d2 l2^2 = d1 (l1 + s l2)(l1 - s l2) with s^2 = -d2/d1.
    const auto& [d1, l1] = terms[0];
    const auto& [d2, l2] = terms[1];
    const Rational ratio = -d2 / d1;
    if (auto s = gaussian_sqrt(GaussianRational(ratio))) {
      out.exact = true;
      out.first = to_gaussian(d1 * l1) + (GaussianRational(d1) * *s) * to_gaussian(l2);
      out.second = to_gaussian(l1) - *s * to_gaussian(l2);
    } else {
      const Complex root = std::sqrt(Complex(to_double(ratio), 0.0));
      out.first_floating = to_double(d1) * (to_complex(l1) + root * to_complex(l2));
      out.second_floating = to_complex(l1) - root * to_complex(l2);
    }
  }
  if (out.exact) {
    out.first_floating = to_complex(out.first);
    out.second_floating = to_complex(out.second);
    MatrixX<GaussianRational> outer = out.first * out.second.transpose();
    MatrixX<GaussianRational> sym = (outer + MatrixX<GaussianRational>(outer.transpose())) * GaussianRational(Rational(1, 2));
    if (sym != q.unaryExpr([](const Rational& x) { return GaussianRational(x); }))
      throw CrossCheckError("factor_quadratic_form: product of the factors differs from q");
  } else {
    MatrixX<Complex> outer = out.first_floating * out.second_floating.transpose();
    MatrixX<Complex> sym = (outer + MatrixX<Complex>(outer.transpose())) * 0.5;
    double scale = 1.0, worst = 0.0;
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < n; ++j) {
        scale = std::max(scale, std::abs(to_double(q(i, j))));
        worst = std::max(worst, std::abs(sym(i, j) - Complex(to_double(q(i, j)), 0.0)));
      }
    if (worst > default_tolerance() * scale)
      throw CrossCheckError("factor_quadratic_form: floating factors miss q by " + std::to_string(worst));
  }
  return out;
}

}  // namespace chartan
