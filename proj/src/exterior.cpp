#include "chartan/exterior.hpp"

#include <stdexcept>

namespace chartan {

std::vector<std::array<int, 3>> increasing_triples(int n) {
  std::vector<std::array<int, 3>> out;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k) out.push_back({i, j, k});
  return out;
}

Eigen::Index triple_index(int n, int i, int j, int k) {
  if (!(0 <= i && i < j && j < k && k < n)) throw std::out_of_range("triple_index: not an increasing triple");
  // Triples starting below i, then those (i, j', k') with j' < j, then k.
  Eigen::Index pos = 0;
  for (int a = 0; a < i; ++a) pos += static_cast<Eigen::Index>(n - a - 1) * (n - a - 2) / 2;
  for (int b = i + 1; b < j; ++b) pos += n - b - 1;
  return pos + (k - j - 1);
}

Lambda2Vector basis_wedge(int n, int i, int j) {
  Lambda2Vector a = Lambda2Vector::Zero(n, n);
  a(i, j) += 1;
  a(j, i) -= 1;
  return a;
}

Lambda2Vector wedge(const RationalVector& x, const RationalVector& y) {
  return x * y.transpose() - y * x.transpose();
}

Lambda3Vector wedge(const RationalVector& x, const Lambda2Vector& a) {
  const int n = static_cast<int>(x.size());
  Lambda3Vector out(triple_count(n));
  Eigen::Index pos = 0;
  for (const auto& [i, j, k] : increasing_triples(n)) out(pos++) = x(i) * a(j, k) - x(j) * a(i, k) + x(k) * a(i, j);
  return out;
}

Lambda3Vector wedge(const RationalVector& x, const RationalVector& y, const RationalVector& z) {
  return wedge(x, wedge(y, z));
}

Lambda3Form dual_triple(int n, int i, int j, int k) {
  int t[3] = {i, j, k};
  int sign = 1;
  for (int p = 0; p < 3; ++p)
    for (int q = 0; q + 1 < 3 - p; ++q)
      if (t[q] > t[q + 1]) {
        std::swap(t[q], t[q + 1]);
        sign = -sign;
      }
  Lambda3Form phi = Lambda3Form::Zero(triple_count(n));
  phi(triple_index(n, t[0], t[1], t[2])) = sign;
  return phi;
}

Lambda2Vector push_forward(const RationalMatrix& p, const Lambda2Vector& a) {
  return p * a * p.transpose();
}

Lambda3Form pull_back(const RationalMatrix& p, const Lambda3Form& phi) {
  const int n = static_cast<int>(p.cols());
  Lambda3Form out(triple_count(n));
  Eigen::Index pos = 0;
  for (const auto& [i, j, k] : increasing_triples(n))
    out(pos++) = evaluate_form(phi, p.col(i), p.col(j), p.col(k));
  return out;
}

Rational evaluate_form(const Lambda3Form& phi, const RationalVector& x, const RationalVector& y,
                       const RationalVector& z) {
  if (phi.size() == 0) return Rational(0);
  return phi.dot(wedge(x, y, z));
}

}  // namespace chartan
