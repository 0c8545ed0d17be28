#include "chartan/magnus.hpp"

#include "chartan/errors.hpp"

namespace chartan {

TruncatedTensorSeries::TruncatedTensorSeries(int rank, int degree_cap) : rank_(rank), degree_cap_(degree_cap) {
  if (rank < 0 || degree_cap < 0) throw PreconditionError("TruncatedTensorSeries: negative rank or degree cap");
}

TruncatedTensorSeries TruncatedTensorSeries::one(int rank, int degree_cap) {
  TruncatedTensorSeries s(rank, degree_cap);
  s.add({}, Rational(1));
  return s;
}

Rational TruncatedTensorSeries::coefficient(const IndexWord& key) const {
  auto it = coefficients_.find(key);
  return it == coefficients_.end() ? Rational(0) : it->second;
}

void TruncatedTensorSeries::add(const IndexWord& key, const Rational& value) {
  if (static_cast<int>(key.size()) > degree_cap_ || value == 0) return;
  auto [it, fresh] = coefficients_.try_emplace(key, value);
  if (!fresh) {
    it->second += value;
    if (it->second == 0) coefficients_.erase(it);
  }
}

namespace {

void require_compatible(const TruncatedTensorSeries& s, const TruncatedTensorSeries& t) {
  if (s.rank() != t.rank() || s.degree_cap() != t.degree_cap())
    throw PreconditionError("tensor series: rank or degree cap mismatch");
}

// 1 + X_g, or its inverse 1 - X_g + X_g^2 - ... truncated at the cap.
TruncatedTensorSeries letter_series(const Letter& x, int rank, int cap) {
  TruncatedTensorSeries s = TruncatedTensorSeries::one(rank, cap);
  if (x.sign > 0) {
    s.add({x.generator}, Rational(1));
    return s;
  }
  IndexWord key;
  for (int d = 1; d <= cap; ++d) {
    key.push_back(x.generator);
    s.add(key, Rational(d % 2 == 0 ? 1 : -1));
  }
  return s;
}

}  // namespace

TruncatedTensorSeries series_product(const TruncatedTensorSeries& s, const TruncatedTensorSeries& t) {
  require_compatible(s, t);
  TruncatedTensorSeries out(s.rank(), s.degree_cap());
  for (const auto& [ks, cs] : s.coefficients()) {
    for (const auto& [kt, ct] : t.coefficients()) {
      if (static_cast<int>(ks.size() + kt.size()) > s.degree_cap()) continue;
      IndexWord key = ks;
      key.insert(key.end(), kt.begin(), kt.end());
      out.add(key, cs * ct);
    }
  }
  return out;
}

TruncatedTensorSeries series_inverse(const TruncatedTensorSeries& s) {
  if (s.coefficient({}) != 1) throw PreconditionError("series_inverse: constant coefficient must be 1");
  // s = 1 + N with N nilpotent modulo the cap: s^-1 = sum_k (-N)^k.
  TruncatedTensorSeries minus_n(s.rank(), s.degree_cap());
  for (const auto& [k, c] : s.coefficients())
    if (!k.empty()) minus_n.add(k, -c);
  TruncatedTensorSeries result = TruncatedTensorSeries::one(s.rank(), s.degree_cap());
  TruncatedTensorSeries power = result;
  for (int d = 1; d <= s.degree_cap(); ++d) {
    power = series_product(power, minus_n);
    for (const auto& [k, c] : power.coefficients()) result.add(k, c);
  }
  return result;
}

TruncatedTensorSeries magnus_expand(const Word& w, int rank, int degree_cap) {
  if (degree_cap < 1) throw PreconditionError("magnus_expand: degree cap must be at least 1");
  if (w.max_generator() > rank) throw std::out_of_range("magnus_expand: generator index exceeds rank");
  TruncatedTensorSeries result = TruncatedTensorSeries::one(rank, degree_cap);
  for (const Letter& x : w) result = series_product(result, letter_series(x, rank, degree_cap));
  return result;
}

RationalMatrix degree_two_matrix(const TruncatedTensorSeries& s) {
  RationalMatrix c = RationalMatrix::Zero(s.rank(), s.rank());
  for (const auto& [k, v] : s.coefficients())
    if (k.size() == 2) c(k[0] - 1, k[1] - 1) = v;
  return c;
}

Lambda2Vector lambda2_class(const Word& w, int rank) {
  if (abelianize(w, rank) != ExponentVector::Zero(rank))
    throw PreconditionError("lambda2_class: word has nonzero abelianization");
  RationalMatrix c = degree_two_matrix(magnus_expand(w, rank, 2));
  if (c != RationalMatrix(-c.transpose()))
    throw CrossCheckError("lambda2_class: degree-two coefficients are not antisymmetric");
  return c;
}

Lambda2Vector half_wedge_sum(const Word& w, int rank) {
  // Running exponent sums x; each new letter s*e_g contributes x ^ (s e_g).
  // Twice the result is integral, so accumulate in machine integers.
  Eigen::Matrix<long long, Eigen::Dynamic, Eigen::Dynamic> twice =
      Eigen::Matrix<long long, Eigen::Dynamic, Eigen::Dynamic>::Zero(rank, rank);
  std::vector<long long> x(rank, 0);
  for (const Letter& l : w) {
    if (l.generator > rank) throw std::out_of_range("half_wedge_sum: generator index exceeds rank");
    const int g = l.generator - 1;
    for (int i = 0; i < rank; ++i) {
      twice(i, g) += x[i] * l.sign;
      twice(g, i) -= x[i] * l.sign;
    }
    x[g] += l.sign;
  }
  Lambda2Vector a(rank, rank);
  for (int i = 0; i < rank; ++i)
    for (int j = 0; j < rank; ++j) a(i, j) = Rational(twice(i, j), 2);
  return a;
}

}  // namespace chartan
