#pragma once

// Truncated Magnus expansion: F_n embeds in the units of the free associative
// algebra Q<<X_1..X_n>> via a_i -> 1 + X_i. Series are cut off above a
// degree cap and stored sparsely by index word.

#include "chartan/exterior.hpp"
#include "chartan/words.hpp"

#include <map>
#include <vector>

namespace chartan {

using IndexWord = std::vector<int>;  // 1-based variable indices, X_{i1} X_{i2} ...

class TruncatedTensorSeries {
 public:
  TruncatedTensorSeries(int rank, int degree_cap);
  static TruncatedTensorSeries one(int rank, int degree_cap);

  int rank() const { return rank_; }
  int degree_cap() const { return degree_cap_; }
  const std::map<IndexWord, Rational>& coefficients() const { return coefficients_; }

  Rational coefficient(const IndexWord& key) const;
  /// Adds to a coefficient, dropping it when it becomes zero and ignoring
  /// terms above the cap.
  void add(const IndexWord& key, const Rational& value);

  friend bool operator==(const TruncatedTensorSeries& s, const TruncatedTensorSeries& t) {
    return s.rank_ == t.rank_ && s.degree_cap_ == t.degree_cap_ && s.coefficients_ == t.coefficients_;
  }

 private:
  int rank_;
  int degree_cap_;
  std::map<IndexWord, Rational> coefficients_;
};

TruncatedTensorSeries magnus_expand(const Word& w, int rank, int degree_cap);
TruncatedTensorSeries series_product(const TruncatedTensorSeries& s, const TruncatedTensorSeries& t);
TruncatedTensorSeries series_inverse(const TruncatedTensorSeries& s);

/// Degree-two coefficient matrix c(i,j) of X_i X_j.
RationalMatrix degree_two_matrix(const TruncatedTensorSeries& s);

/// Class of w in Lambda^2 Q^rank, read from the degree-two Magnus
/// coefficients. Requires w to have zero abelianization.
Lambda2Vector lambda2_class(const Word& w, int rank);

/// Antisymmetric part of the degree-two Magnus coefficients, defined for
/// every word and computed in one pass:
///   half_wedge_sum(w) = 1/2 sum_{p<q} s_p s_q e_{g_p} ^ e_{g_q}.
/// It agrees with lambda2_class on [F,F] and satisfies
///   half_wedge_sum(uv) = half_wedge_sum(u) + half_wedge_sum(v) + 1/2 u_ab ^ v_ab.
Lambda2Vector half_wedge_sum(const Word& w, int rank);

}  // namespace chartan
