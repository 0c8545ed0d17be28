#pragma once

// Sparse elements of Q[F] and Q[F] (x) Q[F], enough to state identities
// such as f o p(...) = ... literally and evaluate them against any
// function on words.

#include "chartan/scalar.hpp"
#include "chartan/words.hpp"

#include <functional>
#include <map>
#include <utility>

namespace chartan {

class GroupAlgebraElement {
 public:
  GroupAlgebraElement() = default;
  /// The basis element of a single group element.
  explicit GroupAlgebraElement(const Word& w) { add(w, Rational(1)); }
  static GroupAlgebraElement one() { return GroupAlgebraElement(Word()); }

  const std::map<Word, Rational>& terms() const { return terms_; }
  void add(const Word& w, const Rational& c);

  GroupAlgebraElement& operator+=(const GroupAlgebraElement& o);
  GroupAlgebraElement& operator-=(const GroupAlgebraElement& o);
  friend GroupAlgebraElement operator+(GroupAlgebraElement a, const GroupAlgebraElement& b) { return a += b; }
  friend GroupAlgebraElement operator-(GroupAlgebraElement a, const GroupAlgebraElement& b) { return a -= b; }
  friend GroupAlgebraElement operator*(const GroupAlgebraElement& a, const GroupAlgebraElement& b);
  friend GroupAlgebraElement operator*(const Rational& c, GroupAlgebraElement a);
  friend bool operator==(const GroupAlgebraElement&, const GroupAlgebraElement&) = default;

 private:
  std::map<Word, Rational> terms_;
};

class GroupAlgebraTensor {
 public:
  const std::map<std::pair<Word, Word>, Rational>& terms() const { return terms_; }
  void add(const Word& x, const Word& y, const Rational& c);

  GroupAlgebraTensor& operator+=(const GroupAlgebraTensor& o);
  GroupAlgebraTensor& operator-=(const GroupAlgebraTensor& o);
  friend GroupAlgebraTensor operator+(GroupAlgebraTensor a, const GroupAlgebraTensor& b) { return a += b; }
  friend GroupAlgebraTensor operator-(GroupAlgebraTensor a, const GroupAlgebraTensor& b) { return a -= b; }

 private:
  std::map<std::pair<Word, Word>, Rational> terms_;
};

GroupAlgebraTensor tensor(const GroupAlgebraElement& x, const GroupAlgebraElement& y);
GroupAlgebraTensor tensor(const GroupAlgebraElement& x, const Word& y);

/// (g_1 - 1)(g_2 - 1)...(g_n - 1).
GroupAlgebraElement epsilon(const std::vector<Word>& words);

/// The parallelogram map, extended linearly from
/// p(g (x) h) = gh + gh^-1 - 2g - 2h.
GroupAlgebraElement parallelogram_map(const GroupAlgebraTensor& t);

/// Linear extension of f to the group algebra.
template <class F>
auto apply(const F& f, const GroupAlgebraElement& x) -> decltype(f(Word())) {
  using S = decltype(f(Word()));
  S total = S(0);
  for (const auto& [w, c] : x.terms()) total += S(c) * f(w);
  return total;
}

}  // namespace chartan
