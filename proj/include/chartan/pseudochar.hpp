#pragma once

// GL_n pseudo-characters. A central T with T(1) = n is the trace of an
// n-dimensional representation exactly when the Frobenius sum over the
// symmetric group on n+1 letters vanishes; writing T = n + eps f over dual
// numbers turns that into the tangent condition on f.

#include "chartan/permutation.hpp"
#include "chartan/words.hpp"

#include <functional>
#include <stdexcept>
#include <vector>

namespace chartan {

/// Ring elements value + eps * epsilon with eps^2 = 0.
template <class S>
struct Dual {
  S value{};
  S epsilon{};

  Dual() = default;
  Dual(int c) : value(c) {}  // NOLINT(google-explicit-constructor)
  Dual(S v, S e = S(0)) : value(std::move(v)), epsilon(std::move(e)) {}  // NOLINT(google-explicit-constructor)

  friend Dual operator+(const Dual& a, const Dual& b) { return {a.value + b.value, a.epsilon + b.epsilon}; }
  friend Dual operator-(const Dual& a, const Dual& b) { return {a.value - b.value, a.epsilon - b.epsilon}; }
  friend Dual operator*(const Dual& a, const Dual& b) {
    return {a.value * b.value, a.value * b.epsilon + a.epsilon * b.value};
  }
  Dual& operator+=(const Dual& o) { return *this = *this + o; }
  Dual& operator*=(const Dual& o) { return *this = *this * o; }
  friend bool operator==(const Dual&, const Dual&) = default;
};

/// A central function to a commutative ring R, with its declared dimension.
template <class R>
struct PseudoCharacter {
  int dimension = 0;
  std::function<R(const Word&)> eval;
};

inline constexpr int kMaxFrobeniusLetters = 8;

/// sum over sigma in S_(n+1) of sign(sigma) prod over cycles (i_1 ... i_k)
/// of T(w_(i_1) ... w_(i_k)), fixed points included as 1-cycles.
template <class R>
R frobenius_sum(const PseudoCharacter<R>& t, const std::vector<Word>& words) {
  const int m = static_cast<int>(words.size());
  if (m != t.dimension + 1)
    throw std::invalid_argument("frobenius_sum: need " + std::to_string(t.dimension + 1) + " words, got " +
                                std::to_string(m));
  if (m > kMaxFrobeniusLetters) throw std::invalid_argument("frobenius_sum: at most 8 letters");
  R total = R(0);
  for (const Permutation& sigma : all_permutations(m)) {
    R term = R(sigma.sign());
    for (const auto& cycle : sigma.cycles()) {
      Word product;
      for (int i : cycle) product = word_product(product, words[static_cast<std::size_t>(i)]);
      term = term * t.eval(product);
    }
    total = total + term;
  }
  return total;
}

/// Coefficients (index = power of t) of sum over S_l of sign(sigma) t^c(sigma).
std::vector<long long> signed_cycle_polynomial(int l);

/// Coefficients of the falling factorial t (t-1) ... (t-l+1).
std::vector<long long> falling_factorial(int l);

/// Epsilon coefficient of the Frobenius sum of T = n + eps f on n+1 words.
template <class S, class F>
S linearized_tangent_sum(const F& f, const std::vector<Word>& words, int n) {
  PseudoCharacter<Dual<S>> t{n, [&f, n](const Word& w) { return Dual<S>(S(n), f(w)); }};
  return frobenius_sum(t, words).epsilon;
}

/// Closed form of the same condition: sum over k and over ordered tuples of
/// distinct indices (i_1, ..., i_k) of (-1)^k / k! f(w_(i_1) ... w_(i_k)).
/// It equals linearized_tangent_sum divided by -n!.
template <class S, class F>
S tangent_closed_form(const F& f, const std::vector<Word>& words) {
  const int m = static_cast<int>(words.size());
  if (m > kMaxFrobeniusLetters) throw std::invalid_argument("tangent_closed_form: at most 8 letters");
  S total = S(0);
  std::vector<int> tuple;
  std::vector<bool> used(static_cast<std::size_t>(m), false);
  long long factorial = 1;
  std::vector<S> weight{S(0)};
  for (int k = 1; k <= m; ++k) {
    factorial *= k;
    weight.push_back(S(k % 2 == 0 ? 1 : -1) / S(factorial));
  }
  std::function<void(const Word&)> extend = [&](const Word& prefix) {
    for (int i = 0; i < m; ++i) {
      if (used[static_cast<std::size_t>(i)]) continue;
      used[static_cast<std::size_t>(i)] = true;
      tuple.push_back(i);
      const Word next = word_product(prefix, words[static_cast<std::size_t>(i)]);
      total = total + weight[tuple.size()] * f(next);
      extend(next);
      tuple.pop_back();
      used[static_cast<std::size_t>(i)] = false;
    }
  };
  extend(Word());
  return total;
}

}  // namespace chartan
