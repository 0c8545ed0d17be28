#include "chartan/pseudochar.hpp"

namespace chartan {

std::vector<long long> signed_cycle_polynomial(int l) {
  if (l < 1 || l > kMaxFrobeniusLetters) throw std::invalid_argument("signed_cycle_polynomial: l must be in 1..8");
  std::vector<long long> coeffs(static_cast<std::size_t>(l) + 1, 0);
  for (const Permutation& sigma : all_permutations(l)) coeffs[sigma.cycles().size()] += sigma.sign();
  return coeffs;
}

std::vector<long long> falling_factorial(int l) {
  std::vector<long long> coeffs{1};
  for (int j = 0; j < l; ++j) {
    // Multiply by (t - j).
    std::vector<long long> next(coeffs.size() + 1, 0);
    for (std::size_t k = 0; k < coeffs.size(); ++k) {
      next[k + 1] += coeffs[k];
      next[k] -= j * coeffs[k];
    }
    coeffs = std::move(next);
  }
  return coeffs;
}

}  // namespace chartan
