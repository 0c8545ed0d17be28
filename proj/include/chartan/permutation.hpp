#pragma once

// Permutations of {0, ..., m-1}. Products compose left to right: (p * q)
// applies p first, then q, so words evaluate in reading order.

#include <compare>
#include <string>
#include <string_view>
#include <vector>

namespace chartan {

class Permutation {
 public:
  Permutation() = default;
  explicit Permutation(std::vector<int> images);
  static Permutation identity(int degree);
  /// Parses cycle notation with 1-based points, e.g. "(1 2 3)(4 5)"; "()"
  /// is the identity.
  static Permutation from_cycles(std::string_view text, int degree);

  int degree() const { return static_cast<int>(images_.size()); }
  int operator()(int point) const { return images_[point]; }
  const std::vector<int>& images() const { return images_; }

  Permutation inverse() const;
  bool is_identity() const;
  int sign() const;
  /// Disjoint cycles including fixed points; each cycle starts at its
  /// smallest point and follows the permutation.
  std::vector<std::vector<int>> cycles() const;
  /// 1-based cycle notation without fixed points, "()" for the identity.
  std::string to_string() const;

  friend Permutation operator*(const Permutation& p, const Permutation& q);
  friend auto operator<=>(const Permutation&, const Permutation&) = default;

 private:
  std::vector<int> images_;
};

/// Group operations on a fixed symmetric group, for evaluate_hom.
struct PermutationOps {
  using value_type = Permutation;
  int degree;
  Permutation identity() const { return Permutation::identity(degree); }
  Permutation product(const Permutation& x, const Permutation& y) const { return x * y; }
  Permutation inverse(const Permutation& x) const { return x.inverse(); }
};

/// All permutations of {0..m-1} in lexicographic order of image lists.
std::vector<Permutation> all_permutations(int m);

}  // namespace chartan
