#pragma once

// Words in a free group on generators a_1, ..., a_n, finite presentations,
// and homomorphic evaluation into any group that supplies identity, product
// and inverse.

#include "chartan/random.hpp"

#include <Eigen/Core>

#include <compare>
#include <concepts>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace chartan {

/// One signed letter a_g^{sign}; generators are numbered from 1.
struct Letter {
  int generator = 1;
  int sign = 1;

  Letter inverse() const { return {generator, -sign}; }
  friend auto operator<=>(const Letter&, const Letter&) = default;
};

/// A freely reduced word. Every constructor reduces, so no value of this
/// type ever contains an adjacent cancelling pair.
class Word {
 public:
  Word() = default;
  explicit Word(std::vector<Letter> letters);
  static Word generator(int index, int sign = 1) { return Word({Letter{index, sign}}); }

  const std::vector<Letter>& letters() const { return letters_; }
  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  const Letter& operator[](std::size_t k) const { return letters_[k]; }
  auto begin() const { return letters_.begin(); }
  auto end() const { return letters_.end(); }

  /// Largest generator index used (0 for the identity).
  int max_generator() const;

  friend auto operator<=>(const Word&, const Word&) = default;
  friend bool operator==(const Word&, const Word&) = default;

 private:
  std::vector<Letter> letters_;
};

using ExponentVector = Eigen::Matrix<std::int64_t, Eigen::Dynamic, 1>;

Word word_product(const Word& u, const Word& v);
Word word_inverse(const Word& u);
Word word_power(const Word& u, long long n);
Word commutator(const Word& u, const Word& v);
Word operator*(const Word& u, const Word& v);

/// Exponent-sum vector of length n.
ExponentVector abelianize(const Word& u, int n);

/// Uniform random reduced word of exactly `length` letters.
Word random_word(int rank, int length, std::uint64_t seed);
Word random_word(int rank, int length, Rng& rng);

/// A finite presentation <names | relators>.
struct Presentation {
  std::vector<std::string> generator_names;
  std::vector<Word> relators;

  int rank() const { return static_cast<int>(generator_names.size()); }
  int deficiency() const { return rank() - static_cast<int>(relators.size()); }
};

/// The free group on n generators named a, b, c, ... (then g1, g2, ... past 26).
Presentation free_presentation(int n);
std::vector<std::string> default_generator_names(int n);

Word parse_word(std::string_view text, const std::vector<std::string>& names);
std::string print_word(const Word& u, const std::vector<std::string>& names);
/// Reads the line-oriented "gens:" / "rel:" format.
Presentation parse_presentation(std::string_view text);
Presentation load_presentation(const std::string& path);
std::string print_presentation(const Presentation& p);

// ---------------------------------------------------------------------------
// Homomorphisms out of a free group.

template <class Ops>
concept GroupOps = requires(const Ops& ops, const typename Ops::value_type& x) {
  { ops.identity() } -> std::convertible_to<typename Ops::value_type>;
  { ops.product(x, x) } -> std::convertible_to<typename Ops::value_type>;
  { ops.inverse(x) } -> std::convertible_to<typename Ops::value_type>;
};

/// Images of the source generators, in generator order.
template <class Target>
struct GroupHom {
  std::vector<Target> images;
};

template <GroupOps Ops>
typename Ops::value_type evaluate_hom(const Word& u, const GroupHom<typename Ops::value_type>& h,
                                      const Ops& ops) {
  using T = typename Ops::value_type;
  std::vector<T> inverses;
  inverses.reserve(h.images.size());
  for (const auto& g : h.images) inverses.push_back(ops.inverse(g));
  T result = ops.identity();
  for (const Letter& x : u) {
    if (x.generator < 1 || x.generator > static_cast<int>(h.images.size()))
      throw std::out_of_range("evaluate_hom: generator index " + std::to_string(x.generator) +
                              " outside 1.." + std::to_string(h.images.size()));
    const auto k = static_cast<std::size_t>(x.generator - 1);
    result = ops.product(result, x.sign > 0 ? h.images[k] : inverses[k]);
  }
  return result;
}

/// Free groups as a homomorphism target.
struct FreeGroupOps {
  using value_type = Word;
  Word identity() const { return {}; }
  Word product(const Word& x, const Word& y) const { return word_product(x, y); }
  Word inverse(const Word& x) const { return word_inverse(x); }
};

/// True iff the subgroup of F_2 = <a_1, a_2> generated by `images` is all of
/// F_2, decided by Stallings folding.
bool is_surjective_to_f2(const std::vector<Word>& images);

}  // namespace chartan
