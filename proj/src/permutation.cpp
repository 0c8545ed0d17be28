#include "chartan/permutation.hpp"

#include "chartan/errors.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>

namespace chartan {

Permutation::Permutation(std::vector<int> images) : images_(std::move(images)) {
  std::vector<bool> seen(images_.size(), false);
  for (int x : images_) {
    if (x < 0 || x >= degree() || seen[x]) throw std::invalid_argument("Permutation: images are not a bijection");
    seen[x] = true;
  }
}

Permutation Permutation::identity(int degree) {
  std::vector<int> images(degree);
  std::iota(images.begin(), images.end(), 0);
  return Permutation(std::move(images));
}

Permutation Permutation::from_cycles(std::string_view text, int degree) {
  std::vector<int> images(degree);
  std::iota(images.begin(), images.end(), 0);
  std::size_t pos = 0;
  auto skip = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  std::vector<bool> used(degree, false);
  for (skip(); pos < text.size(); skip()) {
    if (text[pos] != '(') throw InputError("cycle notation: expected '('");
    ++pos;
    std::vector<int> cycle;
    for (skip(); pos < text.size() && text[pos] != ')'; skip()) {
      if (!std::isdigit(static_cast<unsigned char>(text[pos]))) throw InputError("cycle notation: expected a point");
      int point = 0;
      while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])))
        point = point * 10 + (text[pos++] - '0');
      if (point < 1 || point > degree) throw InputError("cycle notation: point out of range");
      if (used[point - 1]) throw InputError("cycle notation: cycles are not disjoint");
      used[point - 1] = true;
      cycle.push_back(point - 1);
    }
    if (pos >= text.size()) throw InputError("cycle notation: missing ')'");
    ++pos;
    for (std::size_t k = 0; k < cycle.size(); ++k) images[cycle[k]] = cycle[(k + 1) % cycle.size()];
  }
  return Permutation(std::move(images));
}

Permutation Permutation::inverse() const {
  std::vector<int> inv(images_.size());
  for (int k = 0; k < degree(); ++k) inv[images_[k]] = k;
  return Permutation(std::move(inv));
}

bool Permutation::is_identity() const {
  for (int k = 0; k < degree(); ++k)
    if (images_[k] != k) return false;
  return true;
}

int Permutation::sign() const {
  int s = 1;
  for (const auto& c : cycles())
    if (c.size() % 2 == 0) s = -s;
  return s;
}

std::vector<std::vector<int>> Permutation::cycles() const {
  std::vector<std::vector<int>> out;
  std::vector<bool> seen(images_.size(), false);
  for (int start = 0; start < degree(); ++start) {
    if (seen[start]) continue;
    std::vector<int> cycle;
    for (int x = start; !seen[x]; x = images_[x]) {
      seen[x] = true;
      cycle.push_back(x);
    }
    out.push_back(std::move(cycle));
  }
  return out;
}

std::string Permutation::to_string() const {
  std::string out;
  for (const auto& c : cycles()) {
    if (c.size() < 2) continue;
    out += "(";
    for (std::size_t k = 0; k < c.size(); ++k) out += (k ? " " : "") + std::to_string(c[k] + 1);
    out += ")";
  }
  return out.empty() ? "()" : out;
}

Permutation operator*(const Permutation& p, const Permutation& q) {
  if (p.degree() != q.degree()) throw std::invalid_argument("Permutation product: degree mismatch");
  std::vector<int> images(p.images_.size());
  for (int k = 0; k < p.degree(); ++k) images[k] = q.images_[p.images_[k]];
  return Permutation(std::move(images));
}

std::vector<Permutation> all_permutations(int m) {
  std::vector<int> images(m);
  std::iota(images.begin(), images.end(), 0);
  std::vector<Permutation> out;
  do {
    out.emplace_back(images);
  } while (std::next_permutation(images.begin(), images.end()));
  return out;
}

}  // namespace chartan
