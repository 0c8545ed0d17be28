#include "chartan/group_algebra.hpp"

namespace chartan {

void GroupAlgebraElement::add(const Word& w, const Rational& c) {
  if (c == 0) return;
  auto [it, fresh] = terms_.try_emplace(w, c);
  if (!fresh) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

GroupAlgebraElement& GroupAlgebraElement::operator+=(const GroupAlgebraElement& o) {
  for (const auto& [w, c] : o.terms_) add(w, c);
  return *this;
}

GroupAlgebraElement& GroupAlgebraElement::operator-=(const GroupAlgebraElement& o) {
  for (const auto& [w, c] : o.terms_) add(w, -c);
  return *this;
}

GroupAlgebraElement operator*(const GroupAlgebraElement& a, const GroupAlgebraElement& b) {
  GroupAlgebraElement out;
  for (const auto& [u, cu] : a.terms_)
    for (const auto& [v, cv] : b.terms_) out.add(word_product(u, v), cu * cv);
  return out;
}

GroupAlgebraElement operator*(const Rational& c, GroupAlgebraElement a) {
  for (auto& [w, x] : a.terms_) x *= c;
  if (c == 0) a.terms_.clear();
  return a;
}

void GroupAlgebraTensor::add(const Word& x, const Word& y, const Rational& c) {
  if (c == 0) return;
  auto [it, fresh] = terms_.try_emplace({x, y}, c);
  if (!fresh) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

GroupAlgebraTensor& GroupAlgebraTensor::operator+=(const GroupAlgebraTensor& o) {
  for (const auto& [k, c] : o.terms_) add(k.first, k.second, c);
  return *this;
}

GroupAlgebraTensor& GroupAlgebraTensor::operator-=(const GroupAlgebraTensor& o) {
  for (const auto& [k, c] : o.terms_) add(k.first, k.second, -c);
  return *this;
}

GroupAlgebraTensor tensor(const GroupAlgebraElement& x, const GroupAlgebraElement& y) {
  GroupAlgebraTensor t;
  for (const auto& [u, cu] : x.terms())
    for (const auto& [v, cv] : y.terms()) t.add(u, v, cu * cv);
  return t;
}

GroupAlgebraTensor tensor(const GroupAlgebraElement& x, const Word& y) { return tensor(x, GroupAlgebraElement(y)); }

GroupAlgebraElement epsilon(const std::vector<Word>& words) {
  GroupAlgebraElement out = GroupAlgebraElement::one();
  for (const Word& w : words) out = out * (GroupAlgebraElement(w) - GroupAlgebraElement::one());
  return out;
}

GroupAlgebraElement parallelogram_map(const GroupAlgebraTensor& t) {
  GroupAlgebraElement out;
  for (const auto& [k, c] : t.terms()) {
    const auto& [g, h] = k;
    out.add(word_product(g, h), c);
    out.add(word_product(g, word_inverse(h)), c);
    out.add(g, -2 * c);
    out.add(h, -2 * c);
  }
  return out;
}

}  // namespace chartan
