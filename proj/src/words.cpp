#include "chartan/words.hpp"

#include "chartan/errors.hpp"

#include <algorithm>
#include <cctype>
#include <climits>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>

namespace chartan {

namespace {

// Appends a letter to a reduced sequence, cancelling against the tail.
void push_reduced(std::vector<Letter>& out, const Letter& x) {
  if (!out.empty() && out.back().generator == x.generator && out.back().sign == -x.sign)
    out.pop_back();
  else
    out.push_back(x);
}

constexpr std::size_t kMaxExpandedLength = std::size_t{1} << 24;

}  // namespace

Word::Word(std::vector<Letter> letters) {
  letters_.reserve(letters.size());
  for (const Letter& x : letters) {
    if (x.generator < 1) throw std::out_of_range("generator indices start at 1");
    if (x.sign != 1 && x.sign != -1) throw std::invalid_argument("letter sign must be +1 or -1");
    push_reduced(letters_, x);
  }
}

int Word::max_generator() const {
  int m = 0;
  for (const Letter& x : letters_) m = std::max(m, x.generator);
  return m;
}

Word word_product(const Word& u, const Word& v) {
  std::vector<Letter> out = u.letters();
  for (const Letter& x : v) push_reduced(out, x);
  return Word(std::move(out));
}

Word operator*(const Word& u, const Word& v) { return word_product(u, v); }

Word word_inverse(const Word& u) {
  std::vector<Letter> out;
  out.reserve(u.size());
  for (auto it = u.letters().rbegin(); it != u.letters().rend(); ++it) out.push_back(it->inverse());
  return Word(std::move(out));
}

Word word_power(const Word& u, long long n) {
  const Word base = n < 0 ? word_inverse(u) : u;
  const unsigned long long count = n < 0 ? 0ULL - static_cast<unsigned long long>(n) : n;
  if (!base.empty() && count > kMaxExpandedLength / base.size())
    throw std::overflow_error("word_power: expanded word too long");
  Word result;
  for (unsigned long long k = 0; k < count; ++k) result = word_product(result, base);
  return result;
}

Word commutator(const Word& u, const Word& v) {
  return word_product(word_product(u, v), word_product(word_inverse(u), word_inverse(v)));
}

ExponentVector abelianize(const Word& u, int n) {
  ExponentVector e = ExponentVector::Zero(n);
  for (const Letter& x : u) {
    if (x.generator > n) throw std::out_of_range("abelianize: generator index exceeds rank");
    e(x.generator - 1) += x.sign;
  }
  return e;
}

Word random_word(int rank, int length, Rng& rng) {
  if (rank < 1 || length < 0) throw PreconditionError("random_word: need rank >= 1 and length >= 0");
  std::vector<Letter> letters;
  letters.reserve(length);
  while (static_cast<int>(letters.size()) < length) {
    const auto draw = static_cast<int>(rng.below(2 * static_cast<std::uint64_t>(rank)));
    Letter x{draw / 2 + 1, draw % 2 == 0 ? 1 : -1};
    if (!letters.empty() && letters.back() == x.inverse()) continue;  // reject cancellation
    letters.push_back(x);
  }
  return Word(std::move(letters));
}

Word random_word(int rank, int length, std::uint64_t seed) {
  Rng rng(seed);
  return random_word(rank, length, rng);
}

std::vector<std::string> default_generator_names(int n) {
  std::vector<std::string> names;
  for (int k = 0; k < n; ++k)
    names.push_back(n <= 26 ? std::string(1, static_cast<char>('a' + k)) : "g" + std::to_string(k + 1));
  return names;
}

Presentation free_presentation(int n) { return {default_generator_names(n), {}}; }

// ---------------------------------------------------------------------------
// Parsing.

namespace {

bool is_identifier_start(char ch) { return std::isalpha(static_cast<unsigned char>(ch)) || ch == '_'; }
bool is_identifier_char(char ch) { return std::isalnum(static_cast<unsigned char>(ch)) || ch == '_'; }

bool is_identifier(const std::string& s) {
  return !s.empty() && is_identifier_start(s.front()) && std::all_of(s.begin(), s.end(), is_identifier_char);
}

// Recursive-descent parser for
//   WORD := TERM+ ; TERM := ATOM ("^" INT)? ;
//   ATOM := NAME | "1" | "(" WORD ")" | "[" WORD "," WORD "]".
// Generator names are matched by longest prefix, so "ab" over {a, b} reads
// as a·b while a generator literally named "ab" would win.
class WordParser {
 public:
  WordParser(std::string_view text, const std::vector<std::string>& names) : text_(text), names_(names) {}

  Word parse() {
    Word w = parse_word();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return w;
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    throw InputError("cannot parse word '" + std::string(text_) + "' at offset " + std::to_string(pos_) +
                     ": " + why);
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool at_atom_start() {
    skip_space();
    if (pos_ >= text_.size()) return false;
    char ch = text_[pos_];
    return ch == '(' || ch == '[' || ch == '1' || is_identifier_start(ch);
  }

  Word parse_word() {
    if (!at_atom_start()) fail("expected a generator, '(' or '['");
    Word w;
    while (at_atom_start()) w = word_product(w, parse_term());
    return w;
  }

  Word parse_term() {
    Word atom = parse_atom();
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == '^') {
      ++pos_;
      long long n = parse_exponent();
      if (!atom.empty() && static_cast<unsigned long long>(n < 0 ? -n : n) > kMaxExpandedLength / atom.size())
        throw std::overflow_error("exponent overflow in '" + std::string(text_) + "'");
      return word_power(atom, n);
    }
    return atom;
  }

  long long parse_exponent() {
    skip_space();
    bool negative = false;
    if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) {
      negative = text_[pos_] == '-';
      ++pos_;
    }
    if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_]))) fail("expected an exponent");
    long long value = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      value = value * 10 + (text_[pos_] - '0');
      if (value > INT32_MAX) throw std::overflow_error("exponent overflow in '" + std::string(text_) + "'");
      ++pos_;
    }
    return negative ? -value : value;
  }

  Word parse_atom() {
    skip_space();
    char ch = text_[pos_];
    if (ch == '(') {
      ++pos_;
      Word inner = parse_word();
      expect(')');
      return inner;
    }
    if (ch == '[') {
      ++pos_;
      Word u = parse_word();
      expect(',');
      Word v = parse_word();
      expect(']');
      return commutator(u, v);
    }
    if (ch == '1' && !matches_name()) {
      ++pos_;
      return {};
    }
    return parse_name();
  }

  bool matches_name() const {
    return std::any_of(names_.begin(), names_.end(),
                       [&](const std::string& n) { return text_.substr(pos_, n.size()) == n; });
  }

  Word parse_name() {
    std::size_t best = 0;
    int index = 0;
    for (std::size_t k = 0; k < names_.size(); ++k) {
      const auto& n = names_[k];
      if (n.size() > best && text_.substr(pos_, n.size()) == n) {
        best = n.size();
        index = static_cast<int>(k) + 1;
      }
    }
    if (index == 0) {
      std::size_t end = pos_;
      while (end < text_.size() && is_identifier_char(text_[end])) ++end;
      fail("unknown generator '" + std::string(text_.substr(pos_, end - pos_)) + "'");
    }
    pos_ += best;
    return Word::generator(index);
  }

  void expect(char ch) {
    skip_space();
    if (pos_ >= text_.size() || text_[pos_] != ch) fail(std::string("expected '") + ch + "'");
    ++pos_;
  }

  std::string_view text_;
  const std::vector<std::string>& names_;
  std::size_t pos_ = 0;
};

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

Word parse_word(std::string_view text, const std::vector<std::string>& names) {
  return WordParser(text, names).parse();
}

std::string print_word(const Word& u, const std::vector<std::string>& names) {
  if (u.empty()) return "1";
  std::string out;
  std::size_t k = 0;
  while (k < u.size()) {
    // Runs of one letter print as a power.
    std::size_t run = 1;
    while (k + run < u.size() && u[k + run] == u[k]) ++run;
    const Letter& x = u[k];
    if (x.generator > static_cast<int>(names.size())) throw std::out_of_range("print_word: no name for generator");
    if (!out.empty()) out += ' ';
    out += names[x.generator - 1];
    long long e = static_cast<long long>(run) * x.sign;
    if (e != 1) out += "^" + std::to_string(e);
    k += run;
  }
  return out;
}

Presentation parse_presentation(std::string_view text) {
  Presentation p;
  bool have_gens = false;
  std::istringstream lines{std::string(text)};
  std::string raw;
  int line_no = 0;
  while (std::getline(lines, raw)) {
    ++line_no;
    std::string_view line = raw;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    auto colon = line.find(':');
    if (colon == std::string_view::npos)
      throw InputError("line " + std::to_string(line_no) + ": expected 'gens:' or 'rel:'");
    auto key = trim(line.substr(0, colon));
    auto body = trim(line.substr(colon + 1));
    if (key == "gens") {
      if (have_gens) throw InputError("line " + std::to_string(line_no) + ": duplicate 'gens:' line");
      std::istringstream names{std::string(body)};
      std::string name;
      while (names >> name) {
        if (!is_identifier(name)) throw InputError("line " + std::to_string(line_no) + ": bad generator name '" + name + "'");
        if (std::find(p.generator_names.begin(), p.generator_names.end(), name) != p.generator_names.end())
          throw InputError("line " + std::to_string(line_no) + ": repeated generator name '" + name + "'");
        p.generator_names.push_back(name);
      }
      have_gens = true;
    } else if (key == "rel") {
      if (!have_gens) throw InputError("line " + std::to_string(line_no) + ": 'rel:' before 'gens:'");
      try {
        p.relators.push_back(parse_word(body, p.generator_names));
      } catch (const InputError& e) {
        throw InputError("line " + std::to_string(line_no) + ": " + e.what());
      }
    } else {
      throw InputError("line " + std::to_string(line_no) + ": unknown key '" + std::string(key) + "'");
    }
  }
  if (!have_gens) throw InputError("presentation has no 'gens:' line");
  return p;
}

Presentation load_presentation(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open presentation file '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_presentation(buffer.str());
}

std::string print_presentation(const Presentation& p) {
  std::string out = "gens:";
  for (const auto& n : p.generator_names) out += " " + n;
  out += "\n";
  for (const auto& r : p.relators) out += "rel: " + print_word(r, p.generator_names) + "\n";
  return out;
}

// ---------------------------------------------------------------------------
// Stallings folding.

namespace {

struct UnionFind {
  std::vector<int> parent;
  int add() {
    parent.push_back(static_cast<int>(parent.size()));
    return parent.back();
  }
  int find(int v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);  // keep the basepoint 0 as root
  }
};

struct Edge {
  int from, label, to;  // label is a positive generator index
};

}  // namespace

bool is_surjective_to_f2(const std::vector<Word>& images) {
  UnionFind uf;
  const int base = uf.add();
  std::vector<Edge> edges;
  for (const Word& w : images) {
    if (w.max_generator() > 2) throw std::out_of_range("is_surjective_to_f2: image outside F_2");
    int at = base;
    for (std::size_t k = 0; k < w.size(); ++k) {
      int next = k + 1 == w.size() ? base : uf.add();
      if (w[k].sign > 0)
        edges.push_back({at, w[k].generator, next});
      else
        edges.push_back({next, w[k].generator, at});
      at = next;
    }
  }

  // Fold: whenever two edges leave a vertex with the same signed label, their
  // far ends are identified. Repeat until the labelling is an immersion.
  for (bool changed = true; changed;) {
    changed = false;
    std::map<std::pair<int, int>, int> leaving;
    for (const Edge& e : edges) {
      const int u = uf.find(e.from), v = uf.find(e.to);
      for (auto [at, signed_label, far] : {std::tuple{u, e.label, v}, std::tuple{v, -e.label, u}}) {
        auto [it, fresh] = leaving.try_emplace({at, signed_label}, far);
        if (!fresh && uf.find(it->second) != uf.find(far)) {
          uf.unite(it->second, far);
          changed = true;
        }
      }
    }
  }

  std::vector<Edge> folded;
  for (const Edge& e : edges) {
    Edge f{uf.find(e.from), e.label, uf.find(e.to)};
    bool dup = std::any_of(folded.begin(), folded.end(),
                           [&](const Edge& g) { return g.from == f.from && g.label == f.label && g.to == f.to; });
    if (!dup) folded.push_back(f);
  }

  // Trim hanging trees that do not contain the basepoint.
  for (bool trimmed = true; trimmed;) {
    trimmed = false;
    std::map<int, int> degree;
    for (const Edge& e : folded) {
      ++degree[e.from];
      ++degree[e.to];
    }
    for (auto it = folded.begin(); it != folded.end(); ++it) {
      int leaf = -1;
      if (it->from != base && degree[it->from] == 1) leaf = it->from;
      if (it->to != base && degree[it->to] == 1) leaf = it->to;
      if (leaf >= 0) {
        folded.erase(it);
        trimmed = true;
        break;
      }
    }
  }

  // The core is the two-petal rose iff only the basepoint remains with one
  // loop per generator.
  if (folded.size() != 2) return false;
  bool loop1 = false, loop2 = false;
  for (const Edge& e : folded) {
    if (e.from != base || e.to != base) return false;
    (e.label == 1 ? loop1 : loop2) = true;
  }
  return loop1 && loop2;
}

}  // namespace chartan
