#include "chartan/scalar.hpp"

#include <cstdlib>
#include <sstream>
#include <stdexcept>

namespace chartan {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool valid_integer_text(std::string_view s) {
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
  if (s.empty()) return false;
  for (char ch : s)
    if (ch < '0' || ch > '9') return false;
  return true;
}

Integer parse_integer(std::string_view s) {
  if (!valid_integer_text(s)) throw std::invalid_argument("not an integer: '" + std::string(s) + "'");
  if (s.front() == '+') s.remove_prefix(1);
  return Integer(std::string(s));
}

std::optional<Integer> integer_sqrt(const Integer& n) {
  if (n < 0) return std::nullopt;
  Integer r = mp::sqrt(n);
  if (r * r != n) return std::nullopt;
  return r;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view s = trim(text);
  auto slash = s.find('/');
  if (slash == std::string_view::npos) {
    if (auto dot = s.find('.'); dot != std::string_view::npos) {
      // Decimal notation is accepted and converted exactly.
      std::string digits(s.substr(0, dot));
      std::string frac(s.substr(dot + 1));
      if (frac.empty() || !valid_integer_text(frac) || frac.front() == '-' || frac.front() == '+')
        throw std::invalid_argument("not a rational: '" + std::string(s) + "'");
      bool negative = !digits.empty() && digits.front() == '-';
      if (digits.empty() || digits == "-" || digits == "+") digits += "0";
      Integer whole = parse_integer(digits);
      Integer scale = mp::pow(Integer(10), static_cast<unsigned>(frac.size()));
      Rational magnitude = Rational(mp::abs(whole)) + Rational(Integer(frac), scale);
      return negative ? Rational(-magnitude) : magnitude;
    }
    return Rational(parse_integer(s));
  }
  Integer num = parse_integer(trim(s.substr(0, slash)));
  Integer den = parse_integer(trim(s.substr(slash + 1)));
  if (den == 0) throw std::invalid_argument("zero denominator in '" + std::string(s) + "'");
  return Rational(num, den);
}

std::string to_string(const Rational& value) { return value.str(); }

GaussianRational parse_gaussian(std::string_view text) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
  if (s.empty()) throw std::invalid_argument("empty Gaussian rational");
  if (s.back() != 'i') return {parse_rational(s)};
  s.pop_back();
  // Split at the last sign that is not the leading one and not part of an
  // exponent; rationals have no exponents, so any interior sign separates.
  std::size_t split = std::string::npos;
  for (std::size_t k = s.size(); k-- > 1;) {
    if (s[k] == '+' || s[k] == '-') {
      split = k;
      break;
    }
  }
  auto imag_of = [](std::string part) {
    if (part.empty() || part == "+") return Rational(1);
    if (part == "-") return Rational(-1);
    return parse_rational(part);
  };
  if (split == std::string::npos) return {Rational(0), imag_of(s)};
  return {parse_rational(s.substr(0, split)), imag_of(s.substr(split))};
}

std::string to_string(const GaussianRational& value) {
  if (value.im == 0) return to_string(value.re);
  std::string imag;
  if (value.im == 1)
    imag = "i";
  else if (value.im == -1)
    imag = "-i";
  else
    imag = to_string(value.im) + "i";
  if (value.re == 0) return imag;
  if (imag.front() != '-') imag = "+" + imag;
  return to_string(value.re) + imag;
}

std::ostream& operator<<(std::ostream& os, const GaussianRational& value) {
  return os << to_string(value);
}

std::optional<Rational> rational_sqrt(const Rational& value) {
  if (value < 0) return std::nullopt;
  auto num = integer_sqrt(mp::numerator(value));
  auto den = integer_sqrt(mp::denominator(value));
  if (!num || !den) return std::nullopt;
  return Rational(*num, *den);
}

std::optional<GaussianRational> gaussian_sqrt(const GaussianRational& value) {
  if (value.im == 0) {
    if (auto r = rational_sqrt(value.re)) return GaussianRational(*r);
    if (auto r = rational_sqrt(-value.re)) return GaussianRational(Rational(0), *r);
    return std::nullopt;
  }
  // (u+iv)^2 = a+ib  =>  u^2 = (a+|z|)/2, v = b/(2u); |z| must be rational.
  auto modulus = rational_sqrt(value.norm());
  if (!modulus) return std::nullopt;
  auto u = rational_sqrt((value.re + *modulus) / 2);
  if (!u || *u == 0) return std::nullopt;
  return GaussianRational(*u, value.im / (2 * *u));
}

double to_double(const Rational& value) { return value.convert_to<double>(); }

Complex to_complex(const GaussianRational& value) {
  return {to_double(value.re), to_double(value.im)};
}

double default_tolerance() {
  if (const char* env = std::getenv("CHARTAN_TOL")) {
    char* end = nullptr;
    double tol = std::strtod(env, &end);
    if (end != env && tol > 0) return tol;
  }
  return 1e-9;
}

}  // namespace chartan
