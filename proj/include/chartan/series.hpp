#pragma once

// Truncated Laurent series over a scalar S (Rational, GaussianRational or
// Complex). A series knows its coefficients below an absolute precision p,
// i.e. it is an element of K modulo t^p; p = kExact marks a polynomial known
// exactly. Arithmetic propagates precision the honest way, so a division by
// a series of positive valuation visibly costs precision.

#include "chartan/errors.hpp"
#include "chartan/scalar.hpp"

#include <Eigen/Core>

#include <algorithm>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace chartan {

template <class S>
class Series {
 public:
  using Scalar = S;
  using Traits = ScalarTraits<S>;
  static constexpr int kExact = std::numeric_limits<int>::max();

  /// The exact zero.
  Series() = default;
  Series(int c) : Series(S(c)) {}  // NOLINT(google-explicit-constructor)
  Series(const S& c) : valuation_(0), coeffs_{c} { normalize(); }  // NOLINT(google-explicit-constructor)

  static Series from_coefficients(std::vector<S> coeffs, int valuation = 0, int precision = kExact) {
    Series s;
    s.valuation_ = valuation;
    s.coeffs_ = std::move(coeffs);
    s.precision_ = precision;
    s.normalize();
    return s;
  }
  static Series monomial(const S& c, int degree) { return from_coefficients({c}, degree); }
  /// The series variable t.
  static Series t() { return monomial(S(1), 1); }
  /// Zero known modulo t^precision.
  static Series zero(int precision) { return from_coefficients({}, precision, precision); }

  int precision() const { return precision_; }
  bool exact() const { return precision_ == kExact; }
  /// Valuation of the lowest known nonzero coefficient; equals the precision
  /// when no known coefficient is nonzero.
  int valuation() const { return coeffs_.empty() ? precision_ : valuation_; }
  bool is_zero() const { return coeffs_.empty(); }
  double tolerance() const { return tol_; }

  /// Coefficient of t^k; throws when k is at or beyond the precision.
  S coefficient(int k) const {
    if (k >= precision_) throw std::out_of_range("series coefficient t^" + std::to_string(k) + " is beyond the precision");
    if (coeffs_.empty() || k < valuation_ || k - valuation_ >= static_cast<int>(coeffs_.size())) return S(0);
    return coeffs_[static_cast<std::size_t>(k - valuation_)];
  }
  S leading() const {
    if (coeffs_.empty()) throw std::domain_error("leading coefficient of a zero series");
    return coeffs_.front();
  }
  /// Highest degree with a stored coefficient (valuation - 1 for zero).
  int last_degree() const { return valuation_ + static_cast<int>(coeffs_.size()) - 1; }

  Series truncated(int precision) const {
    Series s = *this;
    s.precision_ = std::min(precision_, precision);
    s.normalize();
    return s;
  }

  Series& operator+=(const Series& o) { return *this = combine(*this, o, S(1)); }
  Series& operator-=(const Series& o) { return *this = combine(*this, o, S(-1)); }
  Series& operator*=(const Series& o) { return *this = multiply(*this, o); }
  Series& operator/=(const Series& o) { return *this = divide(*this, o); }
  friend Series operator+(const Series& a, const Series& b) { return combine(a, b, S(1)); }
  friend Series operator-(const Series& a, const Series& b) { return combine(a, b, S(-1)); }
  friend Series operator-(const Series& a) { return combine(Series::zero(kExact), a, S(-1)); }
  friend Series operator*(const Series& a, const Series& b) { return multiply(a, b); }
  friend Series operator/(const Series& a, const Series& b) { return divide(a, b); }
  friend Series operator*(const S& c, Series a) {
    for (auto& x : a.coeffs_) x = c * x;
    a.normalize();
    return a;
  }

  /// Multiplicative inverse. Needs finite precision unless the series is a
  /// monomial, since 1/(1+t) has no finite expansion.
  Series inverse() const {
    if (coeffs_.empty()) throw std::domain_error("inverting a series with no nonzero known coefficient");
    if (exact() && coeffs_.size() > 1)
      throw std::domain_error("inverting an exactly known polynomial needs a truncation order");
    const std::size_t n = exact() ? 1 : static_cast<std::size_t>(precision_ - valuation_);
    std::vector<S> out(n);
    const S inv0 = S(1) / coeffs_[0];
    out[0] = inv0;
    for (std::size_t k = 1; k < n; ++k) {
      S acc = S(0);
      for (std::size_t i = 1; i <= k && i < coeffs_.size(); ++i) acc += coeffs_[i] * out[k - i];
      out[k] = -(acc * inv0);
    }
    Series s = from_coefficients(std::move(out), -valuation_, exact() ? kExact : precision_ - 2 * valuation_);
    s.tol_ = tol_;
    return s;
  }

  /// Square root with leading coefficient chosen by ScalarTraits<S>::sqrt.
  /// Odd valuation raises ODD_SQUARE_CLASS (the series lies in the class of
  /// t); a leading coefficient with no square root in S raises
  /// NON_SQUARE_LEADING, which a floating scalar never does.
  Series sqrt() const {
    if (coeffs_.empty()) return zero(exact() ? kExact : (precision_ + 1) / 2);
    if (valuation_ % 2 != 0)
      throw DegeneracyError("ODD_SQUARE_CLASS", "series of odd valuation " + std::to_string(valuation_) +
                                                    " is t times a square, not a square");
    if (exact() && coeffs_.size() > 1)
      throw std::domain_error("square root of an exactly known polynomial needs a truncation order");
    auto root = Traits::sqrt(coeffs_[0]);
    if (!root)
      throw DegeneracyError("NON_SQUARE_LEADING",
                            "leading coefficient has no square root in " + std::string(Traits::mode) +
                                " mode; retry in a wider scalar mode or in floating mode");
    const std::size_t n = exact() ? 1 : static_cast<std::size_t>(precision_ - valuation_);
    std::vector<S> out(n);
    out[0] = *root;
    const S inv2 = S(1) / (S(2) * *root);
    for (std::size_t k = 1; k < n; ++k) {
      S acc = k < coeffs_.size() ? coeffs_[k] : S(0);
      for (std::size_t i = 1; i < k; ++i) acc -= out[i] * out[k - i];
      out[k] = acc * inv2;
    }
    Series s = from_coefficients(std::move(out), valuation_ / 2, exact() ? kExact : precision_ - valuation_ / 2);
    s.tol_ = tol_;
    return s;
  }

  /// Coefficientwise image under a scalar map, e.g. Rational -> Complex.
  template <class T, class F>
  Series<T> map(F f) const {
    std::vector<T> out;
    out.reserve(coeffs_.size());
    for (const auto& c : coeffs_) out.push_back(f(c));
    return Series<T>::from_coefficients(std::move(out), valuation_, precision_);
  }

  /// Coefficients of t^lo .. t^(hi-1), zero-filled.
  std::vector<S> window(int lo, int hi) const {
    std::vector<S> out;
    for (int k = lo; k < hi; ++k) out.push_back(k < precision_ ? coefficient(k) : S(0));
    return out;
  }

  friend bool operator==(const Series& a, const Series& b) {
    return a.precision_ == b.precision_ && a.valuation() == b.valuation() && a.coeffs_ == b.coeffs_;
  }

  /// True when a - b has no nonzero coefficient below `precision`.
  friend bool agree(const Series& a, const Series& b, int precision) {
    return (a - b).truncated(precision).is_zero();
  }

 private:
  int valuation_ = kExact;
  std::vector<S> coeffs_;
  int precision_ = kExact;
  double tol_ = Traits::exact ? 0.0 : default_tolerance();

  static int shifted(int precision, int by) {
    if (precision == kExact || by == kExact) return kExact;
    return precision + by;
  }

  bool negligible(const S& c, double scale) const {
    if constexpr (Traits::exact)
      return Traits::is_zero(c);
    else
      return Traits::is_zero(c, tol_ * scale);
  }

  void normalize() {
    if (coeffs_.empty()) {
      valuation_ = precision_;
      return;
    }
    if (precision_ != kExact) {
      const long keep = static_cast<long>(precision_) - valuation_;
      if (keep <= 0)
        coeffs_.clear();
      else if (static_cast<long>(coeffs_.size()) > keep)
        coeffs_.resize(static_cast<std::size_t>(keep));
    }
    double scale = 1.0;
    if constexpr (!Traits::exact)
      for (const auto& c : coeffs_) scale = std::max(scale, Traits::magnitude(c));
    std::size_t lead = 0;
    while (lead < coeffs_.size() && negligible(coeffs_[lead], scale)) ++lead;
    if (lead == coeffs_.size()) {
      coeffs_.clear();
      valuation_ = precision_;
      return;
    }
    coeffs_.erase(coeffs_.begin(), coeffs_.begin() + static_cast<long>(lead));
    valuation_ += static_cast<int>(lead);
    // Trailing zeros are implicit; the precision records how far they are known.
    while (!coeffs_.empty() && negligible(coeffs_.back(), scale)) coeffs_.pop_back();
  }

  static Series combine(const Series& a, const Series& b, const S& sign) {
    Series out;
    out.tol_ = std::max(a.tol_, b.tol_);
    out.precision_ = std::min(a.precision_, b.precision_);
    if (a.coeffs_.empty() && b.coeffs_.empty()) return zero_like(out);
    int lo = std::min(a.valuation(), b.valuation());
    int hi = std::max(a.coeffs_.empty() ? lo - 1 : a.last_degree(), b.coeffs_.empty() ? lo - 1 : b.last_degree());
    if (out.precision_ != kExact) hi = std::min(hi, out.precision_ - 1);
    if (hi < lo) return zero_like(out);
    out.valuation_ = lo;
    out.coeffs_.assign(static_cast<std::size_t>(hi - lo + 1), S(0));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
      const int k = a.valuation_ + static_cast<int>(i);
      if (k > hi) break;
      out.coeffs_[static_cast<std::size_t>(k - lo)] += a.coeffs_[i];
    }
    for (std::size_t i = 0; i < b.coeffs_.size(); ++i) {
      const int k = b.valuation_ + static_cast<int>(i);
      if (k > hi) break;
      out.coeffs_[static_cast<std::size_t>(k - lo)] += sign * b.coeffs_[i];
    }
    out.normalize();
    return out;
  }

  static Series zero_like(Series s) {
    s.coeffs_.clear();
    s.valuation_ = s.precision_;
    return s;
  }

  static Series multiply(const Series& a, const Series& b) {
    Series out;
    out.tol_ = std::max(a.tol_, b.tol_);
    out.precision_ = std::min(shifted(a.precision_, b.valuation()), shifted(b.precision_, a.valuation()));
    if (a.coeffs_.empty() || b.coeffs_.empty()) return zero_like(out);
    out.valuation_ = a.valuation_ + b.valuation_;
    std::size_t len = a.coeffs_.size() + b.coeffs_.size() - 1;
    if (out.precision_ != kExact)
      len = std::min(len, static_cast<std::size_t>(std::max(0, out.precision_ - out.valuation_)));
    out.coeffs_.assign(len, S(0));
    for (std::size_t i = 0; i < a.coeffs_.size() && i < len; ++i)
      for (std::size_t j = 0; j < b.coeffs_.size() && i + j < len; ++j) out.coeffs_[i + j] += a.coeffs_[i] * b.coeffs_[j];
    out.normalize();
    return out;
  }

  static Series divide(const Series& a, const Series& b) {
    if (b.exact() && b.coeffs_.size() > 1) {
      if (a.exact()) throw std::domain_error("dividing exactly known polynomials needs a truncation order");
      // Relative precision of the quotient is that of a.
      return a * b.truncated(b.valuation() + a.precision_ - a.valuation()).inverse();
    }
    return a * b.inverse();
  }
};

/// Text form such as "2 + t - 1/2 t^2 + O(t^5)".
template <class S>
std::string to_string(const Series<S>& s) {
  std::ostringstream os;
  bool first = true;
  if (!s.is_zero())
    for (int k = s.valuation(); k <= s.last_degree(); ++k) {
      S c = s.coefficient(k);
      bool zero;
      if constexpr (ScalarTraits<S>::exact)
        zero = ScalarTraits<S>::is_zero(c);
      else
        zero = c == S(0);
      if (zero) continue;
      if (!first) os << " + ";
      first = false;
      if constexpr (std::is_same_v<S, Complex>)
        os << "(" << c.real() << (c.imag() < 0 ? "-" : "+") << std::abs(c.imag()) << "i)";
      else
        os << "(" << to_string(c) << ")";
      if (k != 0) os << " t" << (k != 1 ? "^" + std::to_string(k) : "");
    }
  if (first) os << "0";
  if (!s.exact()) os << " + O(t^" << s.precision() << ")";
  return os.str();
}

template <class S>
std::ostream& operator<<(std::ostream& os, const Series<S>& s) {
  return os << to_string(s);
}

}  // namespace chartan

namespace Eigen {

template <class S>
struct NumTraits<chartan::Series<S>> : GenericNumTraits<chartan::Series<S>> {
  using Real = chartan::Series<S>;
  using NonInteger = chartan::Series<S>;
  using Literal = chartan::Series<S>;
  using Nested = chartan::Series<S>;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 8,
    AddCost = 32,
    MulCost = 128
  };
  static Real epsilon() { return Real(0); }
  static Real dummy_precision() { return Real(0); }
  static int digits10() { return 0; }
};

}  // namespace Eigen
