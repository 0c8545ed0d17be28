#pragma once

// Scalar types shared by every module: arbitrary-precision integers and
// rationals (GMP through Boost.Multiprecision, expression templates off so
// they behave as plain values inside Eigen), Gaussian rationals, and the
// floating complex fallback.

#include <boost/multiprecision/eigen.hpp>
#include <boost/multiprecision/gmp.hpp>

#include <Eigen/Core>

#include <cmath>
#include <complex>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>

namespace chartan {

namespace mp = boost::multiprecision;

using Integer = mp::number<mp::gmp_int, mp::et_off>;
using Rational = mp::number<mp::gmp_rational, mp::et_off>;
using Complex = std::complex<double>;

/// Element re + i·im of the ring T[i].
template <class T>
struct Gaussian {
  T re{};
  T im{};

  Gaussian() = default;
  Gaussian(int r) : re(r) {}  // NOLINT(google-explicit-constructor)
  Gaussian(T r) : re(std::move(r)) {}  // NOLINT(google-explicit-constructor)
  Gaussian(T r, T i) : re(std::move(r)), im(std::move(i)) {}

  static Gaussian i() { return {T(0), T(1)}; }

  Gaussian conj() const { return {re, -im}; }
  T norm() const { return re * re + im * im; }

  Gaussian& operator+=(const Gaussian& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  Gaussian& operator-=(const Gaussian& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  Gaussian& operator*=(const Gaussian& o) { return *this = *this * o; }
  Gaussian& operator/=(const Gaussian& o) { return *this = *this / o; }

  friend Gaussian operator+(Gaussian a, const Gaussian& b) { return a += b; }
  friend Gaussian operator-(Gaussian a, const Gaussian& b) { return a -= b; }
  friend Gaussian operator-(const Gaussian& a) { return {-a.re, -a.im}; }
  friend Gaussian operator*(const Gaussian& a, const Gaussian& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend Gaussian operator/(const Gaussian& a, const Gaussian& b) {
    T n = b.norm();
    Gaussian p = a * b.conj();
    return {p.re / n, p.im / n};
  }
  friend bool operator==(const Gaussian& a, const Gaussian& b) {
    return a.re == b.re && a.im == b.im;
  }
  friend bool operator!=(const Gaussian& a, const Gaussian& b) {
    return !(a == b);
  }
};

using GaussianRational = Gaussian<Rational>;

// ---------------------------------------------------------------------------
// Text forms. Rationals print as "p" or "p/q"; Gaussian rationals as "a",
// "bi", "a+bi" or "a-bi" with rational a, b.

Rational parse_rational(std::string_view text);
std::string to_string(const Rational& value);
GaussianRational parse_gaussian(std::string_view text);
std::string to_string(const GaussianRational& value);

std::ostream& operator<<(std::ostream& os, const GaussianRational& value);

/// Exact square root of a rational, when it is a rational square.
std::optional<Rational> rational_sqrt(const Rational& value);
/// Exact square root in Q(i), when one exists. Picks the root with positive
/// real part (or positive imaginary part when the real part vanishes).
std::optional<GaussianRational> gaussian_sqrt(const GaussianRational& value);

double to_double(const Rational& value);
Complex to_complex(const GaussianRational& value);

/// Default relative tolerance for floating-mode comparisons; the CHARTAN_TOL
/// environment variable overrides it.
double default_tolerance();

// ---------------------------------------------------------------------------
// Per-scalar behaviour used by the generic series and linear-algebra code.

template <class S>
struct ScalarTraits;

template <>
struct ScalarTraits<Rational> {
  static constexpr bool exact = true;
  static constexpr const char* mode = "exact-rational";
  static bool is_zero(const Rational& x, double /*tol*/ = 0) { return x == 0; }
  static double magnitude(const Rational& x) { return std::abs(to_double(x)); }
  static std::optional<Rational> sqrt(const Rational& x) {
    return rational_sqrt(x);
  }
  static Rational from_rational(const Rational& x) { return x; }
};

template <>
struct ScalarTraits<GaussianRational> {
  static constexpr bool exact = true;
  static constexpr const char* mode = "gaussian-rational";
  static bool is_zero(const GaussianRational& x, double /*tol*/ = 0) {
    return x.re == 0 && x.im == 0;
  }
  static double magnitude(const GaussianRational& x) {
    return std::abs(to_complex(x));
  }
  static std::optional<GaussianRational> sqrt(const GaussianRational& x) {
    return gaussian_sqrt(x);
  }
  static GaussianRational from_rational(const Rational& x) { return {x}; }
};

template <>
struct ScalarTraits<Complex> {
  static constexpr bool exact = false;
  static constexpr const char* mode = "complex-floating";
  static bool is_zero(const Complex& x, double tol) { return std::abs(x) <= tol; }
  static double magnitude(const Complex& x) { return std::abs(x); }
  static std::optional<Complex> sqrt(const Complex& x) { return std::sqrt(x); }
  static Complex from_rational(const Rational& x) { return {to_double(x), 0.0}; }
};

inline Complex from_gaussian(const GaussianRational& x) { return to_complex(x); }

}  // namespace chartan

namespace Eigen {

template <>
struct NumTraits<chartan::GaussianRational>
    : GenericNumTraits<chartan::GaussianRational> {
  using Real = chartan::Rational;
  using NonInteger = chartan::GaussianRational;
  using Literal = chartan::GaussianRational;
  using Nested = chartan::GaussianRational;
  enum {
    IsComplex = 0,  // no implicit conjugation inside Eigen kernels
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 4,
    AddCost = 8,
    MulCost = 32
  };
  static Real epsilon() { return Real(0); }
  static Real dummy_precision() { return Real(0); }
  static int digits10() { return 0; }
};

}  // namespace Eigen
