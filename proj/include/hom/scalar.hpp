#pragma once

// Scalar backends: exact rationals, exact Gaussian rationals and
// double-precision complex numbers, unified behind scalar_traits.

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <concepts>
#include <optional>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace hom {

using Rational = boost::multiprecision::number<boost::multiprecision::cpp_rational_backend,
                                               boost::multiprecision::et_off>;
using BigInt = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>,
                                             boost::multiprecision::et_off>;

using Complex = std::complex<double>;

/// Absolute tolerance used by the approximate backend. Exact backends ignore it.
struct Tolerance {
  double abs = 1e-9;
};

/// Exact complex number with rational real and imaginary parts.
struct GaussianRational {
  Rational re{0};
  Rational im{0};

  GaussianRational() = default;
  GaussianRational(int v) : re(v) {}  // NOLINT(google-explicit-constructor)
  GaussianRational(Rational r) : re(std::move(r)) {}  // NOLINT(google-explicit-constructor)
  GaussianRational(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

  GaussianRational& operator+=(const GaussianRational& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  GaussianRational& operator-=(const GaussianRational& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  GaussianRational& operator*=(const GaussianRational& o) {
    Rational r = re * o.re - im * o.im;
    Rational i = re * o.im + im * o.re;
    re = std::move(r);
    im = std::move(i);
    return *this;
  }
  GaussianRational& operator/=(const GaussianRational& o) {
    const Rational den = o.re * o.re + o.im * o.im;
    if (den == 0) throw std::domain_error("division by zero Gaussian rational");
    Rational r = (re * o.re + im * o.im) / den;
    Rational i = (im * o.re - re * o.im) / den;
    re = std::move(r);
    im = std::move(i);
    return *this;
  }

  friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
  friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
  friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
  friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }
  friend GaussianRational operator-(const GaussianRational& a) { return {-a.re, -a.im}; }
  friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
    return a.re == b.re && a.im == b.im;
  }
};

namespace detail {

// Strict decimal integer. Boost's string constructor would read a leading
// 0 as octal and accept hex, so digits are checked and zeros stripped here.
inline std::optional<BigInt> parse_decimal_integer(std::string_view s) {
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  if (s.empty() || !std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; }))
    return std::nullopt;
  while (s.size() > 1 && s.front() == '0') s.remove_prefix(1);
  BigInt v(std::string{s});
  return negative ? BigInt(-v) : v;
}

}  // namespace detail

/// Parses "p/q", an integer, or a plain decimal ("0.25", "-1.5e-3") into an exact rational.
inline Rational parse_rational(std::string_view text) {
  auto fail = [&]() -> Rational {
    throw std::invalid_argument("not a rational number: '" + std::string(text) + "'");
  };
  if (text.empty()) return fail();
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    const auto num = detail::parse_decimal_integer(text.substr(0, slash));
    const auto den = detail::parse_decimal_integer(text.substr(slash + 1));
    if (!num || !den || *den == 0) return fail();
    return Rational(*num, *den);
  }
  std::string_view mantissa = text;
  long exponent = 0;
  if (auto e = text.find_first_of("eE"); e != std::string_view::npos) {
    mantissa = text.substr(0, e);
    try {
      exponent = std::stol(std::string(text.substr(e + 1)));
    } catch (const std::exception&) {
      return fail();
    }
  }
  std::string digits;
  bool negative = false;
  std::size_t pos = 0;
  if (pos < mantissa.size() && (mantissa[pos] == '-' || mantissa[pos] == '+')) {
    negative = mantissa[pos] == '-';
    ++pos;
  }
  bool seen_point = false;
  bool seen_digit = false;
  for (; pos < mantissa.size(); ++pos) {
    const char c = mantissa[pos];
    if (c == '.' && !seen_point) {
      seen_point = true;
    } else if (c >= '0' && c <= '9') {
      digits.push_back(c);
      seen_digit = true;
      if (seen_point) --exponent;
    } else {
      return fail();
    }
  }
  if (!seen_digit) return fail();
  if (exponent > 4000 || exponent < -4000) return fail();
  BigInt num = *detail::parse_decimal_integer(digits);
  if (negative) num = -num;
  BigInt scale = boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(std::labs(exponent)));
  return exponent >= 0 ? Rational(num * scale) : Rational(num, scale);
}

inline std::string to_string(const Rational& r) {
  if (denominator(r) == 1) return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

template <class S>
struct scalar_traits;

template <>
struct scalar_traits<Rational> {
  static constexpr bool exact = true;
  static constexpr bool real_field = true;
  static constexpr const char* name = "exact";
  static Rational from_int(long long v) { return Rational(v); }
  static Rational from_rational(const Rational& r) { return r; }
  static Rational from_parts(const Rational& re, const Rational& im) {
    if (im != 0) throw std::invalid_argument("complex value given to the real exact backend");
    return re;
  }
  static Rational conj(const Rational& v) { return v; }
  static Rational norm(const Rational& v) { return v * v; }
  static double magnitude(const Rational& v) { return std::fabs(static_cast<double>(v)); }
  static bool near(const Rational& a, const Rational& b, Tolerance) { return a == b; }
  static bool is_zero(const Rational& a, Tolerance) { return a == 0; }
};

template <>
struct scalar_traits<GaussianRational> {
  static constexpr bool exact = true;
  static constexpr bool real_field = false;
  static constexpr const char* name = "gaussian";
  static GaussianRational from_int(long long v) { return GaussianRational(Rational(v)); }
  static GaussianRational from_rational(const Rational& r) { return GaussianRational(r); }
  static GaussianRational from_parts(const Rational& re, const Rational& im) { return {re, im}; }
  static GaussianRational conj(const GaussianRational& v) { return {v.re, -v.im}; }
  static GaussianRational norm(const GaussianRational& v) {
    return GaussianRational(v.re * v.re + v.im * v.im);
  }
  static double magnitude(const GaussianRational& v) {
    return std::hypot(static_cast<double>(v.re), static_cast<double>(v.im));
  }
  static bool near(const GaussianRational& a, const GaussianRational& b, Tolerance) { return a == b; }
  static bool is_zero(const GaussianRational& a, Tolerance) { return a.re == 0 && a.im == 0; }
};

template <>
struct scalar_traits<Complex> {
  static constexpr bool exact = false;
  static constexpr bool real_field = false;
  static constexpr const char* name = "approx";
  static Complex from_int(long long v) { return {static_cast<double>(v), 0.0}; }
  static Complex from_rational(const Rational& r) { return {static_cast<double>(r), 0.0}; }
  static Complex from_parts(const Rational& re, const Rational& im) {
    return {static_cast<double>(re), static_cast<double>(im)};
  }
  static Complex conj(const Complex& v) { return std::conj(v); }
  static Complex norm(const Complex& v) { return {std::norm(v), 0.0}; }
  static double magnitude(const Complex& v) { return std::abs(v); }
  static bool near(const Complex& a, const Complex& b, Tolerance tol) { return std::abs(a - b) <= tol.abs; }
  static bool is_zero(const Complex& a, Tolerance tol) { return std::abs(a) <= tol.abs; }
};

template <class S>
concept Scalar = requires(S a, S b) {
  { a + b } -> std::convertible_to<S>;
  { a - b } -> std::convertible_to<S>;
  { a * b } -> std::convertible_to<S>;
  { a / b } -> std::convertible_to<S>;
  { -a } -> std::convertible_to<S>;
  { scalar_traits<S>::exact } -> std::convertible_to<bool>;
  { scalar_traits<S>::from_int(1) } -> std::same_as<S>;
};

template <Scalar S>
S from_int(long long v) {
  return scalar_traits<S>::from_int(v);
}

template <Scalar S>
bool near(const S& a, const S& b, Tolerance tol = {}) {
  return scalar_traits<S>::near(a, b, tol);
}

template <Scalar S>
bool is_zero(const S& a, Tolerance tol = {}) {
  return scalar_traits<S>::is_zero(a, tol);
}

template <Scalar S>
double magnitude(const S& a) {
  return scalar_traits<S>::magnitude(a);
}

/// Order-fixed accumulator. Exact backends add directly; the approximate
/// backend uses Neumaier compensation on each component.
template <Scalar S>
class Summation {
 public:
  void add(const S& v) { total_ += v; }
  S value() const { return total_; }

 private:
  S total_ = from_int<S>(0);
};

template <>
class Summation<Complex> {
 public:
  void add(const Complex& v) {
    add_component(re_, re_c_, v.real());
    add_component(im_, im_c_, v.imag());
  }
  Complex value() const { return {re_ + re_c_, im_ + im_c_}; }

 private:
  static void add_component(double& sum, double& comp, double x) {
    const double t = sum + x;
    if (std::fabs(sum) >= std::fabs(x))
      comp += (sum - t) + x;
    else
      comp += (x - t) + sum;
    sum = t;
  }
  double re_ = 0, re_c_ = 0, im_ = 0, im_c_ = 0;
};

inline std::uint64_t factorial(unsigned n) {
  std::uint64_t r = 1;
  for (unsigned i = 2; i <= n; ++i) r *= i;
  return r;
}

inline std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace hom
