#pragma once

#include <complex>
#include <numbers>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace sigcount {

using cplx = std::complex<double>;
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline constexpr double kPi = std::numbers::pi;

// Exact a + b i with rational parts.
struct GaussianRational {
  Rational re{0};
  Rational im{0};

  GaussianRational() = default;
  GaussianRational(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

  bool is_zero() const { return re == 0 && im == 0; }
  Rational norm() const { return re * re + im * im; }
  GaussianRational conj() const { return {re, -im}; }
  cplx to_complex() const;
  std::string to_string() const;

  friend GaussianRational operator+(const GaussianRational& a, const GaussianRational& b) {
    return {a.re + b.re, a.im + b.im};
  }
  friend GaussianRational operator-(const GaussianRational& a, const GaussianRational& b) {
    return {a.re - b.re, a.im - b.im};
  }
  friend GaussianRational operator*(const GaussianRational& a, const GaussianRational& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend GaussianRational operator*(const Rational& k, const GaussianRational& a) {
    return {k * a.re, k * a.im};
  }
  friend GaussianRational operator/(const GaussianRational& a, const GaussianRational& b);
  friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
    return a.re == b.re && a.im == b.im;
  }
};

double to_double(const Rational& q);

// Parses "3/4", "-0.25", "12" exactly.
Rational parse_rational(std::string_view text);

// Parses complex literals "a+bi" whose parts are decimal or rational:
// "1", "i", "-2i", "0.3+1.2i", "1/2-3/4i".
GaussianRational parse_gaussian(std::string_view text);

// Floor of a rational as an int64; throws InvalidArgument when it does not fit.
std::int64_t floor_to_int64(const Rational& q);

}  // namespace sigcount
