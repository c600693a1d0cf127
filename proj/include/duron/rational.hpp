#ifndef DURON_RATIONAL_HPP
#define DURON_RATIONAL_HPP

#include <boost/rational.hpp>
#include <complex>
#include <cstdint>
#include <string>

#include "duron/errors.hpp"

namespace duron {

using Rational = boost::rational<long long>;

inline double to_double(const Rational& r) {
  return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

// Parses "3", "-5/2" or a finite decimal like "0.25" into an exact rational.
Rational parse_rational(const std::string& text);

std::string to_string(const Rational& r);

// Gaussian rational: exact complex number re + im*i with rational parts.
// The exact coefficient field of the symbolic kernel and the phase-space
// polynomials.
struct GQ {
  Rational re{0};
  Rational im{0};

  GQ() = default;
  GQ(long long n) : re(n) {}  // NOLINT(google-explicit-constructor)
  GQ(Rational r) : re(std::move(r)) {}  // NOLINT(google-explicit-constructor)
  GQ(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

  static GQ i() { return GQ(Rational(0), Rational(1)); }
  static GQ of(long long num, long long den) { return GQ(Rational(num, den)); }

  bool is_zero() const { return re == Rational(0) && im == Rational(0); }

  GQ operator-() const { return GQ(-re, -im); }
  GQ conj() const { return GQ(re, -im); }

  GQ& operator+=(const GQ& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  GQ& operator-=(const GQ& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  friend GQ operator+(GQ a, const GQ& b) { return a += b; }
  friend GQ operator-(GQ a, const GQ& b) { return a -= b; }
  friend GQ operator*(const GQ& a, const GQ& b) {
    return GQ(a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re);
  }
  GQ& operator*=(const GQ& o) { return *this = *this * o; }
  friend GQ operator/(const GQ& a, const GQ& b) {
    Rational d = b.re * b.re + b.im * b.im;
    if (d == Rational(0)) throw Error("division by zero Gaussian rational");
    GQ num = a * b.conj();
    return GQ(num.re / d, num.im / d);
  }
  GQ& operator/=(const GQ& o) { return *this = *this / o; }

  friend bool operator==(const GQ& a, const GQ& b) { return a.re == b.re && a.im == b.im; }
  friend bool operator!=(const GQ& a, const GQ& b) { return !(a == b); }

  std::complex<double> to_complex() const { return {to_double(re), to_double(im)}; }
};

GQ parse_gq(const std::string& re_text, const std::string& im_text);
std::string to_string(const GQ& v);

// Integer power with exact arithmetic.
GQ pow(const GQ& base, int exp);
Rational binomial(int n, int k);
Rational factorial(int n);

}  // namespace duron

#endif
