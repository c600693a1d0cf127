#include "duron/rational.hpp"

#include <cctype>
#include <sstream>

namespace duron {

Rational parse_rational(const std::string& text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  if (s.empty()) throw Error("empty rational literal");

  bool neg = false;
  std::size_t pos = 0;
  if (s[pos] == '+' || s[pos] == '-') {
    neg = s[pos] == '-';
    ++pos;
  }
  auto digits = [&](long long& out) {
    if (pos >= s.size() || !std::isdigit(static_cast<unsigned char>(s[pos])))
      throw Error("bad rational literal: " + text);
    out = 0;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
      out = out * 10 + (s[pos] - '0');
      ++pos;
    }
  };

  long long intpart = 0;
  digits(intpart);
  Rational value(intpart);
  if (pos < s.size() && s[pos] == '/') {
    ++pos;
    long long den = 0;
    digits(den);
    if (den == 0) throw Error("zero denominator: " + text);
    value = Rational(intpart, den);
  } else if (pos < s.size() && s[pos] == '.') {
    ++pos;
    long long frac = 0;
    long long scale = 1;
    if (pos >= s.size() || !std::isdigit(static_cast<unsigned char>(s[pos])))
      throw Error("bad decimal literal: " + text);
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
      frac = frac * 10 + (s[pos] - '0');
      scale *= 10;
      ++pos;
    }
    value = Rational(intpart) + Rational(frac, scale);
  }
  if (pos != s.size()) throw Error("trailing characters in rational literal: " + text);
  return neg ? -value : value;
}

std::string to_string(const Rational& r) {
  std::ostringstream os;
  os << r.numerator();
  if (r.denominator() != 1) os << '/' << r.denominator();
  return os.str();
}

GQ parse_gq(const std::string& re_text, const std::string& im_text) {
  return GQ(parse_rational(re_text), parse_rational(im_text));
}

std::string to_string(const GQ& v) {
  const Rational zero(0);
  if (v.im == zero) return to_string(v.re);
  std::string im_part = (v.im == Rational(1))    ? "i"
                        : (v.im == Rational(-1)) ? "-i"
                                                 : to_string(v.im) + "i";
  if (v.re == zero) return im_part;
  if (v.im > zero) return to_string(v.re) + "+" + im_part;
  return to_string(v.re) + im_part;  // negative sign carried by im_part
}

GQ pow(const GQ& base, int exp) {
  GQ out(1);
  for (int k = 0; k < exp; ++k) out *= base;
  return out;
}

Rational binomial(int n, int k) {
  if (k < 0 || k > n) return Rational(0);
  Rational out(1);
  for (int j = 1; j <= k; ++j) out *= Rational(n - k + j, j);
  return out;
}

Rational factorial(int n) {
  Rational out(1);
  for (int j = 2; j <= n; ++j) out *= Rational(j);
  return out;
}

}  // namespace duron
