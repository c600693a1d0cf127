#include "duron/moyal.hpp"

#include <algorithm>
#include <cctype>

namespace duron::moyal {

PhasePoly PhasePoly::monomial(int xdeg, int pdeg, int hdeg, const GQ& c) {
  if (xdeg < 0 || pdeg < 0 || hdeg < 0) throw Error("negative degree");
  PhasePoly out;
  out.add_term({xdeg, pdeg, hdeg}, c);
  return out;
}

void PhasePoly::add_term(const Key& k, const GQ& c) {
  if (c.is_zero()) return;
  auto it = terms_.find(k);
  if (it == terms_.end()) {
    terms_[k] = c;
    return;
  }
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

int PhasePoly::x_degree() const {
  int d = 0;
  for (const auto& [k, c] : terms_) d = std::max(d, k[0]);
  return d;
}

int PhasePoly::p_degree() const {
  int d = 0;
  for (const auto& [k, c] : terms_) d = std::max(d, k[1]);
  return d;
}

int PhasePoly::h_degree() const {
  int d = 0;
  for (const auto& [k, c] : terms_) d = std::max(d, k[2]);
  return d;
}

int PhasePoly::total_xp_degree() const {
  int d = 0;
  for (const auto& [k, c] : terms_) d = std::max(d, k[0] + k[1]);
  return d;
}

PhasePoly PhasePoly::operator-() const {
  PhasePoly out;
  for (const auto& [k, c] : terms_) out.terms_[k] = -c;
  return out;
}

PhasePoly operator+(const PhasePoly& a, const PhasePoly& b) {
  PhasePoly out = a;
  for (const auto& [k, c] : b.terms_) out.add_term(k, c);
  return out;
}

PhasePoly operator-(const PhasePoly& a, const PhasePoly& b) { return a + (-b); }

PhasePoly operator*(const PhasePoly& a, const PhasePoly& b) {
  PhasePoly out;
  for (const auto& [ka, ca] : a.terms_)
    for (const auto& [kb, cb] : b.terms_)
      out.add_term({ka[0] + kb[0], ka[1] + kb[1], ka[2] + kb[2]}, ca * cb);
  return out;
}

PhasePoly PhasePoly::scaled(const GQ& k) const {
  PhasePoly out;
  if (k.is_zero()) return out;
  for (const auto& [key, c] : terms_) out.terms_[key] = c * k;
  return out;
}

PhasePoly PhasePoly::dx() const {
  PhasePoly out;
  for (const auto& [k, c] : terms_) {
    if (k[0] == 0) continue;
    out.add_term({k[0] - 1, k[1], k[2]}, c * GQ(k[0]));
  }
  return out;
}

PhasePoly PhasePoly::dp() const {
  PhasePoly out;
  for (const auto& [k, c] : terms_) {
    if (k[1] == 0) continue;
    out.add_term({k[0], k[1] - 1, k[2]}, c * GQ(k[1]));
  }
  return out;
}

PhasePoly PhasePoly::dx(int n) const {
  PhasePoly out = *this;
  for (int j = 0; j < n; ++j) out = out.dx();
  return out;
}

PhasePoly PhasePoly::dp(int n) const {
  PhasePoly out = *this;
  for (int j = 0; j < n; ++j) out = out.dp();
  return out;
}

PhasePoly PhasePoly::at_h_zero() const { return h_slice(0); }

PhasePoly PhasePoly::h_slice(int hdeg) const {
  PhasePoly out;
  for (const auto& [k, c] : terms_)
    if (k[2] == hdeg) out.add_term({k[0], k[1], 0}, c);
  return out;
}

PhasePoly PhasePoly::div_ih() const {
  PhasePoly out;
  const GQ minus_i = -GQ::i();  // 1/i
  for (const auto& [k, c] : terms_) {
    if (k[2] < 1) throw Error("division by ih of a term without an h factor");
    out.add_term({k[0], k[1], k[2] - 1}, c * minus_i);
  }
  return out;
}

PhasePoly star(const PhasePoly& f, const PhasePoly& g) {
  // the series terminates at min of the total (x,p) degrees
  int kmax = std::min(f.total_xp_degree(), g.total_xp_degree());
  PhasePoly out;
  const GQ i_half = GQ::i() * GQ::of(1, 2);  // (i/2)^k; the h^k power rides on the key
  for (int k = 0; k <= kmax; ++k) {
    GQ prefactor = pow(i_half, k) / GQ(factorial(k));
    for (int j = 0; j <= k; ++j) {
      GQ coeff = prefactor * GQ(binomial(k, j)) * (j % 2 ? GQ(-1) : GQ(1));
      PhasePoly left = f.dx(k - j).dp(j);
      if (left.is_zero()) continue;
      PhasePoly right = g.dx(j).dp(k - j);
      if (right.is_zero()) continue;
      PhasePoly prod = (left * right).scaled(coeff);
      for (const auto& [key, c] : prod.terms()) out.add_term({key[0], key[1], key[2] + k}, c);
    }
  }
  return out;
}

PhasePoly star_bopp(const PhasePoly& f, const PhasePoly& g) {
  PhasePoly out;
  const GQ c = GQ::i() * GQ::of(1, 2);  // coefficient of h in the shift
  for (const auto& [k, coeff] : f.terms()) {
    const int a = k[0], b = k[1], hextra = k[2];
    // (x + c h Dp)^a (p - c h Dx)^b g, derivatives ordered to the right
    for (int r = 0; r <= a; ++r)
      for (int s = 0; s <= b; ++s) {
        GQ w = coeff * GQ(binomial(a, r)) * GQ(binomial(b, s)) * pow(c, r + s) *
               (s % 2 ? GQ(-1) : GQ(1));
        PhasePoly dg = g.dp(r).dx(s);
        if (dg.is_zero()) continue;
        PhasePoly shifted;
        for (const auto& [kg, cg] : dg.terms())
          shifted.add_term({kg[0] + (a - r), kg[1] + (b - s), kg[2] + r + s + hextra}, cg * w);
        out = out + shifted;
      }
  }
  return out;
}

PhasePoly moyal_bracket(const PhasePoly& f, const PhasePoly& g) {
  return (star(f, g) - star(g, f)).div_ih();
}

PhasePoly baker_bracket(const PhasePoly& f, const PhasePoly& g) {
  return (star(f, g) + star(g, f)).scaled(GQ::of(1, 2));
}

PhasePoly poisson_bracket(const PhasePoly& f, const PhasePoly& g) {
  return f.dx() * g.dp() - f.dp() * g.dx();
}

ClassicalLimitReport classical_limit_report(const PhasePoly& f, const PhasePoly& g) {
  ClassicalLimitReport rep;
  PhasePoly dmb = moyal_bracket(f, g) - poisson_bracket(f, g);
  PhasePoly dbk = baker_bracket(f, g) - f * g;
  rep.moyal_h0_vanishes = dmb.at_h_zero().is_zero();
  rep.baker_h0_vanishes = dbk.at_h_zero().is_zero();
  auto lowest = [](const PhasePoly& q) {
    int lo = -1;
    for (const auto& [k, c] : q.terms())
      if (lo < 0 || k[2] < lo) lo = k[2];
    return lo;
  };
  rep.moyal_lowest_correction = lowest(dmb);
  rep.baker_lowest_correction = lowest(dbk);
  rep.pass = rep.moyal_h0_vanishes && rep.baker_h0_vanishes &&
             (rep.moyal_lowest_correction == -1 || rep.moyal_lowest_correction >= 2) &&
             (rep.baker_lowest_correction == -1 || rep.baker_lowest_correction >= 2);
  return rep;
}

std::string PhasePoly::to_string() const {
  // complex coefficients are split into a real and an 'i'-suffixed monomial
  // so the printed form stays inside the parser grammar
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  auto emit = [&](const Key& k, const Rational& mag, bool imaginary, bool negative) {
    if (first) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    first = false;
    std::string mono;
    auto piece = [&](const char* sym, int deg) {
      if (deg == 0) return;
      if (!mono.empty()) mono += ' ';
      mono += sym;
      if (deg > 1) mono += '^' + std::to_string(deg);
    };
    piece("x", k[0]);
    piece("p", k[1]);
    piece("h", k[2]);
    std::string cs;
    if (mag == Rational(1) && imaginary)
      cs = "i";
    else if (mag != Rational(1) || mono.empty())
      cs = duron::to_string(mag) + (imaginary ? "i" : "");
    else if (imaginary)
      cs = "i";
    if (cs.empty()) {
      out += mono;
    } else if (mono.empty()) {
      out += cs;
    } else {
      out += cs + " " + mono;
    }
  };
  for (const auto& [k, c] : terms_) {
    if (c.re != Rational(0)) emit(k, boost::abs(c.re), false, c.re < Rational(0));
    if (c.im != Rational(0)) emit(k, boost::abs(c.im), true, c.im < Rational(0));
  }
  return out;
}

PhasePoly parse_poly(const std::string& text) {
  PhasePoly out;
  std::size_t pos = 0;
  auto skip = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  bool negate = false;
  skip();
  if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
    negate = text[pos] == '-';
    ++pos;
  }
  while (true) {
    skip();
    if (pos >= text.size()) throw ParseError("expected monomial", pos);
    GQ coeff(1);
    bool saw_anything = false;

    // optional numeric coefficient: int, fraction or decimal, optional i
    if (std::isdigit(static_cast<unsigned char>(text[pos])) || text[pos] == '.') {
      std::size_t start = pos;
      while (pos < text.size() && (std::isdigit(static_cast<unsigned char>(text[pos])) ||
                                   text[pos] == '.' || text[pos] == '/'))
        ++pos;
      Rational r = parse_rational(text.substr(start, pos - start));
      coeff = GQ(r);
      saw_anything = true;
      if (pos < text.size() && text[pos] == 'i') {
        coeff = coeff * GQ::i();
        ++pos;
      }
    } else if (text[pos] == 'i') {
      coeff = GQ::i();
      ++pos;
      saw_anything = true;
    }

    int xdeg = 0, pdeg = 0, hdeg = 0;
    while (true) {
      skip();
      if (pos >= text.size()) break;
      char sym = text[pos];
      if (sym != 'x' && sym != 'p' && sym != 'h') break;
      ++pos;
      int deg = 1;
      if (pos < text.size() && text[pos] == '^') {
        ++pos;
        if (pos >= text.size() || !std::isdigit(static_cast<unsigned char>(text[pos])))
          throw ParseError("expected exponent", pos);
        deg = 0;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])))
          deg = deg * 10 + (text[pos++] - '0');
      }
      if (sym == 'x') xdeg += deg;
      if (sym == 'p') pdeg += deg;
      if (sym == 'h') hdeg += deg;
      saw_anything = true;
    }
    if (!saw_anything) throw ParseError("expected monomial", pos);
    out.add_term({xdeg, pdeg, hdeg}, negate ? -coeff : coeff);

    skip();
    if (pos >= text.size()) break;
    if (text[pos] == '+') {
      negate = false;
      ++pos;
    } else if (text[pos] == '-') {
      negate = true;
      ++pos;
    } else {
      throw ParseError(std::string("unexpected character '") + text[pos] + "'", pos);
    }
  }
  return out;
}

}  // namespace duron::moyal
