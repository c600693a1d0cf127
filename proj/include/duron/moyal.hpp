#ifndef DURON_MOYAL_HPP
#define DURON_MOYAL_HPP

#include <array>
#include <map>
#include <string>

#include "duron/errors.hpp"
#include "duron/rational.hpp"

namespace duron::moyal {

// Commutative polynomial in (x, p) whose coefficients are exact polynomials
// in the deformation parameter h. Keys are (x-degree, p-degree, h-degree);
// zero coefficients are never stored.
class PhasePoly {
 public:
  using Key = std::array<int, 3>;

  PhasePoly() = default;

  static PhasePoly constant(const GQ& c) { return monomial(0, 0, 0, c); }
  static PhasePoly x(int deg = 1) { return monomial(deg, 0, 0, GQ(1)); }
  static PhasePoly p(int deg = 1) { return monomial(0, deg, 0, GQ(1)); }
  static PhasePoly hbar(int deg = 1) { return monomial(0, 0, deg, GQ(1)); }
  static PhasePoly monomial(int xdeg, int pdeg, int hdeg, const GQ& c);

  const std::map<Key, GQ>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  int x_degree() const;
  int p_degree() const;
  int h_degree() const;  // highest power of h present
  int total_xp_degree() const;

  PhasePoly operator-() const;
  friend PhasePoly operator+(const PhasePoly& a, const PhasePoly& b);
  friend PhasePoly operator-(const PhasePoly& a, const PhasePoly& b);
  friend PhasePoly operator*(const PhasePoly& a, const PhasePoly& b);
  PhasePoly scaled(const GQ& k) const;
  friend bool operator==(const PhasePoly& a, const PhasePoly& b) { return a.terms_ == b.terms_; }
  friend bool operator!=(const PhasePoly& a, const PhasePoly& b) { return !(a == b); }

  PhasePoly dx() const;
  PhasePoly dp() const;
  PhasePoly dx(int n) const;
  PhasePoly dp(int n) const;

  // h -> 0
  PhasePoly at_h_zero() const;
  // slice of terms with the given h-degree, with h removed from the key
  PhasePoly h_slice(int hdeg) const;
  // exact division by (i h); throws if any term lacks an h factor
  PhasePoly div_ih() const;

  std::string to_string() const;

  void add_term(const Key& k, const GQ& c);

 private:
  std::map<Key, GQ> terms_;
};

// Groenewold star product, bidifferential series:
//   f (*) g = sum_k (1/k!) (i h/2)^k sum_j C(k,j) (-1)^j
//             (dx^{k-j} dp^j f) (dx^j dp^{k-j} g)
// Exact and finite on polynomials.
PhasePoly star(const PhasePoly& f, const PhasePoly& g);

// Same product through the Bopp shift: each monomial x^a p^b of f becomes the
// normal-ordered operator (x + (ih/2) Dp)^a (p - (ih/2) Dx)^b acting on g.
// Equality with `star` is itself a test oracle.
PhasePoly star_bopp(const PhasePoly& f, const PhasePoly& g);

// (f*g - g*f)/(ih) — antisymmetric (sine) bracket.
PhasePoly moyal_bracket(const PhasePoly& f, const PhasePoly& g);
// (f*g + g*f)/2 — symmetric (cosine/Baker) bracket.
PhasePoly baker_bracket(const PhasePoly& f, const PhasePoly& g);
// dx f dp g - dp f dx g.
PhasePoly poisson_bracket(const PhasePoly& f, const PhasePoly& g);

struct ClassicalLimitReport {
  bool moyal_h0_vanishes = false;   // MB - PB has no h^0 part
  bool baker_h0_vanishes = false;   // Baker - f g has no h^0 part
  int moyal_lowest_correction = -1; // lowest h-degree present in MB - PB (-1: none)
  int baker_lowest_correction = -1;
  bool pass = false;                // h^0 parts vanish and corrections start at h^2
};
ClassicalLimitReport classical_limit_report(const PhasePoly& f, const PhasePoly& g);

// Grammar: monomials `c x^a p^b h^k` joined by '+'/'-'; coefficient accepts
// integers, fractions and an 'i' suffix ("3/2i", "2", "i").
PhasePoly parse_poly(const std::string& text);

}  // namespace duron::moyal

#endif
