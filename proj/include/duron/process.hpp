#ifndef DURON_PROCESS_HPP
#define DURON_PROCESS_HPP

#include <Eigen/Dense>
#include <complex>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "duron/errors.hpp"
#include "duron/rational.hpp"

namespace duron::process {

using Complex = std::complex<double>;

// Formal sum of labels with complex weights; labels form a free additive
// monoid so the rule-5 merge [A,B]+[C,D]=[A+C,B+D] has somewhere to live.
struct LabelSum {
  std::map<std::string, Complex> parts;

  LabelSum() = default;
  explicit LabelSum(const std::string& name, Complex weight = 1.0) {
    if (weight != Complex(0.0)) parts[name] = weight;
  }

  bool single() const { return parts.size() == 1; }
  LabelSum scaled(Complex k) const;
  friend LabelSum operator+(const LabelSum& a, const LabelSum& b);
  friend bool operator==(const LabelSum& a, const LabelSum& b) { return a.parts == b.parts; }
  std::string to_string() const;
};

// Strength-weighted directed bracket k[A,B].
struct ProcessBracket {
  LabelSum left, right;
  Complex strength{1.0, 0.0};
};

// Constructor applying rule-1 normalization: [kA, kB] -> k[A,B] when both
// labels are single terms carrying the same scalar.
ProcessBracket bracket(LabelSum left, LabelSum right, Complex strength = 1.0);
ProcessBracket bracket(const std::string& left, const std::string& right, Complex strength = 1.0);

// Rule 2: ([A,B])* = -[B,A]; the strength is conjugated so * is an involution
// on complex-weighted brackets.
ProcessBracket conjugate(const ProcessBracket& b);

// Rule 3 groupoid product; throws UndefinedComposition unless b1.right equals
// b2.left exactly.
ProcessBracket compose(const ProcessBracket& b1, const ProcessBracket& b2);
bool composable(const ProcessBracket& b1, const ProcessBracket& b2);

// Rule 5 as an explicit operation: k1[A,B] + k2[C,D] = [k1 A + k2 C, k1 B + k2 D].
ProcessBracket label_merge(const ProcessBracket& b1, const ProcessBracket& b2);

bool operator==(const ProcessBracket& a, const ProcessBracket& b);

// Formal (unmerged) sum of brackets.
struct ProcessElement {
  std::vector<ProcessBracket> terms;

  ProcessElement() = default;
  explicit ProcessElement(ProcessBracket b) { terms.push_back(std::move(b)); }
  friend ProcessElement operator+(ProcessElement a, const ProcessElement& b) {
    a.terms.insert(a.terms.end(), b.terms.begin(), b.terms.end());
    return a;
  }
};

ProcessElement conjugate(const ProcessElement& e);
bool operator==(const ProcessElement& a, const ProcessElement& b);

// ---- incidence algebra |A><B| (eq-4): delta product, zero on mismatch ----

struct IncidenceElement {
  // (ket, bra) -> coefficient; empty map is the zero element
  std::map<std::pair<std::string, std::string>, Complex> terms;

  bool is_zero() const { return terms.empty(); }
};

IncidenceElement ketbra(const std::string& A, const std::string& B, Complex c = 1.0);
IncidenceElement operator+(const IncidenceElement& a, const IncidenceElement& b);
IncidenceElement operator*(const IncidenceElement& a, const IncidenceElement& b);
bool operator==(const IncidenceElement& a, const IncidenceElement& b);

// ---- Kauffman iterants: exact pairs with a shift flag ----

struct Iterant {
  GQ a, b;
  bool shifted = false;

  friend bool operator==(const Iterant& u, const Iterant& v) {
    return u.a == v.a && u.b == v.b && u.shifted == v.shifted;
  }
};

// [a,b] eta^s * [c,d] eta^t with eta[c,d] = [d,c] eta and eta^2 = 1.
Iterant iterant_star(const Iterant& u, const Iterant& v);

struct Mat2 {
  GQ m[2][2];
  friend Mat2 operator*(const Mat2& x, const Mat2& y);
  friend bool operator==(const Mat2& x, const Mat2& y);
};

// Faithful 2x2 image: [a,b] -> diag(a,b), eta -> swap; the product oracle.
Mat2 iterant_matrix(const Iterant& u);

// Quaternion triple built from iterants: I=[i,-i], J=[1,-1]eta, K=[i,i]eta.
Iterant quaternion_i();
Iterant quaternion_j();
Iterant quaternion_k();

// ---- Heisenberg transition systems and the Ritz combination rule ----

struct TransitionSystem {
  std::vector<Rational> frequencies;  // exact so the Ritz check is exact
  Eigen::MatrixXcd amplitudes;        // R_mn
};

// X_mn(t) = R_mn exp[i(nu_m - nu_n) t]
Eigen::MatrixXcd transition_evolve(const TransitionSystem& sys, double t);

struct RitzReport {
  bool exact_pass = true;
  long long triples_checked = 0;
};
RitzReport ritz_check(const TransitionSystem& sys);

struct TransitionProduct {
  Eigen::MatrixXcd squared;       // X(t)^2
  double max_phase_deviation;     // vs exp[i(nu_m-nu_n)t] * (R^2)_mn
};
TransitionProduct transition_product(const TransitionSystem& sys, double t);

// ---- parser / printer ----
//
// bracket := '[' label ',' label ']'
// term    := scalar? bracket+          (juxtaposition = composition)
// expr    := term (('+'|'-') term)*
// scalar  := decimal or 'i'-suffixed imaginary (e.g. 2, 3.5, 2i, i)
// labels  := identifiers

class ParsedExpr {
 public:
  struct Term {
    Complex scalar{1.0, 0.0};
    std::vector<ProcessBracket> factors;
  };
  std::vector<Term> terms;

  // Composes each term's factors left-to-right; throws UndefinedComposition
  // on a label mismatch (evaluation-time, never parse-time).
  ProcessElement evaluate() const;
};

ParsedExpr parse(const std::string& text);
std::string print(const ProcessElement& e);

}  // namespace duron::process

#endif
