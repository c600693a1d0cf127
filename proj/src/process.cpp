#include "duron/process.hpp"

#include <cctype>
#include <cmath>
#include <sstream>

namespace duron::process {

LabelSum LabelSum::scaled(Complex k) const {
  LabelSum out;
  if (k == Complex(0.0)) return out;
  for (const auto& [name, w] : parts) out.parts[name] = w * k;
  return out;
}

LabelSum operator+(const LabelSum& a, const LabelSum& b) {
  LabelSum out = a;
  for (const auto& [name, w] : b.parts) {
    auto it = out.parts.find(name);
    if (it == out.parts.end()) {
      out.parts[name] = w;
    } else {
      it->second += w;
      if (it->second == Complex(0.0)) out.parts.erase(it);
    }
  }
  return out;
}

namespace {

std::string format_scalar(Complex v) {
  std::ostringstream os;
  auto fmt = [&](double x) {
    std::ostringstream s;
    s << x;
    return s.str();
  };
  if (v.imag() == 0.0) return fmt(v.real());
  if (v.real() == 0.0) {
    if (v.imag() == 1.0) return "i";
    if (v.imag() == -1.0) return "-i";
    return fmt(v.imag()) + "i";
  }
  os << '(' << fmt(v.real()) << (v.imag() >= 0 ? "+" : "") << fmt(v.imag()) << "i)";
  return os.str();
}

}  // namespace

std::string LabelSum::to_string() const {
  if (parts.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [name, w] : parts) {
    if (!first) out += "+";
    first = false;
    if (w != Complex(1.0)) out += format_scalar(w);
    out += name;
  }
  return out;
}

ProcessBracket bracket(LabelSum left, LabelSum right, Complex strength) {
  ProcessBracket b;
  // rule 1: [kA, kB] = k[A,B] for single labels with a common scalar
  if (left.single() && right.single()) {
    Complex kl = left.parts.begin()->second;
    Complex kr = right.parts.begin()->second;
    if (kl == kr && kl != Complex(1.0) && kl != Complex(0.0)) {
      strength *= kl;
      left = LabelSum(left.parts.begin()->first);
      right = LabelSum(right.parts.begin()->first);
    }
  }
  b.left = std::move(left);
  b.right = std::move(right);
  b.strength = strength;
  return b;
}

ProcessBracket bracket(const std::string& left, const std::string& right, Complex strength) {
  return bracket(LabelSum(left), LabelSum(right), strength);
}

ProcessBracket conjugate(const ProcessBracket& b) {
  ProcessBracket out;
  out.left = b.right;
  out.right = b.left;
  out.strength = -std::conj(b.strength);
  return out;
}

bool composable(const ProcessBracket& b1, const ProcessBracket& b2) {
  return b1.right == b2.left;
}

ProcessBracket compose(const ProcessBracket& b1, const ProcessBracket& b2) {
  if (!composable(b1, b2))
    throw UndefinedComposition("composition [" + b1.left.to_string() + "," +
                               b1.right.to_string() + "][" + b2.left.to_string() + "," +
                               b2.right.to_string() + "] is not defined (middle labels differ)");
  ProcessBracket out;
  out.left = b1.left;
  out.right = b2.right;
  out.strength = b1.strength * b2.strength;
  return out;
}

ProcessBracket label_merge(const ProcessBracket& b1, const ProcessBracket& b2) {
  ProcessBracket out;
  out.left = b1.left.scaled(b1.strength) + b2.left.scaled(b2.strength);
  out.right = b1.right.scaled(b1.strength) + b2.right.scaled(b2.strength);
  out.strength = 1.0;
  return out;
}

bool operator==(const ProcessBracket& a, const ProcessBracket& b) {
  return a.strength == b.strength && a.left == b.left && a.right == b.right;
}

ProcessElement conjugate(const ProcessElement& e) {
  ProcessElement out;
  for (const auto& t : e.terms) out.terms.push_back(conjugate(t));
  return out;
}

bool operator==(const ProcessElement& a, const ProcessElement& b) {
  return a.terms == b.terms;
}

// ---- incidence ----

IncidenceElement ketbra(const std::string& A, const std::string& B, Complex c) {
  IncidenceElement e;
  if (c != Complex(0.0)) e.terms[{A, B}] = c;
  return e;
}

IncidenceElement operator+(const IncidenceElement& a, const IncidenceElement& b) {
  IncidenceElement out = a;
  for (const auto& [key, c] : b.terms) {
    auto it = out.terms.find(key);
    if (it == out.terms.end()) {
      out.terms[key] = c;
    } else {
      it->second += c;
      if (it->second == Complex(0.0)) out.terms.erase(it);
    }
  }
  return out;
}

IncidenceElement operator*(const IncidenceElement& a, const IncidenceElement& b) {
  IncidenceElement out;
  for (const auto& [ka, ca] : a.terms)
    for (const auto& [kb, cb] : b.terms) {
      if (ka.second != kb.first) continue;  // delta_BC
      auto key = std::make_pair(ka.first, kb.second);
      auto it = out.terms.find(key);
      if (it == out.terms.end()) {
        if (ca * cb != Complex(0.0)) out.terms[key] = ca * cb;
      } else {
        it->second += ca * cb;
        if (it->second == Complex(0.0)) out.terms.erase(it);
      }
    }
  return out;
}

bool operator==(const IncidenceElement& a, const IncidenceElement& b) {
  return a.terms == b.terms;
}

// ---- iterants ----

Iterant iterant_star(const Iterant& u, const Iterant& v) {
  Iterant out;
  if (!u.shifted) {
    out.a = u.a * v.a;
    out.b = u.b * v.b;
    out.shifted = v.shifted;
  } else {
    // eta [c,d] = [d,c] eta; eta^2 = 1
    out.a = u.a * v.b;
    out.b = u.b * v.a;
    out.shifted = !v.shifted;
  }
  return out;
}

Mat2 operator*(const Mat2& x, const Mat2& y) {
  Mat2 out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) out.m[i][j] = x.m[i][0] * y.m[0][j] + x.m[i][1] * y.m[1][j];
  return out;
}

bool operator==(const Mat2& x, const Mat2& y) {
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      if (!(x.m[i][j] == y.m[i][j])) return false;
  return true;
}

Mat2 iterant_matrix(const Iterant& u) {
  Mat2 out;
  GQ zero(0);
  if (!u.shifted) {
    out.m[0][0] = u.a;
    out.m[0][1] = zero;
    out.m[1][0] = zero;
    out.m[1][1] = u.b;
  } else {
    // diag(a,b) * swap
    out.m[0][0] = zero;
    out.m[0][1] = u.a;
    out.m[1][0] = u.b;
    out.m[1][1] = zero;
  }
  return out;
}

Iterant quaternion_i() { return Iterant{GQ::i(), -GQ::i(), false}; }
Iterant quaternion_j() { return Iterant{GQ(1), GQ(-1), true}; }
Iterant quaternion_k() { return Iterant{GQ::i(), GQ::i(), true}; }

// ---- transitions ----

Eigen::MatrixXcd transition_evolve(const TransitionSystem& sys, double t) {
  const auto n = static_cast<Eigen::Index>(sys.frequencies.size());
  if (sys.amplitudes.rows() != n || sys.amplitudes.cols() != n)
    throw DimensionError("amplitude matrix does not match frequency count");
  Eigen::MatrixXcd out(n, n);
  for (Eigen::Index m = 0; m < n; ++m)
    for (Eigen::Index k = 0; k < n; ++k) {
      double nu = to_double(sys.frequencies[static_cast<std::size_t>(m)] -
                            sys.frequencies[static_cast<std::size_t>(k)]);
      out(m, k) = sys.amplitudes(m, k) * std::polar(1.0, nu * t);
    }
  return out;
}

RitzReport ritz_check(const TransitionSystem& sys) {
  RitzReport report;
  const auto n = sys.frequencies.size();
  for (std::size_t m = 0; m < n; ++m)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        Rational lhs = (sys.frequencies[m] - sys.frequencies[j]) +
                       (sys.frequencies[j] - sys.frequencies[k]);
        Rational rhs = sys.frequencies[m] - sys.frequencies[k];
        report.exact_pass = report.exact_pass && lhs == rhs;
        ++report.triples_checked;
      }
  return report;
}

TransitionProduct transition_product(const TransitionSystem& sys, double t) {
  TransitionProduct out;
  Eigen::MatrixXcd xt = transition_evolve(sys, t);
  out.squared = xt * xt;
  Eigen::MatrixXcd r2 = sys.amplitudes * sys.amplitudes;
  double dev = 0.0;
  const auto n = static_cast<Eigen::Index>(sys.frequencies.size());
  for (Eigen::Index m = 0; m < n; ++m)
    for (Eigen::Index k = 0; k < n; ++k) {
      double nu = to_double(sys.frequencies[static_cast<std::size_t>(m)] -
                            sys.frequencies[static_cast<std::size_t>(k)]);
      dev = std::max(dev, std::abs(out.squared(m, k) - r2(m, k) * std::polar(1.0, nu * t)));
    }
  out.max_phase_deviation = dev;
  return out;
}

// ---- parser ----

namespace {

class Lexer {
 public:
  explicit Lexer(const std::string& text) : text_(text) {}

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool eof() {
    skip_space();
    return pos_ >= text_.size();
  }
  char peek() {
    skip_space();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }
  char take() {
    skip_space();
    return text_[pos_++];
  }
  std::size_t pos() const { return pos_; }

  std::string identifier() {
    skip_space();
    std::size_t start = pos_;
    if (pos_ >= text_.size() ||
        !(std::isalpha(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
      throw ParseError("expected identifier", pos_);
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
      ++pos_;
    return text_.substr(start, pos_ - start);
  }

  // decimal with optional 'i' suffix; bare 'i' also accepted
  Complex scalar() {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == 'i' &&
        (pos_ + 1 >= text_.size() || !std::isalnum(static_cast<unsigned char>(text_[pos_ + 1])))) {
      ++pos_;
      return {0.0, 1.0};
    }
    std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.'))
      ++pos_;
    if (start == pos_) throw ParseError("expected number", pos_);
    double value = std::stod(text_.substr(start, pos_ - start));
    if (pos_ < text_.size() && text_[pos_] == 'i') {
      ++pos_;
      return {0.0, value};
    }
    return {value, 0.0};
  }

 private:
  const std::string& text_;
  std::size_t pos_ = 0;
};

}  // namespace

ParsedExpr parse(const std::string& text) {
  Lexer lex(text);
  ParsedExpr expr;
  bool negate_next = false;
  if (lex.peek() == '-') {
    lex.take();
    negate_next = true;
  }
  while (true) {
    ParsedExpr::Term term;
    if (negate_next) term.scalar = -term.scalar;
    negate_next = false;

    char c = lex.peek();
    if (c != '[') {
      term.scalar *= lex.scalar();
      if (lex.peek() != '[') throw ParseError("expected '[' after scalar", lex.pos());
    }
    while (lex.peek() == '[') {
      lex.take();  // '['
      std::string left = lex.identifier();
      if (lex.peek() != ',') throw ParseError("expected ',' in bracket", lex.pos());
      lex.take();
      std::string right = lex.identifier();
      if (lex.peek() != ']') throw ParseError("expected ']' in bracket", lex.pos());
      lex.take();
      term.factors.push_back(bracket(left, right));
    }
    if (term.factors.empty()) throw ParseError("term has no bracket", lex.pos());
    expr.terms.push_back(std::move(term));

    if (lex.eof()) break;
    char sep = lex.take();
    if (sep == '+') {
      negate_next = false;
    } else if (sep == '-') {
      negate_next = true;
    } else {
      throw ParseError(std::string("unexpected character '") + sep + "'", lex.pos() - 1);
    }
  }
  return expr;
}

ProcessElement ParsedExpr::evaluate() const {
  ProcessElement out;
  for (const auto& term : terms) {
    ProcessBracket acc = term.factors.front();
    for (std::size_t k = 1; k < term.factors.size(); ++k) acc = compose(acc, term.factors[k]);
    acc.strength *= term.scalar;
    out.terms.push_back(std::move(acc));
  }
  return out;
}

std::string print(const ProcessElement& e) {
  if (e.terms.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& b : e.terms) {
    Complex k = b.strength;
    std::string sign;
    if (!first) {
      // pull a leading minus into the separator for readable round trips
      if (k.imag() == 0.0 && k.real() < 0) {
        sign = " - ";
        k = -k;
      } else if (k.real() == 0.0 && k.imag() < 0) {
        sign = " - ";
        k = -k;
      } else {
        sign = " + ";
      }
    } else if (k.imag() == 0.0 && k.real() < 0) {
      sign = "-";
      k = -k;
    } else if (k.real() == 0.0 && k.imag() < 0) {
      sign = "-";
      k = -k;
    }
    out += sign;
    if (k != Complex(1.0)) out += format_scalar(k);
    out += "[" + b.left.to_string() + "," + b.right.to_string() + "]";
    first = false;
  }
  return out;
}

}  // namespace duron::process
