#ifndef DURON_CCR_HPP
#define DURON_CCR_HPP

#include <complex>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "duron/errors.hpp"
#include "duron/rational.hpp"

namespace duron::ccr {

enum class GeneratorKind { position, momentum, time, frequency_conjugate, custom };

struct Generator {
  std::string name;
  GeneratorKind kind = GeneratorKind::custom;
};

// quantum: products are rewritten to normal order with [g,h] = c central;
// poisson: products commute and the bracket acts as a derivation.
enum class BracketMode { quantum, poisson };

namespace detail {
template <typename Coeff>
bool coeff_is_zero(const Coeff& c) {
  return c.is_zero();
}
inline bool coeff_is_zero(const std::complex<double>& c) { return c == std::complex<double>(0.0); }
}  // namespace detail

// Immutable algebra context: an ordered generator list plus the table of
// central brackets [g_i, g_j] = c_ij. The generator order fixes the canonical
// (normal) order of every monomial.
template <typename Coeff>
class Algebra {
 public:
  struct Relation {
    std::string g, h;
    Coeff value;
  };

  static std::shared_ptr<const Algebra> make(std::vector<Generator> gens,
                                             std::vector<Relation> relations,
                                             BracketMode mode = BracketMode::quantum) {
    auto alg = std::shared_ptr<Algebra>(new Algebra(std::move(gens), mode));
    for (const auto& r : relations) alg->set_bracket(r.g, r.h, r.value);
    return alg;
  }

  int index(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) throw ContextError("unknown generator: " + name);
    return it->second;
  }

  const Generator& generator(int i) const { return gens_[static_cast<std::size_t>(i)]; }
  int size() const { return static_cast<int>(gens_.size()); }
  BracketMode mode() const { return mode_; }

  // [g_i, g_j] (or {g_i, g_j} in poisson mode); antisymmetry is structural.
  const Coeff& bracket(int i, int j) const {
    return table_[static_cast<std::size_t>(i) * gens_.size() + static_cast<std::size_t>(j)];
  }

  bool same_structure(const Algebra& o) const {
    if (mode_ != o.mode_ || gens_.size() != o.gens_.size()) return false;
    for (std::size_t k = 0; k < gens_.size(); ++k)
      if (gens_[k].name != o.gens_[k].name) return false;
    return table_ == o.table_;
  }

 private:
  Algebra(std::vector<Generator> gens, BracketMode mode)
      : gens_(std::move(gens)), mode_(mode), table_(gens_.size() * gens_.size(), Coeff(0)) {
    for (std::size_t k = 0; k < gens_.size(); ++k) {
      if (index_.count(gens_[k].name))
        throw ContextError("duplicate generator name: " + gens_[k].name);
      index_[gens_[k].name] = static_cast<int>(k);
    }
  }

  void set_bracket(const std::string& g, const std::string& h, const Coeff& value) {
    int i = index(g), j = index(h);
    if (i == j && !detail::coeff_is_zero(value))
      throw ContextError("nonzero self-bracket for " + g);
    table_[static_cast<std::size_t>(i) * gens_.size() + static_cast<std::size_t>(j)] = value;
    table_[static_cast<std::size_t>(j) * gens_.size() + static_cast<std::size_t>(i)] =
        Coeff(0) - value;
  }

  std::vector<Generator> gens_;
  std::map<std::string, int> index_;
  BracketMode mode_;
  std::vector<Coeff> table_;
};

// Polynomial in normal order: a map from exponent vectors (one slot per
// generator, in context order) to coefficients. Zero coefficients are never
// stored. Values are immutable in spirit; every operation returns a fresh
// polynomial.
template <typename Coeff>
class NormalPoly {
 public:
  using AlgebraPtr = std::shared_ptr<const Algebra<Coeff>>;
  using Monomial = std::vector<int>;

  static NormalPoly zero(AlgebraPtr alg) { return NormalPoly(std::move(alg)); }

  static NormalPoly constant(AlgebraPtr alg, const Coeff& c) {
    NormalPoly p(std::move(alg));
    if (!detail::coeff_is_zero(c)) p.terms_[Monomial(static_cast<std::size_t>(p.alg_->size()), 0)] = c;
    return p;
  }

  static NormalPoly one(AlgebraPtr alg) { return constant(std::move(alg), Coeff(1)); }

  static NormalPoly generator(AlgebraPtr alg, const std::string& name) {
    NormalPoly p(alg);
    Monomial m(static_cast<std::size_t>(alg->size()), 0);
    m[static_cast<std::size_t>(alg->index(name))] = 1;
    p.terms_[std::move(m)] = Coeff(1);
    return p;
  }

  const AlgebraPtr& algebra() const { return alg_; }
  const std::map<Monomial, Coeff>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  bool is_constant() const {
    if (terms_.empty()) return true;
    if (terms_.size() != 1) return false;
    for (int e : terms_.begin()->first)
      if (e != 0) return false;
    return true;
  }

  // Constant part; zero if absent.
  Coeff constant_value() const {
    Monomial m(static_cast<std::size_t>(alg_->size()), 0);
    auto it = terms_.find(m);
    return it == terms_.end() ? Coeff(0) : it->second;
  }

  int degree() const {
    int d = 0;
    for (const auto& [m, c] : terms_) {
      int t = 0;
      for (int e : m) t += e;
      d = std::max(d, t);
    }
    return d;
  }

  NormalPoly operator-() const {
    NormalPoly out(alg_);
    for (const auto& [m, c] : terms_) out.terms_[m] = Coeff(0) - c;
    return out;
  }

  friend NormalPoly operator+(const NormalPoly& a, const NormalPoly& b) {
    a.require_same_context(b);
    NormalPoly out = a;
    for (const auto& [m, c] : b.terms_) out.add_term(m, c);
    return out;
  }

  friend NormalPoly operator-(const NormalPoly& a, const NormalPoly& b) { return a + (-b); }

  NormalPoly scaled(const Coeff& k) const {
    NormalPoly out(alg_);
    if (detail::coeff_is_zero(k)) return out;
    for (const auto& [m, c] : terms_) {
      Coeff v = c * k;
      if (!detail::coeff_is_zero(v)) out.terms_[m] = v;
    }
    return out;
  }

  friend bool operator==(const NormalPoly& a, const NormalPoly& b) {
    return a.alg_->same_structure(*b.alg_) && a.terms_ == b.terms_;
  }

  // Normal-ordered product. In quantum mode each generator of the right
  // factor is folded in with the single-swap rule g_i^e g_j = g_j g_i^e +
  // e*[g_i,g_j]*g_i^(e-1) (i above j in the order); the corrections are
  // central, so one pass suffices and the rewriting is confluent. In poisson
  // mode the product is plain commutative multiplication.
  friend NormalPoly operator*(const NormalPoly& a, const NormalPoly& b) {
    a.require_same_context(b);
    NormalPoly acc(a.alg_);
    const int n = a.alg_->size();
    for (const auto& [mono, coeff] : b.terms_) {
      NormalPoly cur = a.scaled(coeff);
      if (a.alg_->mode() == BracketMode::poisson) {
        NormalPoly shifted(a.alg_);
        for (const auto& [m, c] : cur.terms_) {
          Monomial m2 = m;
          for (int j = 0; j < n; ++j) m2[static_cast<std::size_t>(j)] += mono[static_cast<std::size_t>(j)];
          shifted.terms_[std::move(m2)] = c;
        }
        cur = std::move(shifted);
      } else {
        for (int j = 0; j < n; ++j)
          for (int rep = 0; rep < mono[static_cast<std::size_t>(j)]; ++rep)
            cur = cur.right_mul_generator(j);
      }
      for (const auto& [m, c] : cur.terms_) acc.add_term(m, c);
    }
    return acc;
  }

  // d/dg_i with commutative semantics; used by the poisson bracket.
  NormalPoly partial(int i) const {
    NormalPoly out(alg_);
    for (const auto& [m, c] : terms_) {
      int e = m[static_cast<std::size_t>(i)];
      if (e == 0) continue;
      Monomial m2 = m;
      m2[static_cast<std::size_t>(i)] -= 1;
      out.add_term(m2, c * Coeff(e));
    }
    return out;
  }

  std::string to_string() const;

 private:
  explicit NormalPoly(AlgebraPtr alg) : alg_(std::move(alg)) {}

  void require_same_context(const NormalPoly& o) const {
    if (!alg_->same_structure(*o.alg_))
      throw ContextError("operands belong to different algebra contexts");
  }

  void add_term(const Monomial& m, const Coeff& c) {
    auto it = terms_.find(m);
    if (it == terms_.end()) {
      if (!detail::coeff_is_zero(c)) terms_[m] = c;
      return;
    }
    it->second += c;
    if (detail::coeff_is_zero(it->second)) terms_.erase(it);
  }

  NormalPoly right_mul_generator(int j) const {
    NormalPoly out(alg_);
    const int n = alg_->size();
    for (const auto& [m, c] : terms_) {
      Monomial bumped = m;
      bumped[static_cast<std::size_t>(j)] += 1;
      out.add_term(bumped, c);
      for (int i = j + 1; i < n; ++i) {
        int e = m[static_cast<std::size_t>(i)];
        if (e == 0) continue;
        const Coeff& cij = alg_->bracket(i, j);
        if (detail::coeff_is_zero(cij)) continue;
        Monomial lowered = m;
        lowered[static_cast<std::size_t>(i)] -= 1;
        out.add_term(lowered, c * Coeff(e) * cij);
      }
    }
    return out;
  }

  AlgebraPtr alg_;
  std::map<Monomial, Coeff> terms_;
};

template <typename Coeff>
NormalPoly<Coeff> commutator(const NormalPoly<Coeff>& p, const NormalPoly<Coeff>& q) {
  return p * q - q * p;
}

template <typename Coeff>
NormalPoly<Coeff> anticommutator(const NormalPoly<Coeff>& p, const NormalPoly<Coeff>& q) {
  return p * q + q * p;
}

// {p, q} = sum_ij c_ij dp/dg_i dq/dg_j for a table of constant brackets.
template <typename Coeff>
NormalPoly<Coeff> poisson_bracket(const NormalPoly<Coeff>& p, const NormalPoly<Coeff>& q) {
  auto alg = p.algebra();
  auto out = NormalPoly<Coeff>::zero(alg);
  const int n = alg->size();
  for (int i = 0; i < n; ++i) {
    auto dpi = p.partial(i);
    if (dpi.is_zero()) continue;
    for (int j = 0; j < n; ++j) {
      const Coeff& cij = alg->bracket(i, j);
      if (detail::coeff_is_zero(cij)) continue;
      auto dqj = q.partial(j);
      if (dqj.is_zero()) continue;
      out = out + (dpi * dqj).scaled(cij);
    }
  }
  return out;
}

// Mode-dispatching bracket: commutator in quantum mode, derivation bracket in
// poisson mode.
template <typename Coeff>
NormalPoly<Coeff> bracket(const NormalPoly<Coeff>& p, const NormalPoly<Coeff>& q) {
  return p.algebra()->mode() == BracketMode::quantum ? commutator(p, q) : poisson_bracket(p, q);
}

template <typename Coeff>
std::string NormalPoly<Coeff>::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    if (!first) out += " + ";
    first = false;
    std::string mono;
    for (std::size_t k = 0; k < m.size(); ++k) {
      if (m[k] == 0) continue;
      if (!mono.empty()) mono += ' ';
      mono += alg_->generator(static_cast<int>(k)).name;
      if (m[k] > 1) mono += '^' + std::to_string(m[k]);
    }
    std::string cs = duron::to_string(c);
    if (mono.empty()) {
      out += cs;
    } else if (cs == "1") {
      out += mono;
    } else if (cs == "-1") {
      out += "-" + mono;
    } else {
      bool composite = cs.find('+') != std::string::npos || cs.find('-', 1) != std::string::npos;
      out += (composite ? "(" + cs + ")" : cs) + " " + mono;
    }
  }
  return out;
}

// ---- exact-coefficient instantiation used by the presets ----

using ExactAlgebra = Algebra<GQ>;
using ExactPoly = NormalPoly<GQ>;
using ExactAlgebraPtr = std::shared_ptr<const ExactAlgebra>;

struct TableEntry {
  std::string lhs;        // e.g. "[X,pi]"
  GQ expected;
  GQ computed;
  bool pass = false;
  bool matches_eq31 = true;  // only meaningful for the doubling presets
};

struct TableReport {
  std::string preset;
  std::vector<TableEntry> entries;
  bool all_pass = true;
  std::vector<std::string> notes;
};

// Presets: standard-doubling, paper-doubling, time-duron,
// classical-poisson-doubling. Throws PresetError for anything else.
TableReport verify_table(const std::string& preset);
std::vector<std::string> preset_names();

// Plain-text table files: one line per pair, "gen1 gen2 re im", '#' comments.
// Generators are created in order of first appearance. re/im accept integers,
// fractions (p/q) and finite decimals.
ExactAlgebraPtr load_table(const std::string& path, BracketMode mode = BracketMode::quantum);
void save_table(const ExactAlgebra& alg, const std::string& path);

// Runs a doubling preset's derived-bracket verification on top of single-copy
// relations loaded from a file instead of the built-in ones.
TableReport verify_table_with_base(const std::string& preset, const ExactAlgebraPtr& base);

void write_table_report_json(std::ostream& os, const TableReport& report);

}  // namespace duron::ccr

#endif
