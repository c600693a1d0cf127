#include <doctest.h>

#include <algorithm>
#include <vector>

#include "duron/ccr.hpp"
#include "duron/rng.hpp"

using namespace duron;
using namespace duron::ccr;

namespace {

ExactAlgebraPtr heisenberg() {
  return ExactAlgebra::make({{"x", GeneratorKind::position}, {"p", GeneratorKind::momentum}},
                            {{"x", "p", GQ::i()}});
}

ExactPoly gen(const ExactAlgebraPtr& alg, const char* name) {
  return ExactPoly::generator(alg, name);
}

// Independent oracle: normal-order a word (sequence of generator indices) by
// naive adjacent-swap rewriting, g_i g_j -> g_j g_i + [g_i,g_j] for i > j.
// The strategy picks which violating pair to rewrite first; all strategies
// must agree (confluence).
struct WordTerm {
  GQ coeff;
  std::vector<int> word;
};

ExactPoly naive_normal_form(const ExactAlgebraPtr& alg, const std::vector<int>& word,
                            int strategy, SplitMix64* rng = nullptr) {
  std::vector<WordTerm> pending{{GQ(1), word}};
  auto result = ExactPoly::zero(alg);
  while (!pending.empty()) {
    WordTerm t = pending.back();
    pending.pop_back();
    std::vector<std::size_t> violations;
    for (std::size_t k = 0; k + 1 < t.word.size(); ++k)
      if (t.word[k] > t.word[k + 1]) violations.push_back(k);
    if (violations.empty()) {
      std::vector<int> expo(static_cast<std::size_t>(alg->size()), 0);
      auto mono = ExactPoly::one(alg).scaled(t.coeff);
      for (int g : t.word) mono = mono * gen(alg, alg->generator(g).name.c_str());
      result = result + mono;
      continue;
    }
    std::size_t k;
    if (strategy == 0)
      k = violations.front();
    else if (strategy == 1)
      k = violations.back();
    else
      k = violations[static_cast<std::size_t>(rng->uniform_int(0, static_cast<long long>(violations.size()) - 1))];

    WordTerm swapped = t;
    std::swap(swapped.word[k], swapped.word[k + 1]);
    pending.push_back(swapped);

    const GQ& c = alg->bracket(t.word[k], t.word[k + 1]);
    if (!c.is_zero()) {
      WordTerm contracted;
      contracted.coeff = t.coeff * c;
      contracted.word = t.word;
      contracted.word.erase(contracted.word.begin() + static_cast<long>(k),
                            contracted.word.begin() + static_cast<long>(k) + 2);
      pending.push_back(contracted);
    }
  }
  return result;
}

ExactPoly random_poly(const ExactAlgebraPtr& alg, SplitMix64& rng, int max_degree) {
  auto out = ExactPoly::zero(alg);
  int nterms = static_cast<int>(rng.uniform_int(1, 4));
  for (int t = 0; t < nterms; ++t) {
    GQ c(Rational(rng.uniform_int(-9, 9), rng.uniform_int(1, 4)),
         Rational(rng.uniform_int(-9, 9), rng.uniform_int(1, 4)));
    auto mono = ExactPoly::constant(alg, c);
    int deg = static_cast<int>(rng.uniform_int(0, max_degree));
    for (int d = 0; d < deg; ++d) {
      int g = static_cast<int>(rng.uniform_int(0, alg->size() - 1));
      mono = mono * gen(alg, alg->generator(g).name.c_str());
    }
    out = out + mono;
  }
  return out;
}

}  // namespace

TEST_CASE("multiply rewrites to normal order") {
  auto alg = heisenberg();
  auto x = gen(alg, "x"), p = gen(alg, "p");

  // x*p already normal-ordered
  auto xp = x * p;
  CHECK(xp.to_string() == "x p");

  // p*x = xp - i
  auto px = p * x;
  CHECK(px == x * p - ExactPoly::constant(alg, GQ::i()));

  // p^2 * x = x p^2 - 2 i p  (oracle: naive word rewriting)
  auto p2x = (p * p) * x;
  auto expected = x * p * p - p.scaled(GQ(2) * GQ::i());
  CHECK(p2x == expected);
  CHECK(p2x == naive_normal_form(alg, {1, 1, 0}, 0));
}

TEST_CASE("commutator and anticommutator") {
  auto alg = heisenberg();
  auto x = gen(alg, "x"), p = gen(alg, "p");
  CHECK(commutator(x, p) == ExactPoly::constant(alg, GQ::i()));
  // anticommutator(x,p) = 2xp - i
  CHECK(anticommutator(x, p) == (x * p).scaled(GQ(2)) - ExactPoly::constant(alg, GQ::i()));
}

TEST_CASE("context mismatch raises") {
  auto a = heisenberg();
  auto b = ExactAlgebra::make({{"x", GeneratorKind::position}, {"q", GeneratorKind::momentum}},
                              {{"x", "q", GQ::i()}});
  CHECK_THROWS_AS((void)(gen(a, "x") * gen(b, "x")), ContextError);
}

TEST_CASE("normal ordering is confluent across rewrite strategies") {
  auto alg = ExactAlgebra::make(
      {{"a", GeneratorKind::custom}, {"b", GeneratorKind::custom}, {"c", GeneratorKind::custom}},
      {{"a", "b", GQ::i()}, {"a", "c", GQ::of(1, 2)}, {"b", "c", GQ(Rational(0), Rational(-2))}});
  SplitMix64 rng(20240901);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<int> word;
    int len = static_cast<int>(rng.uniform_int(2, 6));
    for (int k = 0; k < len; ++k) word.push_back(static_cast<int>(rng.uniform_int(0, 2)));
    auto first = naive_normal_form(alg, word, 0);
    auto last = naive_normal_form(alg, word, 1);
    auto rand = naive_normal_form(alg, word, 2, &rng);
    CHECK(first == last);
    CHECK(first == rand);
    // engine agrees with the oracle
    auto engine = ExactPoly::one(alg);
    for (int g : word) engine = engine * gen(alg, alg->generator(g).name.c_str());
    CHECK(engine == first);
  }
}

TEST_CASE("product is associative (central commutators)") {
  auto alg = heisenberg();
  SplitMix64 rng(7);
  for (int trial = 0; trial < 30; ++trial) {
    auto p = random_poly(alg, rng, 2);
    auto q = random_poly(alg, rng, 2);
    auto r = random_poly(alg, rng, 2);
    CHECK((p * q) * r == p * (q * r));
  }
}

TEST_CASE("commutator antisymmetry and Jacobi identity, degree <= 2") {
  SplitMix64 rng(99);
  for (int trial = 0; trial < 20; ++trial) {
    // random central table over three generators
    auto c = [&] {
      return GQ(Rational(rng.uniform_int(-3, 3), rng.uniform_int(1, 3)),
                Rational(rng.uniform_int(-3, 3), rng.uniform_int(1, 3)));
    };
    auto alg = ExactAlgebra::make({{"u", GeneratorKind::custom},
                                   {"v", GeneratorKind::custom},
                                   {"w", GeneratorKind::custom}},
                                  {{"u", "v", c()}, {"u", "w", c()}, {"v", "w", c()}});
    auto p = random_poly(alg, rng, 2);
    auto q = random_poly(alg, rng, 2);
    auto r = random_poly(alg, rng, 2);
    CHECK(commutator(p, q) == -commutator(q, p));
    auto jacobi = commutator(commutator(p, q), r) + commutator(commutator(q, r), p) +
                  commutator(commutator(r, p), q);
    CHECK(jacobi.is_zero());
  }
}

TEST_CASE("poisson bracket mode") {
  auto alg = ExactAlgebra::make({{"x", GeneratorKind::position}, {"p", GeneratorKind::momentum}},
                                {{"x", "p", GQ(1)}}, BracketMode::poisson);
  auto x = gen(alg, "x"), p = gen(alg, "p");
  // products commute in poisson mode
  CHECK(x * p == p * x);
  CHECK(bracket(x, p) == ExactPoly::one(alg));
  // {x^2, p} = 2x, leibniz
  CHECK(bracket(x * x, p) == x.scaled(GQ(2)));
  // jacobi for the derivation bracket on polys
  auto f = x * x, g = x * p, h = p * p;
  auto jac = poisson_bracket(poisson_bracket(f, g), h) + poisson_bracket(poisson_bracket(g, h), f) +
             poisson_bracket(poisson_bracket(h, f), g);
  CHECK(jac.is_zero());
}

TEST_CASE("preset: standard-doubling") {
  auto report = verify_table("standard-doubling");
  CHECK(report.all_pass);
  bool saw_xpi = false, saw_xp = false;
  for (const auto& e : report.entries) {
    if (e.lhs == "[X,pi]") {
      saw_xpi = true;
      CHECK(e.computed == GQ(0));
      CHECK_FALSE(e.matches_eq31);
    }
    if (e.lhs == "[X,P]") {
      saw_xp = true;
      CHECK(e.computed == GQ::i() * GQ::of(1, 2));
      CHECK_FALSE(e.matches_eq31);
    }
  }
  CHECK(saw_xpi);
  CHECK(saw_xp);
}

TEST_CASE("preset: paper-doubling reproduces the bi-algebra table") {
  auto report = verify_table("paper-doubling");
  CHECK(report.all_pass);
  for (const auto& e : report.entries) CHECK(e.matches_eq31);
  // spot values
  for (const auto& e : report.entries) {
    if (e.lhs == "[X,pi]") CHECK(e.computed == GQ::i());
    if (e.lhs == "[eta,P]") CHECK(e.computed == GQ::i());
    if (e.lhs == "[X,P]") CHECK(e.computed == GQ(0));
  }
}

TEST_CASE("preset: time-duron table") {
  auto report = verify_table("time-duron");
  CHECK(report.all_pass);
  CHECK(report.entries.size() == 6);
}

TEST_CASE("preset: classical-poisson-doubling") {
  auto report = verify_table("classical-poisson-doubling");
  CHECK(report.all_pass);
  for (const auto& e : report.entries) {
    if (e.lhs == "{X,dp}") CHECK(e.computed == GQ(1));
    if (e.lhs == "{dx,P}") CHECK(e.computed == GQ(1));
  }
}

TEST_CASE("unknown preset raises") {
  CHECK_THROWS_AS(verify_table("bogus"), PresetError);
}

TEST_CASE("table file round trip") {
  auto alg = ExactAlgebra::make(
      {{"x", GeneratorKind::custom}, {"y", GeneratorKind::custom}, {"z", GeneratorKind::custom}},
      {{"x", "y", GQ(Rational(1, 2), Rational(-3))}, {"y", "z", GQ::i()}});
  const char* path = "ccr_table_roundtrip.txt";
  save_table(*alg, path);
  auto loaded = load_table(path);
  CHECK(loaded->size() == 3);
  CHECK(loaded->bracket(loaded->index("x"), loaded->index("y")) == GQ(Rational(1, 2), Rational(-3)));
  CHECK(loaded->bracket(loaded->index("y"), loaded->index("x")) == -GQ(Rational(1, 2), Rational(-3)));
  CHECK(loaded->bracket(loaded->index("y"), loaded->index("z")) == GQ::i());
  CHECK(loaded->bracket(loaded->index("x"), loaded->index("z")) == GQ(0));
}

TEST_CASE("custom base table drives a doubling preset") {
  // same relations as paper-doubling, loaded from a file
  const char* path = "ccr_paper_base.txt";
  {
    auto alg = ExactAlgebra::make({{"x1", GeneratorKind::position},
                                   {"x2", GeneratorKind::position},
                                   {"p1", GeneratorKind::momentum},
                                   {"p2", GeneratorKind::momentum}},
                                  {{"x1", "p1", GQ::i()}, {"x2", "p2", -GQ::i()}});
    save_table(*alg, path);
  }
  auto base = load_table(path);
  auto report = verify_table_with_base("paper-doubling", base);
  CHECK(report.all_pass);
}

TEST_CASE("float coefficient field") {
  using C = std::complex<double>;
  auto alg = Algebra<C>::make({{"x", GeneratorKind::position}, {"p", GeneratorKind::momentum}},
                              {{"x", "p", C(0, 1)}});
  auto x = NormalPoly<C>::generator(alg, "x");
  auto p = NormalPoly<C>::generator(alg, "p");
  auto comm = commutator(x, p);
  CHECK(comm.is_constant());
  CHECK(comm.constant_value() == C(0, 1));
}
