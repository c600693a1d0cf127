#include "duron/ccr.hpp"

#include <fstream>
#include <sstream>

#include "duron/report.hpp"

namespace duron::ccr {

namespace {

using Rel = ExactAlgebra::Relation;

struct Derived {
  std::string name;
  ExactPoly value;
};

ExactPoly lin(const ExactAlgebraPtr& alg,
              std::initializer_list<std::pair<const char*, GQ>> combo) {
  auto out = ExactPoly::zero(alg);
  for (const auto& [name, coeff] : combo)
    out = out + ExactPoly::generator(alg, name).scaled(coeff);
  return out;
}

struct Claim {
  std::string lhs_name, rhs_name;
  GQ expected;
  GQ eq31_expected;       // what the printed bi-algebra table would demand
  bool has_eq31 = false;
};

TableReport run_claims(const std::string& preset, const ExactAlgebraPtr& alg,
                       const std::vector<Derived>& derived, const std::vector<Claim>& claims) {
  TableReport report;
  report.preset = preset;
  auto find = [&](const std::string& name) -> const ExactPoly& {
    for (const auto& d : derived)
      if (d.name == name) return d.value;
    throw PresetError("unknown derived element: " + name);
  };
  const char lbrace = alg->mode() == BracketMode::poisson ? '{' : '[';
  const char rbrace = alg->mode() == BracketMode::poisson ? '}' : ']';
  for (const auto& claim : claims) {
    ExactPoly value = bracket(find(claim.lhs_name), find(claim.rhs_name));
    if (!value.is_constant())
      throw PresetError("non-central bracket in preset " + preset + ": " + value.to_string());
    TableEntry entry;
    entry.lhs = std::string(1, lbrace) + claim.lhs_name + "," + claim.rhs_name + rbrace;
    entry.expected = claim.expected;
    entry.computed = value.constant_value();
    entry.pass = entry.computed == entry.expected;
    entry.matches_eq31 = !claim.has_eq31 || entry.computed == claim.eq31_expected;
    report.entries.push_back(entry);
    report.all_pass = report.all_pass && entry.pass;
  }
  return report;
}

// Doubled position/momentum context. second_copy_sign = +i gives two standard
// Heisenberg copies; -i the sign-reversed mirror copy.
ExactAlgebraPtr doubling_algebra(const GQ& second_copy_sign) {
  return ExactAlgebra::make(
      {{"x1", GeneratorKind::position},
       {"x2", GeneratorKind::position},
       {"p1", GeneratorKind::momentum},
       {"p2", GeneratorKind::momentum}},
      {Rel{"x1", "p1", GQ::i()}, Rel{"x2", "p2", second_copy_sign}});
}

std::vector<Derived> doubling_derived(const ExactAlgebraPtr& alg) {
  GQ half = GQ::of(1, 2);
  return {
      {"X", lin(alg, {{"x1", half}, {"x2", half}})},
      {"eta", lin(alg, {{"x1", GQ(1)}, {"x2", GQ(-1)}})},
      {"P", lin(alg, {{"p1", half}, {"p2", half}})},
      {"pi", lin(alg, {{"p1", GQ(1)}, {"p2", GQ(-1)}})},
  };
}

// The six pairwise brackets of (X, eta, P, pi) with eq-31 reference values.
std::vector<Claim> doubling_claims(bool standard) {
  GQ i = GQ::i();
  GQ zero(0);
  auto claim = [&](const char* a, const char* b, GQ expected, GQ eq31) {
    Claim c;
    c.lhs_name = a;
    c.rhs_name = b;
    c.expected = expected;
    c.eq31_expected = eq31;
    c.has_eq31 = true;
    return c;
  };
  if (standard) {
    return {claim("X", "pi", zero, i),          claim("eta", "P", zero, i),
            claim("X", "P", i * GQ::of(1, 2), zero), claim("eta", "pi", i * GQ(2), zero),
            claim("X", "eta", zero, zero),      claim("P", "pi", zero, zero)};
  }
  return {claim("X", "pi", i, i),   claim("eta", "P", i, i), claim("X", "P", zero, zero),
          claim("eta", "pi", zero, zero), claim("X", "eta", zero, zero),
          claim("P", "pi", zero, zero)};
}

TableReport standard_doubling() {
  auto alg = doubling_algebra(GQ::i());
  auto report = run_claims("standard-doubling", alg, doubling_derived(alg), doubling_claims(true));
  report.notes.push_back(
      "two standard copies: [X,pi]=0 and [X,P]=i/2, so the printed eq-31 table does not "
      "follow from standard doubling");
  return report;
}

TableReport paper_doubling() {
  auto alg = doubling_algebra(-GQ::i());
  auto report = run_claims("paper-doubling", alg, doubling_derived(alg), doubling_claims(false));
  report.notes.push_back(
      "sign-reversed second copy ([x2,p2]=-i) reproduces the eq-31 table entry-for-entry");
  return report;
}

TableReport time_duron() {
  // Axiomatic eq-36 table on abstract generators.
  GQ i = GQ::i();
  auto alg = ExactAlgebra::make({{"T", GeneratorKind::time},
                                 {"tau", GeneratorKind::time},
                                 {"E", GeneratorKind::frequency_conjugate},
                                 {"eps", GeneratorKind::frequency_conjugate}},
                                {Rel{"T", "eps", i}, Rel{"tau", "E", i}});
  std::vector<Derived> derived = {{"T", ExactPoly::generator(alg, "T")},
                                  {"tau", ExactPoly::generator(alg, "tau")},
                                  {"E", ExactPoly::generator(alg, "E")},
                                  {"eps", ExactPoly::generator(alg, "eps")}};
  GQ zero(0);
  std::vector<Claim> claims = {{"T", "eps", i, GQ(0), false}, {"tau", "E", i, GQ(0), false},
                               {"T", "E", zero, GQ(0), false}, {"tau", "eps", zero, GQ(0), false},
                               {"T", "tau", zero, GQ(0), false}, {"E", "eps", zero, GQ(0), false}};
  auto report = run_claims("time-duron", alg, derived, claims);
  report.notes.push_back("axiomatic duron table; no finite-dimensional numeric realization of "
                         "[T,L]=i exists (trace obstruction), so it is verified symbolically only");
  return report;
}

TableReport classical_poisson_doubling() {
  // Mirror-doubled classical copies {x1,p1}=1, {x2,p2}=-1 plus time/energy
  // pairs with the same sign reversal; bracket mode poisson.
  GQ one(1);
  auto alg = ExactAlgebra::make(
      {{"x1", GeneratorKind::position},
       {"x2", GeneratorKind::position},
       {"p1", GeneratorKind::momentum},
       {"p2", GeneratorKind::momentum},
       {"t1", GeneratorKind::time},
       {"t2", GeneratorKind::time},
       {"e1", GeneratorKind::frequency_conjugate},
       {"e2", GeneratorKind::frequency_conjugate}},
      {Rel{"x1", "p1", one}, Rel{"x2", "p2", -one}, Rel{"t1", "e1", one}, Rel{"t2", "e2", -one}},
      BracketMode::poisson);
  GQ half = GQ::of(1, 2);
  std::vector<Derived> derived = {
      {"X", lin(alg, {{"x1", half}, {"x2", half}})},
      {"dx", lin(alg, {{"x1", one}, {"x2", -one}})},
      {"P", lin(alg, {{"p1", half}, {"p2", half}})},
      {"dp", lin(alg, {{"p1", one}, {"p2", -one}})},
      {"T", lin(alg, {{"t1", half}, {"t2", half}})},
      {"dt", lin(alg, {{"t1", one}, {"t2", -one}})},
      {"Hplus", lin(alg, {{"e1", half}, {"e2", half}})},
      {"Hminus", lin(alg, {{"e1", one}, {"e2", -one}})},
  };
  GQ zero(0);
  std::vector<Claim> claims = {
      {"X", "dp", one, GQ(0), false},    {"dx", "P", one, GQ(0), false},
      {"X", "P", zero, GQ(0), false},    {"dx", "dp", zero, GQ(0), false},
      {"X", "dx", zero, GQ(0), false},   {"P", "dp", zero, GQ(0), false},
      {"T", "Hminus", one, GQ(0), false},{"dt", "Hplus", one, GQ(0), false},
  };
  auto report = run_claims("classical-poisson-doubling", alg, derived, claims);
  report.notes.push_back(
      "difference variables are copy1 minus copy2 and conjugate sums carry the 1/2, matching "
      "the quantum doubling shapes");
  return report;
}

}  // namespace

std::vector<std::string> preset_names() {
  return {"standard-doubling", "paper-doubling", "time-duron", "classical-poisson-doubling"};
}

TableReport verify_table(const std::string& preset) {
  if (preset == "standard-doubling") return standard_doubling();
  if (preset == "paper-doubling") return paper_doubling();
  if (preset == "time-duron") return time_duron();
  if (preset == "classical-poisson-doubling") return classical_poisson_doubling();
  throw PresetError("unknown preset: " + preset);
}

TableReport verify_table_with_base(const std::string& preset, const ExactAlgebraPtr& base) {
  if (preset == "standard-doubling")
    return run_claims(preset, base, doubling_derived(base), doubling_claims(true));
  if (preset == "paper-doubling")
    return run_claims(preset, base, doubling_derived(base), doubling_claims(false));
  throw PresetError("preset does not take a custom base table: " + preset);
}

ExactAlgebraPtr load_table(const std::string& path, BracketMode mode) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open table file: " + path);
  std::vector<Generator> gens;
  std::vector<Rel> rels;
  auto ensure = [&](const std::string& name) {
    for (const auto& g : gens)
      if (g.name == name) return;
    gens.push_back({name, GeneratorKind::custom});
  };
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string g, h, re, im;
    if (!(ls >> g)) continue;  // blank line
    if (!(ls >> h >> re >> im))
      throw Error("table file " + path + ": malformed line " + std::to_string(lineno));
    std::string extra;
    if (ls >> extra)
      throw Error("table file " + path + ": trailing tokens on line " + std::to_string(lineno));
    ensure(g);
    ensure(h);
    rels.push_back(Rel{g, h, parse_gq(re, im)});
  }
  return ExactAlgebra::make(std::move(gens), std::move(rels), mode);
}

void save_table(const ExactAlgebra& alg, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open table file for writing: " + path);
  out << "# gen1 gen2 re im\n";
  for (int i = 0; i < alg.size(); ++i)
    for (int j = i + 1; j < alg.size(); ++j) {
      const GQ& c = alg.bracket(i, j);
      if (c.is_zero()) continue;
      out << alg.generator(i).name << ' ' << alg.generator(j).name << ' ' << to_string(c.re)
          << ' ' << to_string(c.im) << '\n';
    }
}

void write_table_report_json(std::ostream& os, const TableReport& report) {
  report::JsonWriter w(os);
  w.begin_object();
  w.key("preset");
  w.value(report.preset);
  w.key("entries");
  w.begin_array();
  for (const auto& e : report.entries) {
    w.begin_object();
    w.key("lhs");
    w.value(e.lhs);
    w.key("rhs_expected");
    w.value(to_string(e.expected));
    w.key("rhs_computed");
    w.value(to_string(e.computed));
    w.key("pass");
    w.value(e.pass);
    w.key("matches_eq31");
    w.value(e.matches_eq31);
    w.end_object();
  }
  w.end_array();
  w.key("all_pass");
  w.value(report.all_pass);
  w.key("notes");
  w.begin_array();
  for (const auto& n : report.notes) w.value(n);
  w.end_array();
  w.end_object();
  os << '\n';
}

}  // namespace duron::ccr
