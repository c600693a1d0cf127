#include "duron/superops.hpp"

#include <algorithm>
#include <vector>

namespace duron::superops {

using fock::Matrix;
using fock::TruncatedOperator;
using fock::Vector;

Vector vectorize(const Matrix& rho) {
  Vector v(rho.rows() * rho.cols());
  for (Eigen::Index i = 0; i < rho.rows(); ++i)
    for (Eigen::Index j = 0; j < rho.cols(); ++j) v(i * rho.cols() + j) = rho(i, j);
  return v;
}

Matrix devectorize(const Vector& v, int n) {
  if (v.size() != static_cast<Eigen::Index>(n) * n)
    throw DimensionError("vectorized density has the wrong length");
  Matrix rho(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) rho(i, j) = v(i * n + j);
  return rho;
}

namespace {

void require_hermitian(const TruncatedOperator& h) {
  if (h.space != fock::Space::single)
    throw DimensionError("super-operators are built from single-space Hamiltonians");
  if (h.hermiticity_defect() > 1e-10)
    throw ValidationError("super-operator construction requires a Hermitian Hamiltonian");
}

}  // namespace

TruncatedOperator liouvillian(const TruncatedOperator& h) {
  require_hermitian(h);
  TruncatedOperator ht{h.mat.transpose(), h.cutoff, h.space};
  return fock::lift_left(h) - fock::tensor(fock::identity(h.cutoff), ht);
}

TruncatedOperator energy_superop(const TruncatedOperator& h) {
  require_hermitian(h);
  TruncatedOperator ht{h.mat.transpose(), h.cutoff, h.space};
  return fock::lift_left(h) + fock::tensor(fock::identity(h.cutoff), ht);
}

SpectraCheck spectra_check(const fock::TruncatedOperator& h) {
  require_hermitian(h);
  Eigen::SelfAdjointEigenSolver<Matrix> es(h.mat);
  Eigen::VectorXd e = es.eigenvalues();
  const int n = static_cast<int>(e.size());

  auto sorted_spectrum = [](const TruncatedOperator& op) {
    Eigen::SelfAdjointEigenSolver<Matrix> s(op.mat);
    std::vector<double> v(s.eigenvalues().data(), s.eigenvalues().data() + s.eigenvalues().size());
    std::sort(v.begin(), v.end());
    return v;
  };

  std::vector<double> diff, sum;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      diff.push_back(e(i) - e(j));
      sum.push_back(e(i) + e(j));
    }
  std::sort(diff.begin(), diff.end());
  std::sort(sum.begin(), sum.end());

  SpectraCheck out;
  auto l = sorted_spectrum(liouvillian(h));
  auto s = sorted_spectrum(energy_superop(h));
  for (std::size_t k = 0; k < diff.size(); ++k) {
    out.liouvillian_deviation = std::max(out.liouvillian_deviation, std::abs(l[k] - diff[k]));
    out.energy_deviation = std::max(out.energy_deviation, std::abs(s[k] - sum[k]));
  }
  return out;
}

AgeDuronReport age_duron_symbolic() {
  AgeDuronReport report;
  report.axiomatic = ccr::verify_table("time-duron");

  // Derivation: doubled time/energy copies with [t1,e1] = i, [t2,e2] = -i;
  // T = t1+t2 and tau = t1-t2 stay unhalved (co-product form), the conjugate
  // energies carry the 1/2.
  using Alg = ccr::ExactAlgebra;
  using Poly = ccr::ExactPoly;
  auto alg = Alg::make({{"t1", ccr::GeneratorKind::time},
                        {"t2", ccr::GeneratorKind::time},
                        {"e1", ccr::GeneratorKind::frequency_conjugate},
                        {"e2", ccr::GeneratorKind::frequency_conjugate}},
                       {{"t1", "e1", GQ::i()}, {"t2", "e2", -GQ::i()}});
  auto g = [&](const char* name) { return Poly::generator(alg, name); };
  GQ half = GQ::of(1, 2);
  Poly T = g("t1") + g("t2");
  Poly tau = g("t1") - g("t2");
  Poly E = (g("e1") + g("e2")).scaled(half);
  Poly eps = (g("e1") - g("e2")).scaled(half);

  struct Pair {
    const char* name;
    Poly lhs, rhs;
    GQ expected;
  };
  std::vector<Pair> pairs = {{"[T,eps]", T, eps, GQ::i()},   {"[tau,E]", tau, E, GQ::i()},
                             {"[T,E]", T, E, GQ(0)},         {"[tau,eps]", tau, eps, GQ(0)},
                             {"[T,tau]", T, tau, GQ(0)},     {"[E,eps]", E, eps, GQ(0)}};
  report.derived.preset = "time-duron-derived";
  report.consistent = true;
  for (const auto& pr : pairs) {
    auto value = ccr::commutator(pr.lhs, pr.rhs);
    ccr::TableEntry entry;
    entry.lhs = pr.name;
    entry.expected = pr.expected;
    entry.computed = value.is_constant() ? value.constant_value() : GQ(0);
    entry.pass = value.is_constant() && entry.computed == pr.expected;
    report.derived.entries.push_back(entry);
    report.derived.all_pass = report.derived.all_pass && entry.pass;
    report.consistent = report.consistent && entry.pass;
  }
  report.consistent = report.consistent && report.axiomatic.all_pass;
  report.obstruction_note =
      "no finite-dimensional numeric pair satisfies [T,L] = i (the trace of a commutator "
      "vanishes while tr(i*1) does not); the age/duron relations are symbolic only";
  return report;
}

}  // namespace duron::superops
