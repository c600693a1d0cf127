#include <doctest.h>

#include <cmath>

#include "duron/fock.hpp"
#include "duron/rng.hpp"
#include "duron/superops.hpp"

using namespace duron;
using namespace duron::fock;
using namespace duron::superops;

namespace {

TruncatedOperator random_hermitian(int n, SplitMix64& rng) {
  Matrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = Complex(rng.uniform(-0.5, 0.5), rng.uniform(-0.5, 0.5));
  return from_matrix((0.5 * (m + m.adjoint())).eval(), n, Space::single);
}

Matrix random_density(int n, SplitMix64& rng) {
  Matrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = Complex(rng.uniform(-1, 1), rng.uniform(-1, 1));
  Matrix rho = m * m.adjoint();
  return rho / rho.trace();
}

}  // namespace

TEST_CASE("vectorize and devectorize invert each other") {
  SplitMix64 rng(42);
  Matrix rho = random_density(5, rng);
  CHECK(max_abs(devectorize(vectorize(rho), 5) - rho) == 0.0);

  // hermitian rho: index-swap conjugation symmetry of the vectorized form
  Vector v = vectorize(rho);
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j)
      CHECK(std::abs(v(i * 5 + j) - std::conj(v(j * 5 + i))) <= 1e-14);

  CHECK_THROWS_AS(devectorize(Vector::Zero(7), 3), DimensionError);
}

TEST_CASE("liouvillian acts as the commutator for every rho") {
  SplitMix64 rng = SplitMix64::stream(7, "superops");
  for (int trial = 0; trial < 10; ++trial) {
    int n = static_cast<int>(rng.uniform_int(2, 8));
    auto h = random_hermitian(n, rng);
    auto L = liouvillian(h);
    Matrix rho = random_density(n, rng);
    Vector lhs = L.mat * vectorize(rho);
    Vector rhs = vectorize((h.mat * rho - rho * h.mat).eval());
    CHECK((lhs - rhs).cwiseAbs().maxCoeff() <= 1e-12);
  }
}

TEST_CASE("diagonal H gives a diagonal liouvillian with entries E_i - E_j") {
  const int n = 4;
  auto h = oscillator_hamiltonian(n, 2.0);
  auto L = liouvillian(h);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Complex d = L.mat(i * n + j, i * n + j);
      CHECK(std::abs(d - Complex(2.0 * (i - j))) <= 1e-13);
    }
  // off-diagonals vanish
  Matrix offdiag = L.mat;
  offdiag.diagonal().setZero();
  CHECK(max_abs(offdiag) == 0.0);
}

TEST_CASE("energy superop: eigenprojectors, trace functional, L+E identity") {
  const int n = 6;
  SplitMix64 rng(99);
  auto h = random_hermitian(n, rng);
  auto E = energy_superop(h);

  Eigen::SelfAdjointEigenSolver<Matrix> es(h.mat);
  for (int k = 0; k < n; ++k) {
    Vector v = es.eigenvectors().col(k);
    Matrix proj = v * v.adjoint();
    Vector out = E.mat * vectorize(proj);
    CHECK((out - 2.0 * es.eigenvalues()(k) * vectorize(proj)).cwiseAbs().maxCoeff() <= 1e-12);
  }

  // <vec(I), E vec(rho)>/2 = <H>
  Matrix rho = random_density(n, rng);
  Vector vid = vectorize(Matrix::Identity(n, n));
  Complex tr = vid.dot(E.mat * vectorize(rho)) * 0.5;
  CHECK(std::abs(tr - (h.mat * rho).trace()) <= 1e-12);

  // E + L = 2 (H (x) 1); the transposed slots cancel
  auto L = liouvillian(h);
  CHECK(max_abs((E + L).mat - 2.0 * lift_left(h).mat) <= 1e-13);

  // real-symmetric H: transpose is invisible, E - L = 2 (1 (x) H)
  Matrix hr = Matrix::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) hr(i, j) = hr(j, i) = rng.uniform(-1, 1);
  auto hsym = from_matrix(hr, n, Space::single);
  CHECK(max_abs((energy_superop(hsym) - liouvillian(hsym)).mat -
                2.0 * lift_right(hsym).mat) <= 1e-13);
}

TEST_CASE("spectra: {E_i - E_j} and {E_i + E_j}") {
  SplitMix64 rng = SplitMix64::stream(11, "superops-spectra");
  for (int trial = 0; trial < 8; ++trial) {
    int n = static_cast<int>(rng.uniform_int(2, 8));
    auto h = random_hermitian(n, rng);
    auto check = spectra_check(h);
    CHECK(check.liouvillian_deviation <= 1e-9);
    CHECK(check.energy_deviation <= 1e-9);
  }
}

TEST_CASE("vec evolution matches two-sided evolution") {
  SplitMix64 rng(123);
  const int n = 4;
  auto h = random_hermitian(n, rng);
  auto L = liouvillian(h);
  Matrix rho0 = random_density(n, rng);
  double t = 1.3;

  Vector vec_t = expm(Complex(0, -t) * L).mat * vectorize(rho0);
  Matrix u = expm(Complex(0, -t) * h).mat;
  Matrix rho_t = u * rho0 * u.adjoint();
  CHECK((vec_t - vectorize(rho_t)).cwiseAbs().maxCoeff() <= 1e-9);

  // Hilbert-Schmidt norm is preserved
  CHECK(std::abs(vec_t.norm() - vectorize(rho0).norm()) <= 1e-10);
}

TEST_CASE("non-Hermitian input is rejected") {
  Matrix bad = Matrix::Zero(3, 3);
  bad(0, 1) = 1.0;
  CHECK_THROWS_AS(liouvillian(from_matrix(bad, 3, Space::single)), ValidationError);
  CHECK_THROWS_AS(energy_superop(from_matrix(bad, 3, Space::single)), ValidationError);
}

TEST_CASE("age and duron relations, symbolic") {
  auto report = age_duron_symbolic();
  CHECK(report.axiomatic.all_pass);
  CHECK(report.derived.all_pass);
  CHECK(report.consistent);
  CHECK(report.obstruction_note.find("trace") != std::string::npos);

  // spot entries: [T,E] = 0, [T,tau] = 0, [tau,E] = i
  for (const auto& e : report.axiomatic.entries) {
    if (e.lhs == "[T,E]") CHECK(e.computed == GQ(0));
    if (e.lhs == "[T,tau]") CHECK(e.computed == GQ(0));
    if (e.lhs == "[tau,E]") CHECK(e.computed == GQ::i());
  }
}
