#include <doctest.h>

#include <cmath>

#include "duron/bilocal_quantum.hpp"
#include "duron/rng.hpp"
#include "duron/superops.hpp"

using namespace duron;
using namespace duron::bilocal_q;
using namespace duron::fock;

namespace {

TruncatedOperator random_hermitian(int n, SplitMix64& rng) {
  Matrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = Complex(rng.uniform(-0.5, 0.5), rng.uniform(-0.5, 0.5));
  return from_matrix((0.5 * (m + m.adjoint())).eval(), n, Space::single);
}

StateVector random_state(int n, SplitMix64& rng) {
  Vector v(n);
  for (int i = 0; i < n; ++i) v(i) = Complex(rng.uniform(-1, 1), rng.uniform(-1, 1));
  v /= v.norm();
  return StateVector::wrap(std::move(v), n, Space::single);
}

StateVector plus_state(int n) {
  Vector v = Vector::Zero(n);
  v(0) = v(1) = 1.0 / std::sqrt(2.0);
  return StateVector::wrap(std::move(v), n, Space::single);
}

}  // namespace

TEST_CASE("bilocal density: projector, phase factorization, trace, purity") {
  const int n = 8;
  auto h = oscillator_hamiltonian(n, 1.0);

  // coincidence at t = 0: a projector
  auto rho0 = bilocal(plus_state(n), h, 0.0, 0.0);
  CHECK(max_abs(rho0.matrix * rho0.matrix - rho0.matrix) <= 1e-12);
  CHECK(std::abs(rho0.matrix.trace() - Complex(1.0)) <= 1e-10);

  // eigenstate: rho(t1,t2) = exp(-i E_n (t1-t2)) |n><n|
  auto eig = basis_state(n, 2);
  auto rho = bilocal(eig, h, 0.7, 0.2);
  Complex phase = std::polar(1.0, -2.5 * (0.7 - 0.2));
  Matrix expected = phase * (eig.amps * eig.amps.adjoint());
  CHECK(max_abs(rho.matrix - expected) <= 1e-12);

  // two-level superposition: off-diagonal element is a product of phases
  auto rho2 = bilocal(plus_state(n), h, 0.4, 0.9);
  Complex want = 0.5 * std::polar(1.0, -0.5 * 0.4) * std::polar(1.0, +1.5 * 0.9);
  CHECK(std::abs(rho2.matrix(0, 1) - want) <= 1e-12);

  // trace and purity conserved at coincidence for generic states and times
  SplitMix64 rng(3);
  auto hr = random_hermitian(n, rng);
  auto psi = random_state(n, rng);
  for (double t : {0.0, 0.8, 2.3}) {
    auto r = bilocal(psi, hr, t, t);
    CHECK(std::abs(r.matrix.trace() - Complex(1.0)) <= 1e-10);
    CHECK(std::abs((r.matrix * r.matrix).trace() - Complex(1.0)) <= 1e-10);
    CHECK(max_abs(r.matrix - r.matrix.adjoint()) <= 1e-14);
  }
}

TEST_CASE("commutator/anticommutator decomposition is exact") {
  const int n = 6;
  SplitMix64 rng(17);
  auto h = random_hermitian(n, rng);
  auto psi = random_state(n, rng);
  auto rho = bilocal(psi, h, 0.5, 0.5).matrix;
  Matrix comm = rho * h.mat - h.mat * rho;
  Matrix anti = rho * h.mat + h.mat * rho;
  // identical up to one rounding step in the half-sum
  CHECK(max_abs(rho * h.mat - 0.5 * (comm + anti)) <= 1e-15);
}

TEST_CASE("liouville residual: stationary, convergence, random systems") {
  const int n = 8;
  auto h = oscillator_hamiltonian(n, 1.0);

  // eigenstates are stationary
  CHECK(liouville_residual(basis_state(n, 3), h, 0.6, 1e-3) <= 1e-12);

  // superposition: second-order convergence
  double r1 = liouville_residual(plus_state(n), h, 0.6, 1e-2);
  double r2 = liouville_residual(plus_state(n), h, 0.6, 5e-3);
  CHECK(r1 > 1e-12);
  CHECK(r1 / r2 >= 3.5);
  CHECK(r1 / r2 <= 4.5);

  // seeded random 8-level systems at h = 1e-4
  SplitMix64 rng = SplitMix64::stream(7, "liouville");
  for (int trial = 0; trial < 5; ++trial) {
    auto hr = random_hermitian(n, rng);
    auto psi = random_state(n, rng);
    CHECK(liouville_residual(psi, hr, 0.4, 1e-4) <= 1e-6);
  }
}

TEST_CASE("bilocal T-derivative keeps the commutator ordering away from coincidence") {
  const int n = 6;
  SplitMix64 rng(23);
  auto h = random_hermitian(n, rng);
  auto psi = random_state(n, rng);
  CHECK(bilocal_t_residual(psi, h, 0.3, 0.9, 1e-4) <= 1e-6);
}

TEST_CASE("energy anticommutator") {
  const int n = 8;
  auto h = oscillator_hamiltonian(n, 1.0);

  // eigenstate: [rho,H]_+ = 2 E_n rho exactly
  auto eig = basis_state(n, 4);
  auto ea = energy_anticommutator(eig, h, 0.3);
  Matrix rho = bilocal(eig, h, 0.3, 0.3).matrix;
  CHECK(max_abs(ea.op - 2.0 * 4.5 * rho) <= 1e-12);

  // equal superposition of E0 = 1/2 and E1 = 3/2: scalar = 1
  auto ep = energy_anticommutator(plus_state(n), h, 0.0);
  CHECK(std::abs(ep.half_trace - Complex(1.0)) <= 1e-12);

  // trace relation on random states; dt-form residual is O(h^2)
  SplitMix64 rng = SplitMix64::stream(70, "energy");
  for (int trial = 0; trial < 10; ++trial) {
    auto hr = random_hermitian(n, rng);
    auto psi = random_state(n, rng);
    auto e = energy_anticommutator(psi, hr, 0.2);
    CHECK(std::abs(e.half_trace - expectation(psi, hr) * Complex(1.0)) <= 1e-12);
    CHECK(e.dt_form_residual <= 1e-6);
  }

  // convergence of the dt form
  auto c1 = energy_anticommutator(plus_state(n), h, 0.5, 1e-2).dt_form_residual;
  auto c2 = energy_anticommutator(plus_state(n), h, 0.5, 5e-3).dt_form_residual;
  CHECK(c1 / c2 >= 3.5);
  CHECK(c1 / c2 <= 4.5);
}

TEST_CASE("grid evolution reproduces the trap ground state") {
  Grid1D trap(-8.0, 8.0, 400, 1.0, [](double x) { return 0.5 * x * x; });
  CHECK(std::abs(trap.ground_energy() - 0.5) <= 1e-3);
  Vector g = trap.ground_state();
  // stationary up to phase
  Vector gt = trap.evolve(g, 1.3);
  Complex overlap = (g.adjoint() * gt)(0) * trap.dx();
  CHECK(std::abs(std::abs(overlap) - 1.0) <= 1e-12);
}

TEST_CASE("polar decomposition: reconstruction and unwrapped continuity") {
  Grid1D trap(-8.0, 8.0, 600, 1.0, [](double x) { return 0.5 * x * x; });
  Vector psi = trap.gaussian(1.0, 1.0, 3.0);  // fast phase: multiple wraps across the grid
  auto polar = polar_decompose(psi, trap.xs());
  for (Eigen::Index i = 0; i < psi.size(); ++i) {
    if (polar.mask[static_cast<std::size_t>(i)]) continue;
    Complex rebuilt = polar.R(i) * std::polar(1.0, polar.S(i));
    CHECK(std::abs(rebuilt - psi(i)) <= 1e-10);
  }
  // no jump above pi between adjacent unmasked points
  for (Eigen::Index i = 1; i < psi.size(); ++i) {
    if (polar.mask[static_cast<std::size_t>(i)] || polar.mask[static_cast<std::size_t>(i - 1)])
      continue;
    CHECK(std::abs(polar.S(i) - polar.S(i - 1)) < M_PI);
  }
}

TEST_CASE("node masking flags node-dominated grids") {
  Grid1D trap(-8.0, 8.0, 200, 1.0, [](double x) { return 0.5 * x * x; });
  // a state with a hard node at the origin
  Vector psi(trap.size());
  for (Eigen::Index i = 0; i < trap.size(); ++i)
    psi(i) = trap.xs()(i) * std::exp(-0.5 * trap.xs()(i) * trap.xs()(i));
  auto polar = polar_decompose(psi, trap.xs(), 1e-2);
  CHECK(polar.node_warning);  // the floor masks the node and the far tails
}

TEST_CASE("stationary gaussian: flat phase and machine-level residual") {
  // domain sized so the 1e-6 amplitude floor masks well under 20% of points
  Grid1D trap(-6.0, 6.0, 800, 1.0, [](double x) { return 0.5 * x * x; });
  Vector g = trap.ground_state();
  double dt = 1e-3;
  Vector prev = trap.evolve(g, 0.5 - dt), cur = trap.evolve(g, 0.5), next = trap.evolve(g, 0.5 + dt);
  auto res = quantum_hj_residual(trap, prev, cur, next, dt);
  // discrete eigenpair: V + Q = E0 exactly, dS/dt = -E0 up to O(dt^2)
  CHECK(res.weighted_rms <= 1e-6);
  CHECK_FALSE(res.node_warning);
}

TEST_CASE("coherent state oracle satisfies the projected phase equation") {
  Grid1D trap(-6.0, 6.0, 1199, 1.0, [](double x) { return 0.5 * x * x; });
  // dx = 12/1200 = 0.01 exactly
  CHECK(std::abs(trap.dx() - 0.01) <= 1e-15);
  double t = 0.4, dt = 1e-4;
  Vector prev = coherent_state(trap.xs(), 1.0, 0.0, t - dt);
  Vector cur = coherent_state(trap.xs(), 1.0, 0.0, t);
  Vector next = coherent_state(trap.xs(), 1.0, 0.0, t + dt);
  auto res = quantum_hj_residual(trap, prev, cur, next, dt);
  CHECK(res.weighted_rms <= 1e-4);
  CHECK(res.anticomm_diag_residual <= 1e-3);
}

TEST_CASE("free spreading gaussian: second-order convergence in (dx, dt)") {
  auto run = [](int points, double dt) {
    Grid1D box(-8.0, 8.0, points, 1.0, [](double) { return 0.0; });
    Vector psi0 = box.gaussian(0.0, 1.0, 1.0);
    double t = 0.3;
    Vector prev = box.evolve(psi0, t - dt), cur = box.evolve(psi0, t), next = box.evolve(psi0, t + dt);
    return quantum_hj_residual(box, prev, cur, next, dt).weighted_rms;
  };
  double coarse = run(399, 2e-3);   // dx = 0.04
  double fine = run(799, 1e-3);     // dx = 0.02
  CHECK(coarse > 1e-9);
  double ratio = coarse / fine;
  CHECK(ratio >= 3.0);
  CHECK(ratio <= 5.0);
}

TEST_CASE("cross-check with the vectorized liouvillian") {
  const int n = 8;
  SplitMix64 rng = SplitMix64::stream(7, "liouville");  // same stream as the residual test
  auto h = random_hermitian(n, rng);
  auto psi = random_state(n, rng);
  double t = 0.4, step = 1e-3;

  double matrix_form = liouville_residual(psi, h, t, step);

  // i d vec(rho)/dt + L vec(rho), same finite difference
  auto L = superops::liouvillian(h);
  Evolver ev(h);
  auto vec_at = [&](double s) {
    Vector v = ev.evolve(psi, s).amps;
    return superops::vectorize((v * v.adjoint()).eval());
  };
  Vector dvec = (vec_at(t + 0.5 * step) - vec_at(t - 0.5 * step)) / step;
  Vector resid = Complex(0, 1) * dvec - L.mat * vec_at(t);
  // i drho/dt + rho H - H rho = i drho/dt - (H rho - rho H) = i drho/dt - L rho
  double vec_form = resid.cwiseAbs().maxCoeff();
  CHECK(std::abs(vec_form - matrix_form) <= 1e-9);
}
