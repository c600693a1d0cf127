#include <doctest.h>

#include <cmath>

#include "duron/bilocal_classical.hpp"

using namespace duron;
using namespace duron::bilocal;

namespace {

const Point kGeneric{0.3, 0.1, 0.9, 1.0};  // omega*dt = 0.9, away from caustics

}

TEST_CASE("midpoint coordinate round trip") {
  Point p{0.37, -1.2, 2.81, 0.44};
  auto mid = MidpointCoords::from_endpoints(p);
  auto back = mid.to_endpoints();
  CHECK(std::abs(back.x1 - p.x1) <= 1e-14);
  CHECK(std::abs(back.t1 - p.t1) <= 1e-14);
  CHECK(std::abs(back.x2 - p.x2) <= 1e-14);
  CHECK(std::abs(back.t2 - p.t2) <= 1e-14);
}

TEST_CASE("free particle: endpoint-variation residuals vanish") {
  auto action = free_particle(1.3);
  auto r = hj_residuals(action, kGeneric, {1e-5, false, 1e-6});
  CHECK(r.max() <= 1e-6);
}

TEST_CASE("harmonic oscillator: endpoint-variation residuals vanish") {
  auto action = harmonic_oscillator(1.0, 1.0);
  auto r = hj_residuals(action, kGeneric, {1e-5, false, 1e-6});
  CHECK(r.max() <= 1e-5);
}

TEST_CASE("antisymmetry of momentum residuals at coincident positions") {
  // x1 = x2 in a symmetric potential: p(x1) = -p(x2), so rp1 + rp2 collapses
  auto action = harmonic_oscillator(1.0, 1.0);
  Point p{0.5, 0.0, 0.5, 1.1};
  double p1 = action.p_initial(p), p2 = action.p_final(p);
  CHECK(std::abs(p1 + p2) <= 1e-12);
  auto r = hj_residuals(action, p);
  CHECK(std::abs(r.rp1 + r.rp2) <= 1e-9);
}

TEST_CASE("midpoint identities") {
  FdOptions fd{1e-5, false, 1e-6};

  // free particle: energy conserved on the trajectory so H2 = H1 and rT == 0
  auto fp = free_particle(1.0);
  auto rf = midpoint_identities(fp, kGeneric, fd);
  CHECK(rf.max() <= 1e-6);
  double h1 = fp.H(kGeneric.x1, fp.p_initial(kGeneric));
  double h2 = fp.H(kGeneric.x2, fp.p_final(kGeneric));
  CHECK(std::abs(h2 - h1) <= 1e-12);

  // oscillator: (H1+H2)/2 equals the conserved energy on the trajectory
  auto ho = harmonic_oscillator(1.0, 1.0);
  auto rh = midpoint_identities(ho, kGeneric, fd);
  CHECK(rh.max() <= 1e-5);
  double e1 = ho.H(kGeneric.x1, ho.p_initial(kGeneric));
  double e2 = ho.H(kGeneric.x2, ho.p_final(kGeneric));
  CHECK(std::abs(0.5 * (e1 + e2) - e1) <= 1e-12);

  // dx = 0 with symmetric endpoints: rX = 0 by antisymmetry
  Point sym{0.5, 0.0, 0.5, 1.1};
  auto rs = midpoint_identities(ho, sym, fd);
  CHECK(std::abs(rs.rX) <= 1e-9);
}

TEST_CASE("second-order convergence of the finite differences") {
  auto action = harmonic_oscillator(1.0, 1.0);
  // time-direction residuals carry a genuine h^2 truncation term
  auto at = [&](double h) {
    auto r = hj_residuals(action, kGeneric, {h, false, 1e-6});
    return std::max(std::abs(r.r1), std::abs(r.r2));
  };
  double rh = at(2e-3), rh2 = at(1e-3);
  CHECK(rh > 1e-12);  // not at the rounding floor
  double ratio = rh / rh2;
  CHECK(ratio >= 3.5);
  CHECK(ratio <= 4.5);

  // Richardson extrapolation beats plain central differences
  auto plain = hj_residuals(action, kGeneric, {1e-3, false, 1e-6});
  auto rich = hj_residuals(action, kGeneric, {1e-3, true, 1e-6});
  CHECK(rich.max() < plain.max());
}

TEST_CASE("sign convention flip negates the action and the residual structure") {
  auto paper = harmonic_oscillator(1.0, 1.0, SignConvention::paper);
  auto standard = harmonic_oscillator(1.0, 1.0, SignConvention::standard_mech);
  CHECK(std::abs(paper.S(kGeneric) + standard.S(kGeneric)) <= 1e-12);
  // both conventions satisfy their own residual definitions
  CHECK(hj_residuals(paper, kGeneric).max() <= 1e-5);
  CHECK(hj_residuals(standard, kGeneric).max() <= 1e-5);
}

TEST_CASE("caustic and coincidence guards") {
  auto ho = harmonic_oscillator(1.0, 1.0);
  CHECK_THROWS_AS(hj_residuals(ho, Point{0.0, 0.0, 0.5, M_PI}), SingularityError);
  CHECK_THROWS_AS(hj_residuals(ho, Point{0.0, 0.0, 0.5, 1e-9}), SingularityError);
  auto fp = free_particle(1.0);
  CHECK_THROWS_AS(hj_residuals(fp, Point{0.0, 1.0, 0.5, 1.0}), SingularityError);
}

TEST_CASE("legendre transform: stationary free-particle family") {
  // K = P^2/2m is constant along the flow of H = p^2/2m: residual identically 0
  auto K = [](double, double P, double) { return P * P / 2.0; };
  auto H = [](double, double p) { return p * p / 2.0; };
  auto res = liouville_limit_check(K, H, {});
  CHECK(res.max_residual == 0.0);
  CHECK_FALSE(res.accuracy_warning);
  GridSpec coarse;
  coarse.step = 0.2;
  CHECK(liouville_limit_check(K, H, coarse).accuracy_warning);
}

TEST_CASE("legendre transform: oscillator family transported along the flow") {
  // K0 pulled back through the rotation flow solves the transport equation
  auto K = [](double X, double P, double T) {
    double c = std::cos(T), s = std::sin(T);
    double x0 = X * c - P * s;  // flow_{-T}(X, P), m = omega = 1
    double p0 = P * c + X * s;
    return x0 * x0 * p0 + 0.5 * p0 * p0 * p0;
  };
  auto H = [](double x, double p) { return 0.5 * (p * p + x * x); };
  auto res = liouville_limit_check(K, H, {});
  CHECK(res.max_residual <= 1e-4);
}

TEST_CASE("energy limit: dS/dDt approaches E at small dt") {
  // oscillator trajectory x(t) = sin t has E = 1/2 (m = omega = 1)
  auto ho = harmonic_oscillator(1.0, 1.0);
  auto traj = [](double t) { return std::sin(t); };
  double dev = energy_limit_residual(ho, traj, 0.4, 0.01, 0.5, {1e-5, false, 1e-6});
  CHECK(dev <= 1e-3);
}

TEST_CASE("legendre value against the direct definition") {
  auto fp = free_particle(2.0);
  // free trajectory through both endpoints: v = dx/dt, E = m v^2 / 2
  double v = (kGeneric.x2 - kGeneric.x1) / (kGeneric.t2 - kGeneric.t1);
  double E = 0.5 * 2.0 * v * v;
  double P = -2.0 * v;  // -(p1+p2)/2 with equal momenta
  auto mid = MidpointCoords::from_endpoints(kGeneric);
  double expected = P * mid.dx + E * mid.dt - fp.S(kGeneric);
  CHECK(std::abs(legendre_K(fp, kGeneric) - expected) <= 1e-12);
}

TEST_CASE("composition of actions through a stationary intermediate point") {
  auto fp = free_particle(1.0);
  CHECK(composition_defect(fp, 0.1, 0.0, 1.1, 1.0, 0.4) <= 1e-6);
  auto ho = harmonic_oscillator(1.0, 1.0);
  CHECK(composition_defect(ho, 0.1, 0.0, 0.9, 1.4, 0.5) <= 1e-6);
}
