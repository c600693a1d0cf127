#ifndef DURON_BILOCAL_CLASSICAL_HPP
#define DURON_BILOCAL_CLASSICAL_HPP

#include <functional>

#include "duron/errors.hpp"

namespace duron::bilocal {

// paper: S = -S_std, so dS/dt1 = -H1 and dS/dt2 = +H2 hold as printed.
// standard_mech: the Hamilton principal function with the textbook signs.
enum class SignConvention { paper, standard_mech };

struct Point {
  double x1, t1, x2, t2;
};

struct MidpointCoords {
  double X, dx, T, dt;
  static MidpointCoords from_endpoints(const Point& p) {
    return {0.5 * (p.x1 + p.x2), p.x2 - p.x1, 0.5 * (p.t1 + p.t2), p.t2 - p.t1};
  }
  Point to_endpoints() const {
    return {X - 0.5 * dx, T - 0.5 * dt, X + 0.5 * dx, T + 0.5 * dt};
  }
};

// Two-point action with its Hamiltonian and the endpoint momenta of the
// trajectory the action encodes.
struct TwoPointAction {
  std::function<double(const Point&)> S;
  std::function<double(double x, double p)> H;
  std::function<double(const Point&)> p_initial;  // p(x1) on the trajectory
  std::function<double(const Point&)> p_final;    // p(x2)
  std::function<void(const Point&)> guard;        // throws SingularityError when invalid
  SignConvention convention = SignConvention::paper;
  double mass = 1.0;
  double omega = 0.0;  // zero for the free particle
};

// Built-in closed-form actions. The harmonic action rejects points within
// 1e-3 of a caustic (omega*dt = k*pi).
TwoPointAction free_particle(double mass, SignConvention conv = SignConvention::paper);
TwoPointAction harmonic_oscillator(double mass, double omega,
                                   SignConvention conv = SignConvention::paper);

struct FdOptions {
  double h = 1e-5;
  bool richardson = false;
  double coincidence_guard = 1e-6;  // minimum |dt|
};

// Endpoint-variation residuals. In the paper convention:
//   r1  = dS/dt1 + H1, r2  = dS/dt2 - H2,
//   rp1 = dS/dx1 - p(x1), rp2 = dS/dx2 + p(x2);
// the standard convention flips each H/p sign.
struct HJResiduals {
  double r1, r2, rp1, rp2;
  double max() const;
};
HJResiduals hj_residuals(const TwoPointAction& action, const Point& p, const FdOptions& fd = {});

// Midpoint/difference identities with the module's sign conventions:
//   rT  = dS/dT  - (H2 - H1),    rDt = dS/dDt - (H2 + H1)/2,
//   rX  = dS/dX  - (p1 - p2),    rDx = dS/dDx + (p1 + p2)/2.
struct MidpointResiduals {
  double rT, rDt, rX, rDx;
  double max() const;
};
MidpointResiduals midpoint_identities(const TwoPointAction& action, const Point& p,
                                      const FdOptions& fd = {});

// K = P dx + E dt - S with P = -(p1+p2)/2 and E = (H1+H2)/2.
double legendre_K(const TwoPointAction& action, const Point& p);

// |dS/dDt - E| at the given midpoint separation, endpoints taken on the
// trajectory x(t) supplied by the caller.
double energy_limit_residual(const TwoPointAction& action,
                             const std::function<double(double)>& trajectory, double T, double dt,
                             double energy, const FdOptions& fd = {});

struct GridSpec {
  double x_lo = -1.0, x_hi = 1.0;
  double p_lo = -1.0, p_hi = 1.0;
  int points = 9;       // per axis
  double t = 0.3;       // slice where the flow residual is evaluated
  double step = 1e-3;   // finite-difference step in (X, P, T)
};

// max over the grid of |dK/dT + {K, H}| with the canonical Poisson bracket
// evaluated by central differences. Warns (via the flag) when the requested
// derivative step is too coarse.
struct FlowResidual {
  double max_residual = 0.0;
  bool accuracy_warning = false;
};
FlowResidual liouville_limit_check(const std::function<double(double X, double P, double T)>& K,
                                   const std::function<double(double, double)>& H,
                                   const GridSpec& grid);

// Direct action S(1->3) against extremizing S(1->2)+S(2->3) over the
// intermediate position at fixed t2.
double composition_defect(const TwoPointAction& action, double x1, double t1, double x3, double t3,
                          double t2);

}  // namespace duron::bilocal

#endif
