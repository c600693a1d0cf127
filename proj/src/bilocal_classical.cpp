#include "duron/bilocal_classical.hpp"

#include <algorithm>
#include <cmath>

namespace duron::bilocal {

namespace {

double central(const std::function<double(double)>& f, double at, double h, bool richardson) {
  auto d = [&](double step) { return (f(at + step) - f(at - step)) / (2.0 * step); };
  if (!richardson) return d(h);
  double dh = d(h), dh2 = d(0.5 * h);
  return (4.0 * dh2 - dh) / 3.0;  // cancels the h^2 error term
}

double sign_of(SignConvention c) { return c == SignConvention::paper ? 1.0 : -1.0; }

}  // namespace

double HJResiduals::max() const {
  return std::max(std::max(std::abs(r1), std::abs(r2)), std::max(std::abs(rp1), std::abs(rp2)));
}

double MidpointResiduals::max() const {
  return std::max(std::max(std::abs(rT), std::abs(rDt)), std::max(std::abs(rX), std::abs(rDx)));
}

TwoPointAction free_particle(double mass, SignConvention conv) {
  TwoPointAction a;
  a.convention = conv;
  a.mass = mass;
  a.omega = 0.0;
  double s = sign_of(conv);
  a.S = [mass, s](const Point& p) {
    double dx = p.x2 - p.x1, dt = p.t2 - p.t1;
    return -s * mass * dx * dx / (2.0 * dt);
  };
  a.H = [mass](double, double p) { return p * p / (2.0 * mass); };
  a.p_initial = [mass](const Point& p) { return mass * (p.x2 - p.x1) / (p.t2 - p.t1); };
  a.p_final = a.p_initial;  // free momentum is constant along the trajectory
  a.guard = [](const Point& p) {
    if (std::abs(p.t2 - p.t1) < 1e-6)
      throw SingularityError("two-point action is singular at coincident times");
  };
  return a;
}

TwoPointAction harmonic_oscillator(double mass, double omega, SignConvention conv) {
  TwoPointAction a;
  a.convention = conv;
  a.mass = mass;
  a.omega = omega;
  double s = sign_of(conv);
  a.S = [mass, omega, s](const Point& p) {
    double wdt = omega * (p.t2 - p.t1);
    return -s * mass * omega / (2.0 * std::sin(wdt)) *
           ((p.x1 * p.x1 + p.x2 * p.x2) * std::cos(wdt) - 2.0 * p.x1 * p.x2);
  };
  a.H = [mass, omega](double x, double p) {
    return p * p / (2.0 * mass) + 0.5 * mass * omega * omega * x * x;
  };
  a.p_initial = [mass, omega](const Point& p) {
    double wdt = omega * (p.t2 - p.t1);
    return mass * omega * (p.x2 - p.x1 * std::cos(wdt)) / std::sin(wdt);
  };
  a.p_final = [mass, omega](const Point& p) {
    double wdt = omega * (p.t2 - p.t1);
    return mass * omega * (p.x2 * std::cos(wdt) - p.x1) / std::sin(wdt);
  };
  a.guard = [omega](const Point& p) {
    double dt = p.t2 - p.t1;
    if (std::abs(dt) < 1e-6)
      throw SingularityError("two-point action is singular at coincident times");
    double wdt = omega * dt;
    double frac = std::abs(wdt / M_PI - std::round(wdt / M_PI));
    if (frac * M_PI < 1e-3)
      throw SingularityError("harmonic action rejected near a caustic (omega*dt = k*pi)");
  };
  return a;
}

HJResiduals hj_residuals(const TwoPointAction& action, const Point& p, const FdOptions& fd) {
  action.guard(p);
  if (std::abs(p.t2 - p.t1) < fd.coincidence_guard)
    throw SingularityError("dt below the coincidence guard");

  double dS_t1 = central([&](double t) { return action.S({p.x1, t, p.x2, p.t2}); }, p.t1, fd.h,
                         fd.richardson);
  double dS_t2 = central([&](double t) { return action.S({p.x1, p.t1, p.x2, t}); }, p.t2, fd.h,
                         fd.richardson);
  double dS_x1 = central([&](double x) { return action.S({x, p.t1, p.x2, p.t2}); }, p.x1, fd.h,
                         fd.richardson);
  double dS_x2 = central([&](double x) { return action.S({p.x1, p.t1, x, p.t2}); }, p.x2, fd.h,
                         fd.richardson);

  double p1 = action.p_initial(p), p2 = action.p_final(p);
  double h1 = action.H(p.x1, p1), h2 = action.H(p.x2, p2);

  double s = sign_of(action.convention);
  HJResiduals r;
  r.r1 = dS_t1 + s * h1;
  r.r2 = dS_t2 - s * h2;
  r.rp1 = dS_x1 - s * p1;
  r.rp2 = dS_x2 + s * p2;
  return r;
}

MidpointResiduals midpoint_identities(const TwoPointAction& action, const Point& p,
                                      const FdOptions& fd) {
  action.guard(p);
  if (std::abs(p.t2 - p.t1) < fd.coincidence_guard)
    throw SingularityError("dt below the coincidence guard");

  MidpointCoords mid = MidpointCoords::from_endpoints(p);
  auto S_mid = [&](double X, double dx, double T, double dt) {
    MidpointCoords c{X, dx, T, dt};
    return action.S(c.to_endpoints());
  };
  double dS_T = central([&](double T) { return S_mid(mid.X, mid.dx, T, mid.dt); }, mid.T, fd.h,
                        fd.richardson);
  double dS_dt = central([&](double dt) { return S_mid(mid.X, mid.dx, mid.T, dt); }, mid.dt, fd.h,
                         fd.richardson);
  double dS_X = central([&](double X) { return S_mid(X, mid.dx, mid.T, mid.dt); }, mid.X, fd.h,
                        fd.richardson);
  double dS_dx = central([&](double dx) { return S_mid(mid.X, dx, mid.T, mid.dt); }, mid.dx, fd.h,
                         fd.richardson);

  double p1 = action.p_initial(p), p2 = action.p_final(p);
  double h1 = action.H(p.x1, p1), h2 = action.H(p.x2, p2);

  double s = sign_of(action.convention);
  MidpointResiduals r;
  r.rT = dS_T - s * (h2 - h1);
  r.rDt = dS_dt - s * 0.5 * (h2 + h1);
  r.rX = dS_X - s * (p1 - p2);
  r.rDx = dS_dx + s * 0.5 * (p1 + p2);
  return r;
}

double legendre_K(const TwoPointAction& action, const Point& p) {
  action.guard(p);
  MidpointCoords mid = MidpointCoords::from_endpoints(p);
  double p1 = action.p_initial(p), p2 = action.p_final(p);
  double P = -0.5 * (p1 + p2);
  double E = 0.5 * (action.H(p.x1, p1) + action.H(p.x2, p2));
  return P * mid.dx + E * mid.dt - action.S(p);
}

double energy_limit_residual(const TwoPointAction& action,
                             const std::function<double(double)>& trajectory, double T, double dt,
                             double energy, const FdOptions& fd) {
  double t1 = T - 0.5 * dt, t2 = T + 0.5 * dt;
  Point p{trajectory(t1), t1, trajectory(t2), t2};
  action.guard(p);
  MidpointCoords mid = MidpointCoords::from_endpoints(p);
  auto S_of_dt = [&](double d) {
    MidpointCoords c{mid.X, mid.dx, mid.T, d};
    return action.S(c.to_endpoints());
  };
  double dS_dt = central(S_of_dt, mid.dt, fd.h, fd.richardson);
  double s = sign_of(action.convention);
  return std::abs(s * dS_dt - energy);
}

FlowResidual liouville_limit_check(const std::function<double(double, double, double)>& K,
                                   const std::function<double(double, double)>& H,
                                   const GridSpec& grid) {
  FlowResidual out;
  out.accuracy_warning = grid.step > 0.1;
  double eps = grid.step;
  for (int ix = 0; ix < grid.points; ++ix)
    for (int ip = 0; ip < grid.points; ++ip) {
      double X = grid.x_lo + (grid.x_hi - grid.x_lo) * ix / (grid.points - 1);
      double P = grid.p_lo + (grid.p_hi - grid.p_lo) * ip / (grid.points - 1);
      double dK_T = (K(X, P, grid.t + eps) - K(X, P, grid.t - eps)) / (2 * eps);
      double dK_X = (K(X + eps, P, grid.t) - K(X - eps, P, grid.t)) / (2 * eps);
      double dK_P = (K(X, P + eps, grid.t) - K(X, P - eps, grid.t)) / (2 * eps);
      double dH_X = (H(X + eps, P) - H(X - eps, P)) / (2 * eps);
      double dH_P = (H(X, P + eps) - H(X, P - eps)) / (2 * eps);
      double res = dK_T + (dK_X * dH_P - dK_P * dH_X);
      out.max_residual = std::max(out.max_residual, std::abs(res));
    }
  return out;
}

double composition_defect(const TwoPointAction& action, double x1, double t1, double x3, double t3,
                          double t2) {
  auto total = [&](double x2) {
    return action.S({x1, t1, x2, t2}) + action.S({x2, t2, x3, t3});
  };
  // stationary point of the chained action via bisection on the derivative
  double h = 1e-6;
  auto deriv = [&](double x2) { return (total(x2 + h) - total(x2 - h)) / (2 * h); };
  double lo = std::min(x1, x3) - 5.0, hi = std::max(x1, x3) + 5.0;
  double flo = deriv(lo), fhi = deriv(hi);
  if (flo * fhi > 0) throw Error("no stationary intermediate point bracketed");
  for (int iter = 0; iter < 200; ++iter) {
    double mid = 0.5 * (lo + hi);
    double fm = deriv(mid);
    if (flo * fm <= 0) {
      hi = mid;
      fhi = fm;
    } else {
      lo = mid;
      flo = fm;
    }
  }
  double x2 = 0.5 * (lo + hi);
  return std::abs(total(x2) - action.S({x1, t1, x3, t3}));
}

}  // namespace duron::bilocal
