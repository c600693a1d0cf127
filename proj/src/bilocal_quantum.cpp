#include "duron/bilocal_quantum.hpp"

#include <cmath>

namespace duron::bilocal_q {

BilocalDensity bilocal(const StateVector& psi0, const TruncatedOperator& h, double t1, double t2) {
  fock::Evolver ev(h);
  BilocalDensity out{psi0, h, t1, t2, {}};
  Vector left = ev.evolve(psi0, t1).amps;
  Vector right = ev.evolve(psi0, t2).amps;
  out.matrix = left * right.adjoint();
  return out;
}

double liouville_residual(const StateVector& psi0, const TruncatedOperator& h, double t,
                          double fd_step) {
  if (!(fd_step > 0)) throw ValidationError("finite-difference step must be positive");
  fock::Evolver ev(h);
  auto rho_at = [&](double s) {
    Vector v = ev.evolve(psi0, s).amps;
    return Matrix(v * v.adjoint());
  };
  Matrix drho = (rho_at(t + 0.5 * fd_step) - rho_at(t - 0.5 * fd_step)) / fd_step;
  Matrix rho = rho_at(t);
  Matrix residual = Complex(0, 1) * drho + rho * h.mat - h.mat * rho;
  return fock::max_abs(residual);
}

double bilocal_t_residual(const StateVector& psi0, const TruncatedOperator& h, double t1,
                          double t2, double fd_step) {
  fock::Evolver ev(h);
  auto rho_at = [&](double shift) {
    Vector l = ev.evolve(psi0, t1 + shift).amps;
    Vector r = ev.evolve(psi0, t2 + shift).amps;
    return Matrix(l * r.adjoint());
  };
  Matrix drho = (rho_at(0.5 * fd_step) - rho_at(-0.5 * fd_step)) / fd_step;
  Matrix rho = rho_at(0.0);
  Matrix residual = Complex(0, 1) * drho + rho * h.mat - h.mat * rho;
  return fock::max_abs(residual);
}

EnergyAnticommutator energy_anticommutator(const StateVector& psi0, const TruncatedOperator& h,
                                           double t, double fd_step) {
  fock::Evolver ev(h);
  Vector psi = ev.evolve(psi0, t).amps;
  Matrix rho = psi * psi.adjoint();

  EnergyAnticommutator out;
  out.op = rho * h.mat + h.mat * rho;
  out.half_trace = 0.5 * out.op.trace();

  // rho at midpoint separation +-fd_step/2, midpoint time held at t
  auto rho_sep = [&](double dt) {
    Vector l = ev.evolve(psi0, t - 0.5 * dt).amps;
    Vector r = ev.evolve(psi0, t + 0.5 * dt).amps;
    return Matrix(l * r.adjoint());
  };
  Matrix drho = (rho_sep(0.5 * fd_step) - rho_sep(-0.5 * fd_step)) / fd_step;
  out.dt_form_residual = fock::max_abs(Complex(0, 2) * drho + out.op);
  return out;
}

// ---- grid ----

Grid1D::Grid1D(double x_lo, double x_hi, int points, double mass,
               std::function<double(double)> potential)
    : dx_((x_hi - x_lo) / (points + 1)), mass_(mass) {
  if (points < 3) throw DimensionError("grid needs at least 3 interior points");
  xs_.resize(points);
  pot_.resize(points);
  for (int i = 0; i < points; ++i) {
    xs_(i) = x_lo + dx_ * (i + 1);
    pot_(i) = potential(xs_(i));
  }
  Eigen::VectorXd diag = pot_.array() + 1.0 / (mass_ * dx_ * dx_);
  Eigen::VectorXd sub = Eigen::VectorXd::Constant(points - 1, -0.5 / (mass_ * dx_ * dx_));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  es.computeFromTridiagonal(diag, sub);
  evals_ = es.eigenvalues();
  evecs_ = es.eigenvectors();
}

Vector Grid1D::evolve(const Vector& psi0, double t) const {
  if (psi0.size() != xs_.size()) throw DimensionError("state does not match the grid");
  Vector coef = evecs_.transpose().cast<Complex>() * psi0;
  for (Eigen::Index k = 0; k < coef.size(); ++k) coef(k) *= std::polar(1.0, -evals_(k) * t);
  return evecs_.cast<Complex>() * coef;
}

Vector Grid1D::ground_state() const {
  Eigen::VectorXd g = evecs_.col(0);
  if (g.sum() < 0) g = -g;
  g /= std::sqrt(g.squaredNorm() * dx_);
  return g.cast<Complex>();
}

double Grid1D::ground_energy() const { return evals_(0); }

Vector Grid1D::apply_h(const Vector& psi) const {
  Vector out(psi.size());
  const double k = -0.5 / (mass_ * dx_ * dx_);
  for (Eigen::Index i = 0; i < psi.size(); ++i) {
    Complex lap = -2.0 * psi(i);
    if (i > 0) lap += psi(i - 1);
    if (i + 1 < psi.size()) lap += psi(i + 1);
    out(i) = k * lap + pot_(i) * psi(i);
  }
  return out;
}

Vector Grid1D::gaussian(double center, double sigma, double momentum) const {
  Vector psi(xs_.size());
  for (Eigen::Index i = 0; i < xs_.size(); ++i) {
    double z = (xs_(i) - center) / sigma;
    psi(i) = std::exp(-0.5 * z * z) * std::polar(1.0, momentum * (xs_(i) - center));
  }
  psi /= std::sqrt(psi.squaredNorm() * dx_);
  return psi;
}

Vector coherent_state(const Eigen::VectorXd& xs, double q0, double p0, double t) {
  double q = q0 * std::cos(t) + p0 * std::sin(t);
  double p = p0 * std::cos(t) - q0 * std::sin(t);
  double gamma = -0.5 * t + 0.5 * (q * p - q0 * p0);
  Vector psi(xs.size());
  const double norm = std::pow(M_PI, -0.25);
  for (Eigen::Index i = 0; i < xs.size(); ++i) {
    double d = xs(i) - q;
    psi(i) = norm * std::exp(-0.5 * d * d) * std::polar(1.0, p * d + gamma);
  }
  return psi;
}

// ---- polar fields ----

PolarField polar_decompose(const Vector& psi, const Eigen::VectorXd& xs, double floor) {
  if (psi.size() != xs.size()) throw DimensionError("wavefunction does not match the grid");
  PolarField out;
  out.x = xs;
  out.R.resize(psi.size());
  out.S.resize(psi.size());
  out.mask.assign(static_cast<std::size_t>(psi.size()), false);

  int masked = 0;
  for (Eigen::Index i = 0; i < psi.size(); ++i) {
    out.R(i) = std::abs(psi(i));
    if (out.R(i) < floor) {
      out.mask[static_cast<std::size_t>(i)] = true;
      out.S(i) = 0.0;
      ++masked;
    }
  }
  // unwrap left-to-right within each unmasked run; undefined across gaps
  double offset = 0.0;
  double prev = 0.0;
  bool have_prev = false;
  for (Eigen::Index i = 0; i < psi.size(); ++i) {
    if (out.mask[static_cast<std::size_t>(i)]) {
      have_prev = false;
      continue;
    }
    double raw = std::arg(psi(i));
    if (!have_prev) {
      offset = 0.0;
    } else {
      double jump = raw + offset - prev;
      offset -= 2.0 * M_PI * std::round(jump / (2.0 * M_PI));
    }
    out.S(i) = raw + offset;
    prev = out.S(i);
    have_prev = true;
  }
  out.masked_fraction = static_cast<double>(masked) / static_cast<double>(psi.size());
  out.node_warning = out.masked_fraction > 0.20;
  return out;
}

QhjResult quantum_hj_residual(const Grid1D& system, const Vector& prev, const Vector& cur,
                              const Vector& next, double dt, double floor) {
  const Eigen::Index n = system.size();
  if (prev.size() != n || cur.size() != n || next.size() != n)
    throw DimensionError("time slices do not match the grid");
  if (!(dt > 0)) throw ValidationError("time step must be positive");

  PolarField polar = polar_decompose(cur, system.xs(), floor);
  const double dx = system.dx();
  const double m = system.mass();

  QhjResult out;
  out.residual = Eigen::VectorXd::Zero(n);
  out.mask = polar.mask;
  out.node_warning = polar.node_warning;
  out.masked_fraction = polar.masked_fraction;

  // boundary points and neighbors of masked points cannot take central differences
  std::vector<bool> usable(static_cast<std::size_t>(n), false);
  for (Eigen::Index i = 1; i + 1 < n; ++i)
    usable[static_cast<std::size_t>(i)] = !polar.mask[static_cast<std::size_t>(i)] &&
                                          !polar.mask[static_cast<std::size_t>(i - 1)] &&
                                          !polar.mask[static_cast<std::size_t>(i + 1)];

  Vector hpsi = system.apply_h(cur);

  double wsum = 0.0, wres = 0.0, wanti = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (!usable[static_cast<std::size_t>(i)]) {
      out.mask[static_cast<std::size_t>(i)] = true;
      continue;
    }
    // dS/dt from the phase difference of the outer slices; the product form
    // wraps each point independently of the global branch
    double ds_dt = std::arg(next(i) * std::conj(prev(i))) / (2.0 * dt);
    double ds_dx = (polar.S(i + 1) - polar.S(i - 1)) / (2.0 * dx);
    double d2r = (polar.R(i + 1) - 2.0 * polar.R(i) + polar.R(i - 1)) / (dx * dx);
    double quantum_potential = -d2r / (2.0 * m * polar.R(i));
    double res =
        ds_dt + ds_dx * ds_dx / (2.0 * m) + system.potential(static_cast<int>(i)) + quantum_potential;
    out.residual(i) = res;

    double w = polar.R(i) * polar.R(i);
    wsum += w;
    wres += w * res * res;
    out.max_unmasked = std::max(out.max_unmasked, std::abs(res));

    // operator form: diag([rho,H]_+) = 2 Re(conj(psi) H psi) must equal
    // -2 R^2 dS/dt; compared per unit density so it carries energy units
    double diag = 2.0 * std::real(std::conj(cur(i)) * hpsi(i));
    double anti = diag / (2.0 * w) + ds_dt;
    wanti += w * anti * anti;
  }
  if (wsum > 0) {
    out.weighted_rms = std::sqrt(wres / wsum);
    out.anticomm_diag_residual = std::sqrt(wanti / wsum);
  }
  return out;
}

}  // namespace duron::bilocal_q
