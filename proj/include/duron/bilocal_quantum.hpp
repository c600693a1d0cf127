#ifndef DURON_BILOCAL_QUANTUM_HPP
#define DURON_BILOCAL_QUANTUM_HPP

#include <functional>
#include <vector>

#include "duron/fock.hpp"

namespace duron::bilocal_q {

using fock::Complex;
using fock::Matrix;
using fock::StateVector;
using fock::TruncatedOperator;
using fock::Vector;

// Two-time rank-one object |psi(t1)><psi(t2)| with its generating data.
struct BilocalDensity {
  StateVector base_state;
  TruncatedOperator hamiltonian;
  double t1 = 0.0, t2 = 0.0;
  Matrix matrix;
};

BilocalDensity bilocal(const StateVector& psi0, const TruncatedOperator& h, double t1, double t2);

// Max-norm of i (rho(T+h/2) - rho(T-h/2))/h + (rho H - H rho) at coincidence.
double liouville_residual(const StateVector& psi0, const TruncatedOperator& h, double t,
                          double fd_step);

// Same residual evaluated at fixed nonzero dt: i d rho/dT + rho H - H rho.
// (The printed form with both H's on the right is an erratum; the derivation
// from the two one-sided evolutions forces this ordering.)
double bilocal_t_residual(const StateVector& psi0, const TruncatedOperator& h, double t1,
                          double t2, double fd_step);

struct EnergyAnticommutator {
  Matrix op;                 // [rho, H]_+
  Complex half_trace;        // Tr([rho,H]_+)/2 = <H>
  double dt_form_residual;   // 2i d rho/d(dt) + [rho,H]_+ in max-norm
};
EnergyAnticommutator energy_anticommutator(const StateVector& psi0, const TruncatedOperator& h,
                                           double t, double fd_step = 1e-4);

// ---- 1D grid Schrodinger evolution (Dirichlet box, spectral propagation) ----

class Grid1D {
 public:
  // Uniform grid on [x_lo, x_hi] with `points` interior points; H is the
  // tridiagonal -1/(2m) d^2/dx^2 + V(x) with Dirichlet walls.
  Grid1D(double x_lo, double x_hi, int points, double mass,
         std::function<double(double)> potential);

  const Eigen::VectorXd& xs() const { return xs_; }
  double dx() const { return dx_; }
  double mass() const { return mass_; }
  double potential(int i) const { return pot_(i); }
  Eigen::Index size() const { return xs_.size(); }

  Vector evolve(const Vector& psi0, double t) const;
  Vector ground_state() const;  // lowest eigenvector, positive normalization
  double ground_energy() const;
  Vector apply_h(const Vector& psi) const;

  Vector gaussian(double center, double sigma, double momentum) const;

 private:
  Eigen::VectorXd xs_, pot_, evals_;
  Eigen::MatrixXd evecs_;
  double dx_, mass_;
};

// Closed-form coherent state of the unit-frequency, unit-mass trap (the
// oracle for the phase-equation tests).
Vector coherent_state(const Eigen::VectorXd& xs, double q0, double p0, double t);

// ---- polar (Madelung) decomposition and the projected phase equation ----

struct PolarField {
  Eigen::VectorXd x;
  Eigen::VectorXd R;          // nonnegative amplitude
  Eigen::VectorXd S;          // phase, unwrapped left-to-right across unmasked runs
  std::vector<bool> mask;     // true where R < floor (near-nodes)
  double masked_fraction = 0.0;
  bool node_warning = false;  // masked fraction above 20%
};

PolarField polar_decompose(const Vector& psi, const Eigen::VectorXd& xs, double floor = 1e-6);

struct QhjResult {
  Eigen::VectorXd residual;       // dS/dt + (dS/dx)^2/2m + V + Q, unmasked points
  std::vector<bool> mask;
  double weighted_rms = 0.0;      // sqrt(sum R^2 res^2 / sum R^2): density-weighted size
  double max_unmasked = 0.0;
  double masked_fraction = 0.0;
  bool node_warning = false;
  double anticomm_diag_residual = 0.0;  // diag([rho,H]_+) + 2 R^2 dS/dt, weighted RMS
};

// Central differences in x on the middle slice and a wrapped phase difference
// between the outer slices for dS/dt.
QhjResult quantum_hj_residual(const Grid1D& system, const Vector& prev, const Vector& cur,
                              const Vector& next, double dt, double floor = 1e-6);

}  // namespace duron::bilocal_q

#endif
