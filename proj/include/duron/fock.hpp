#ifndef DURON_FOCK_HPP
#define DURON_FOCK_HPP

#include <Eigen/Dense>
#include <complex>
#include <ostream>
#include <string>

#include "duron/errors.hpp"

namespace duron::fock {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

enum class Space { single, doubled };

// Dense operator on a truncated Fock space. `cutoff` is the per-mode level
// count N; doubled operators act on N^2 states indexed (n1,n2) -> n1*N + n2
// (row-major pairing, fixed project-wide).
struct TruncatedOperator {
  Matrix mat;
  int cutoff = 0;
  Space space = Space::single;

  Eigen::Index dim() const { return mat.rows(); }

  TruncatedOperator adjoint() const { return {mat.adjoint(), cutoff, space}; }
  double hermiticity_defect() const { return (mat - mat.adjoint()).cwiseAbs().maxCoeff(); }

  friend TruncatedOperator operator+(const TruncatedOperator& a, const TruncatedOperator& b) {
    require_compatible(a, b);
    return {a.mat + b.mat, a.cutoff, a.space};
  }
  friend TruncatedOperator operator-(const TruncatedOperator& a, const TruncatedOperator& b) {
    require_compatible(a, b);
    return {a.mat - b.mat, a.cutoff, a.space};
  }
  friend TruncatedOperator operator*(const TruncatedOperator& a, const TruncatedOperator& b) {
    require_compatible(a, b);
    return {a.mat * b.mat, a.cutoff, a.space};
  }
  friend TruncatedOperator operator*(Complex k, const TruncatedOperator& a) {
    return {k * a.mat, a.cutoff, a.space};
  }

  static void require_compatible(const TruncatedOperator& a, const TruncatedOperator& b) {
    if (a.cutoff != b.cutoff || a.space != b.space)
      throw DimensionError("operators live on different truncated spaces");
  }
};

struct StateVector {
  Vector amps;
  int cutoff = 0;
  Space space = Space::single;
  double cached_norm = 0.0;

  static StateVector wrap(Vector v, int cutoff, Space space) {
    StateVector s;
    s.amps = std::move(v);
    s.cutoff = cutoff;
    s.space = space;
    s.cached_norm = s.amps.norm();
    return s;
  }
  double norm() const { return cached_norm; }
};

TruncatedOperator annihilation(int n);
TruncatedOperator creation(int n);
TruncatedOperator number_op(int n);
TruncatedOperator oscillator_hamiltonian(int n, double omega);
TruncatedOperator identity(int n, Space space = Space::single);
TruncatedOperator from_matrix(Matrix m, int cutoff, Space space);

// Kronecker product under the fixed (i,j) -> i*N + j convention:
// tensor(A,B)[(i,j),(k,l)] = A(i,k) B(j,l).
TruncatedOperator tensor(const TruncatedOperator& a, const TruncatedOperator& b);
TruncatedOperator lift_left(const TruncatedOperator& a);   // A (x) 1
TruncatedOperator lift_right(const TruncatedOperator& a);  // 1 (x) A

StateVector basis_state(int n, int level);
StateVector basis_state2(int n, int level1, int level2);
StateVector tensor(const StateVector& a, const StateVector& b);

// Matrix exponential. The sparsity graph of A is split into connected
// components; each block goes through a Hermitian or anti-Hermitian
// eigendecomposition when it qualifies and a scaling-and-squaring series
// otherwise. The result is checked against exp(A) exp(-A) = I blockwise and
// a NumericalError (carrying the achieved residual) is thrown above `tol`.
TruncatedOperator expm(const TruncatedOperator& a, double tol = 1e-10);

// Spectral propagator for a fixed Hermitian H: cheap repeated evolution.
class Evolver {
 public:
  explicit Evolver(const TruncatedOperator& h, double herm_tol = 1e-10);
  StateVector evolve(const StateVector& psi0, double t) const;
  const TruncatedOperator& hamiltonian() const { return h_; }

 private:
  TruncatedOperator h_;
  Eigen::VectorXd evals_;
  Matrix evecs_;
};

StateVector evolve(const StateVector& psi0, const TruncatedOperator& h, double t);
Complex expectation(const StateVector& psi, const TruncatedOperator& a);

double max_abs(const Matrix& m);

// Truncation-safe view: rows/columns with every mode index <= n_max
// (default cutoff/2). For doubled spaces both slots must be interior.
Matrix interior_block(const TruncatedOperator& op, int n_max = -1);
Vector interior_block(const StateVector& psi, int n_max = -1);

// JSON: nested arrays of [re, im] pairs. CSV: flattened row-major, header
// carries the shape.
void write_json(std::ostream& os, const Matrix& m);
void write_json(std::ostream& os, const Vector& v);
void write_csv(std::ostream& os, const Matrix& m);
void write_csv(std::ostream& os, const Vector& v);

}  // namespace duron::fock

#endif
