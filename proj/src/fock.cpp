#include "duron/fock.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numeric>
#include <vector>

#include "duron/report.hpp"

namespace duron::fock {

namespace {

void require_cutoff(int n) {
  if (n < 2) throw DimensionError("cutoff must be at least 2, got " + std::to_string(n));
}

}  // namespace

TruncatedOperator annihilation(int n) {
  require_cutoff(n);
  Matrix m = Matrix::Zero(n, n);
  for (int k = 1; k < n; ++k) m(k - 1, k) = std::sqrt(static_cast<double>(k));
  return {std::move(m), n, Space::single};
}

TruncatedOperator creation(int n) { return annihilation(n).adjoint(); }

TruncatedOperator number_op(int n) {
  require_cutoff(n);
  Matrix m = Matrix::Zero(n, n);
  for (int k = 0; k < n; ++k) m(k, k) = static_cast<double>(k);
  return {std::move(m), n, Space::single};
}

TruncatedOperator oscillator_hamiltonian(int n, double omega) {
  require_cutoff(n);
  if (!(omega > 0)) throw ValidationError("oscillator frequency must be positive");
  Matrix m = Matrix::Zero(n, n);
  for (int k = 0; k < n; ++k) m(k, k) = omega * (k + 0.5);
  return {std::move(m), n, Space::single};
}

TruncatedOperator identity(int n, Space space) {
  require_cutoff(n);
  Eigen::Index d = space == Space::single ? n : static_cast<Eigen::Index>(n) * n;
  return {Matrix::Identity(d, d), n, space};
}

TruncatedOperator from_matrix(Matrix m, int cutoff, Space space) {
  Eigen::Index d = space == Space::single ? cutoff : static_cast<Eigen::Index>(cutoff) * cutoff;
  if (m.rows() != d || m.cols() != d)
    throw DimensionError("matrix shape does not match the declared truncated space");
  return {std::move(m), cutoff, space};
}

TruncatedOperator tensor(const TruncatedOperator& a, const TruncatedOperator& b) {
  if (a.space != Space::single || b.space != Space::single)
    throw DimensionError("tensor expects single-space factors");
  if (a.cutoff != b.cutoff) throw DimensionError("tensor factors must share the cutoff");
  const int n = a.cutoff;
  Matrix m(static_cast<Eigen::Index>(n) * n, static_cast<Eigen::Index>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k)
      for (int j = 0; j < n; ++j)
        for (int l = 0; l < n; ++l)
          m(static_cast<Eigen::Index>(i) * n + j, static_cast<Eigen::Index>(k) * n + l) =
              a.mat(i, k) * b.mat(j, l);
  return {std::move(m), n, Space::doubled};
}

TruncatedOperator lift_left(const TruncatedOperator& a) { return tensor(a, identity(a.cutoff)); }
TruncatedOperator lift_right(const TruncatedOperator& a) { return tensor(identity(a.cutoff), a); }

StateVector basis_state(int n, int level) {
  require_cutoff(n);
  if (level < 0 || level >= n) throw DimensionError("basis level out of range");
  Vector v = Vector::Zero(n);
  v(level) = 1.0;
  return StateVector::wrap(std::move(v), n, Space::single);
}

StateVector basis_state2(int n, int level1, int level2) {
  require_cutoff(n);
  if (level1 < 0 || level1 >= n || level2 < 0 || level2 >= n)
    throw DimensionError("basis level out of range");
  Vector v = Vector::Zero(static_cast<Eigen::Index>(n) * n);
  v(static_cast<Eigen::Index>(level1) * n + level2) = 1.0;
  return StateVector::wrap(std::move(v), n, Space::doubled);
}

StateVector tensor(const StateVector& a, const StateVector& b) {
  if (a.space != Space::single || b.space != Space::single || a.cutoff != b.cutoff)
    throw DimensionError("state tensor expects single-space factors with equal cutoff");
  const int n = a.cutoff;
  Vector v(static_cast<Eigen::Index>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) v(static_cast<Eigen::Index>(i) * n + j) = a.amps(i) * b.amps(j);
  return StateVector::wrap(std::move(v), n, Space::doubled);
}

namespace {

// Connected components of the symmetrized sparsity graph. Exact zeros only;
// a dense matrix is a single component and pays one dense decomposition.
std::vector<std::vector<Eigen::Index>> sparsity_components(const Matrix& m) {
  const Eigen::Index d = m.rows();
  std::vector<Eigen::Index> parent(static_cast<std::size_t>(d));
  std::iota(parent.begin(), parent.end(), 0);
  std::function<Eigen::Index(Eigen::Index)> find = [&](Eigen::Index v) {
    while (parent[static_cast<std::size_t>(v)] != v) {
      parent[static_cast<std::size_t>(v)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(v)])];
      v = parent[static_cast<std::size_t>(v)];
    }
    return v;
  };
  auto unite = [&](Eigen::Index a, Eigen::Index b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[static_cast<std::size_t>(a)] = b;
  };
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j)
      if (i != j && (m(i, j) != Complex(0.0) || m(j, i) != Complex(0.0))) unite(i, j);
  std::map<Eigen::Index, std::vector<Eigen::Index>> groups;
  for (Eigen::Index i = 0; i < d; ++i) groups[find(i)].push_back(i);
  std::vector<std::vector<Eigen::Index>> out;
  out.reserve(groups.size());
  for (auto& [root, members] : groups) out.push_back(std::move(members));
  return out;
}

// Scaling-and-squaring Taylor series for blocks with no (anti-)Hermitian
// structure. Fine at the block sizes this project sees.
Matrix expm_series(const Matrix& a) {
  double norm = a.cwiseAbs().rowwise().sum().maxCoeff();  // inf-norm
  int squarings = 0;
  Matrix t = a;
  if (norm > 0.5) {
    squarings = static_cast<int>(std::ceil(std::log2(norm / 0.5)));
    t /= std::pow(2.0, squarings);
  }
  Matrix result = Matrix::Identity(a.rows(), a.cols());
  Matrix term = result;
  for (int k = 1; k < 60; ++k) {
    term = (term * t / static_cast<double>(k)).eval();
    result += term;
    if (term.cwiseAbs().maxCoeff() < 1e-18) break;
  }
  for (int s = 0; s < squarings; ++s) result = (result * result).eval();
  return result;
}

struct BlockExp {
  Matrix forward, backward;
};

BlockExp expm_block(const Matrix& b) {
  const double scale = std::max(1.0, b.cwiseAbs().maxCoeff());
  const double htol = 1e-12 * scale;
  BlockExp out;
  if ((b - b.adjoint()).cwiseAbs().maxCoeff() <= htol) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (b + b.adjoint()));
    Matrix v = es.eigenvectors();
    Eigen::VectorXd d = es.eigenvalues();
    out.forward = v * d.array().exp().matrix().asDiagonal() * v.adjoint();
    out.backward = v * (-d).array().exp().matrix().asDiagonal() * v.adjoint();
    return out;
  }
  if ((b + b.adjoint()).cwiseAbs().maxCoeff() <= htol) {
    // b = iH with H Hermitian
    Matrix h = Complex(0, -1) * 0.5 * (b - b.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix> es(h);
    Matrix v = es.eigenvectors();
    Eigen::VectorXd d = es.eigenvalues();
    Vector phase(d.size()), phase_inv(d.size());
    for (Eigen::Index k = 0; k < d.size(); ++k) {
      phase(k) = std::polar(1.0, d(k));
      phase_inv(k) = std::polar(1.0, -d(k));
    }
    out.forward = v * phase.asDiagonal() * v.adjoint();
    out.backward = v * phase_inv.asDiagonal() * v.adjoint();
    return out;
  }
  out.forward = expm_series(b);
  out.backward = expm_series(-b);
  return out;
}

}  // namespace

TruncatedOperator expm(const TruncatedOperator& a, double tol) {
  if (!a.mat.allFinite()) throw ValidationError("expm input has non-finite entries");
  const Eigen::Index d = a.mat.rows();
  Matrix result = Matrix::Zero(d, d);
  double residual = 0.0;
  for (const auto& comp : sparsity_components(a.mat)) {
    const auto bn = static_cast<Eigen::Index>(comp.size());
    Matrix block(bn, bn);
    for (Eigen::Index r = 0; r < bn; ++r)
      for (Eigen::Index c = 0; c < bn; ++c)
        block(r, c) = a.mat(comp[static_cast<std::size_t>(r)], comp[static_cast<std::size_t>(c)]);
    BlockExp be = expm_block(block);
    residual = std::max(
        residual,
        (be.forward * be.backward - Matrix::Identity(bn, bn)).cwiseAbs().maxCoeff());
    for (Eigen::Index r = 0; r < bn; ++r)
      for (Eigen::Index c = 0; c < bn; ++c)
        result(comp[static_cast<std::size_t>(r)], comp[static_cast<std::size_t>(c)]) =
            be.forward(r, c);
  }
  if (!(residual <= tol))
    throw NumericalError("expm failed its inverse-product residual check (achieved " +
                             report::format_double(residual) + ", requested " +
                             report::format_double(tol) + ")",
                         residual);
  return {std::move(result), a.cutoff, a.space};
}

Evolver::Evolver(const TruncatedOperator& h, double herm_tol) : h_(h) {
  double defect = h.hermiticity_defect();
  if (defect > herm_tol)
    throw ValidationError("evolve requires a Hermitian Hamiltonian (defect " +
                          report::format_double(defect) + ")");
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (h.mat + h.mat.adjoint()));
  evals_ = es.eigenvalues();
  evecs_ = es.eigenvectors();
}

StateVector Evolver::evolve(const StateVector& psi0, double t) const {
  if (psi0.amps.size() != h_.mat.rows())
    throw DimensionError("state dimension does not match the Hamiltonian");
  Vector coef = evecs_.adjoint() * psi0.amps;
  for (Eigen::Index k = 0; k < coef.size(); ++k) coef(k) *= std::polar(1.0, -evals_(k) * t);
  StateVector out = StateVector::wrap(evecs_ * coef, psi0.cutoff, psi0.space);
  if (std::abs(out.norm() - psi0.norm()) > 1e-10)
    throw NumericalError("evolution failed to preserve the norm",
                         std::abs(out.norm() - psi0.norm()));
  return out;
}

StateVector evolve(const StateVector& psi0, const TruncatedOperator& h, double t) {
  return Evolver(h).evolve(psi0, t);
}

Complex expectation(const StateVector& psi, const TruncatedOperator& a) {
  if (psi.amps.size() != a.mat.rows())
    throw DimensionError("state dimension does not match the operator");
  return psi.amps.dot(a.mat * psi.amps);  // Eigen's dot conjugates the left factor
}

double max_abs(const Matrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

namespace {

std::vector<Eigen::Index> interior_indices(int cutoff, Space space, int n_max) {
  if (n_max < 0) n_max = cutoff / 2;
  std::vector<Eigen::Index> idx;
  if (space == Space::single) {
    for (int k = 0; k <= std::min(n_max, cutoff - 1); ++k) idx.push_back(k);
  } else {
    for (int i = 0; i <= std::min(n_max, cutoff - 1); ++i)
      for (int j = 0; j <= std::min(n_max, cutoff - 1); ++j)
        idx.push_back(static_cast<Eigen::Index>(i) * cutoff + j);
  }
  return idx;
}

}  // namespace

Matrix interior_block(const TruncatedOperator& op, int n_max) {
  auto idx = interior_indices(op.cutoff, op.space, n_max);
  Matrix out(static_cast<Eigen::Index>(idx.size()), static_cast<Eigen::Index>(idx.size()));
  for (std::size_t r = 0; r < idx.size(); ++r)
    for (std::size_t c = 0; c < idx.size(); ++c)
      out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = op.mat(idx[r], idx[c]);
  return out;
}

Vector interior_block(const StateVector& psi, int n_max) {
  auto idx = interior_indices(psi.cutoff, psi.space, n_max);
  Vector out(static_cast<Eigen::Index>(idx.size()));
  for (std::size_t r = 0; r < idx.size(); ++r)
    out(static_cast<Eigen::Index>(r)) = psi.amps(idx[r]);
  return out;
}

void write_json(std::ostream& os, const Matrix& m) {
  os << '[';
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    if (i) os << ',';
    os << '[';
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j) os << ',';
      os << '[' << report::format_double(m(i, j).real()) << ','
         << report::format_double(m(i, j).imag()) << ']';
    }
    os << ']';
  }
  os << ']';
}

void write_json(std::ostream& os, const Vector& v) {
  os << '[';
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (i) os << ',';
    os << '[' << report::format_double(v(i).real()) << ',' << report::format_double(v(i).imag())
       << ']';
  }
  os << ']';
}

void write_csv(std::ostream& os, const Matrix& m) {
  os << "# shape " << m.rows() << ' ' << m.cols() << "\nre,im\n";
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      os << report::format_double(m(i, j).real()) << ',' << report::format_double(m(i, j).imag())
         << '\n';
}

void write_csv(std::ostream& os, const Vector& v) {
  os << "# shape " << v.size() << " 1\nre,im\n";
  for (Eigen::Index i = 0; i < v.size(); ++i)
    os << report::format_double(v(i).real()) << ',' << report::format_double(v(i).imag()) << '\n';
}

}  // namespace duron::fock
