#ifndef DURON_SUPEROPS_HPP
#define DURON_SUPEROPS_HPP

#include "duron/ccr.hpp"
#include "duron/fock.hpp"

namespace duron::superops {

// Vectorization under the project-wide row-major pairing: vec(rho)[i*N+j] =
// rho(i,j). With this pairing vec(A rho B) = (A (x) B^T) vec(rho), so the
// commutator super-operator is H(x)1 - 1(x)H^T.
fock::Vector vectorize(const fock::Matrix& rho);
fock::Matrix devectorize(const fock::Vector& v, int n);

// L with L vec(rho) = vec(H rho - rho H) for every rho. The transpose in the
// second slot is required; it is invisible for real-symmetric H.
fock::TruncatedOperator liouvillian(const fock::TruncatedOperator& h);

// E with E vec(rho) = vec(H rho + rho H); eigenprojectors give 2 E_n.
fock::TruncatedOperator energy_superop(const fock::TruncatedOperator& h);

struct SpectraCheck {
  double liouvillian_deviation = 0.0;  // multiset {E_i - E_j} match
  double energy_deviation = 0.0;       // multiset {E_i + E_j} match
};
SpectraCheck spectra_check(const fock::TruncatedOperator& h);

// Symbolic side: the duron table plus its derivation from doubled time/energy
// generators with the sign-reversed second copy.
struct AgeDuronReport {
  ccr::TableReport axiomatic;   // time-duron preset
  ccr::TableReport derived;     // T = t1+t2, tau = t1-t2, E/eps = halved sums
  bool consistent = false;
  std::string obstruction_note;
};
AgeDuronReport age_duron_symbolic();

}  // namespace duron::superops

#endif
