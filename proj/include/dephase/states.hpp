#pragma once

// Two-qubit states in the basis |++>, |+->, |-+>, |--> (index 0..3).

#include <vector>

#include "dephase/error.hpp"
#include "dephase/matcore.hpp"

namespace dephase {

// A 4x4 density matrix: Hermitian, unit trace, positive semidefinite.
// Only constructible through validation or the family constructors below.
class TwoQubitState {
 public:
  const ComplexMatrix& matrix() const { return m_; }
  Complex operator()(std::size_t r, std::size_t c) const { return m_(r, c); }

  // Throws InvalidStateError carrying every violated invariant.
  static TwoQubitState from_matrix(ComplexMatrix m, const Tolerances& tol = kDefaultTolerances);

 private:
  friend struct StateFactory;
  explicit TwoQubitState(ComplexMatrix m) : m_(std::move(m)) {}
  ComplexMatrix m_;
};

struct ValidationResult {
  std::vector<Diagnostic> violations;
  bool ok() const { return violations.empty(); }
};

/// Check the density-matrix invariants: Hermitian within tol.herm, trace one
/// within tol.herm, eigenvalues >= -tol.psd. Non-4x4 input throws kBadDim.
ValidationResult validate(const ComplexMatrix& m, const Tolerances& tol = kDefaultTolerances);

struct FamilyParams {
  double epsilon = 0.5;  // mixing weight in [0, 1]
  double phase = 0.0;    // relative phase of the |--> amplitude, radians
};

// eps^2 + (1 - eps)^2; never below 1/2 on [0, 1].
double family_norm(double epsilon);

/// Projector onto (eps|++> + (1-eps) e^{i phase}|-->)/sqrt(n). The corner
/// entry <++|rho|--> is eps(1-eps) e^{-i phase}/n.
TwoQubitState initial_pure(const FamilyParams& p);

/// The dynamically connected pure reference: the initial family state
/// carrying the accumulated phase phi(t) from the channel.
TwoQubitState pure_reference(const FamilyParams& p);

TwoQubitState maximally_mixed();

/// diag(1/2, 0, 0, 1/2) with corner e^{-i phase} e^{-2 ntilde}/2.
/// Note this state has a negative partial transpose for every finite ntilde.
TwoQubitState sigma_m(double ntilde, double phase);

// Family-shaped state with the given diagonal and corner; middle block zero.
TwoQubitState x_block_state(double p00, double p11, Complex corner);

}  // namespace dephase
