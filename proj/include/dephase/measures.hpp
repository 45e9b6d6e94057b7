#pragma once

// Mixedness and entanglement measures for two-qubit states, plus the closed
// forms they reduce to on the dephased family.

#include "dephase/matcore.hpp"
#include "dephase/states.hpp"

namespace dephase {

// One sweep point. Relative entropy is in nats.
struct MeasureRecord {
  double epsilon = 0.0;
  double t = 0.0;
  double gamma = 0.0;
  double abs_a = 0.0;
  double delta12 = 0.0;
  double negativity = 0.0;
  double concurrence_wootters = 0.0;
  double concurrence_paper = 0.0;
  double eof = 0.0;
  double fidelity_pure = 0.0;
  double e_pure = 0.0;
  double e_mixed = 0.0;
  double e_maxmixed = 0.0;
  double er_exact = 0.0;  // +inf when the pure reference leaves supp(rho)
  double er_lin = 0.0;

  // Names of fields that are non-finite or outside their range.
  std::vector<std::string> violations() const;
};

// (4/3)(1 - Tr rho^2).
double linear_entropy(const TwoQubitState& rho);
// (8/3) eps^2 (1-eps)^2 gamma / n^2 for the family.
double linear_entropy_closed(double epsilon, double gamma);

// 2 max{0, -lambda_min(rho^T2)}.
double negativity(const TwoQubitState& rho);
double negativity_closed(double epsilon, double abs_a);

/// Wootters concurrence. The square roots of the spin-flip spectrum are taken
/// as singular values of sqrt(rho) (Y x Y) sqrt(rho)^*, which avoids square
/// roots of roundoff-level eigenvalues.
double concurrence_wootters(const TwoQubitState& rho);

/// sqrt(1 - 2 eps^2 (1-eps)^2 (1-|A|^2) / n^2). This is the family closed form
/// as commonly quoted; it equals sqrt(Tr rho^2), not the Wootters value, away
/// from eps = 1/2. Kept alongside for reproduction.
double concurrence_paper_closed(double epsilon, double abs_a);

// Entanglement of formation (bits) from a concurrence in [0, 1].
double eof(double concurrence);

/// {Tr[(sqrt(rho) sigma sqrt(rho))^{1/2}]}^2, evaluated as the squared trace
/// norm of sqrt(rho) sqrt(sigma).
double uhlmann_fidelity(const TwoQubitState& rho, const TwoQubitState& sigma,
                        const Tolerances& tol = kDefaultTolerances);

// (2 - 2 sqrt(F))^{1/2}, in [0, sqrt(2)].
double bures_distance(const TwoQubitState& rho, const TwoQubitState& sigma,
                      const Tolerances& tol = kDefaultTolerances);

/// -Tr(sigma_p ln rho) for a pure sigma_p, summed over eigenvalues of rho
/// above tol.psd. Throws kSupportMismatch when sigma_p puts weight >= 1e-8 on
/// the discarded eigenvectors (the exact value would be +inf).
double relative_entropy_exact(const TwoQubitState& sigma_p, const TwoQubitState& rho,
                              const Tolerances& tol = kDefaultTolerances);

// 1 - Tr(sigma_p rho).
double relative_entropy_linearized(const TwoQubitState& rho, const TwoQubitState& sigma_p);

struct MonotonicResiduals {
  double delta12 = 0.0;      // delta12 - (2/3)(N0^2 - Nt^2)
  double concurrence = 0.0;  // C_paper - sqrt(1 - (N0^2 - Nt^2)/2)
};

// Both measures rewritten through the negativity, compared with their direct closed forms.
MonotonicResiduals monotonic_relations_check(double epsilon, double gamma);

}  // namespace dephase
