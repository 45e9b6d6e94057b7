#pragma once

// Distance-based entanglement measures: fixed reference states, the exact
// separable minimum for the dephased family, and a general numerical search
// for the closest PPT (separable) state under the Bures distance.

#include <cstdint>
#include <string>
#include <vector>

#include "dephase/measures.hpp"
#include "dephase/states.hpp"

namespace dephase {

struct OptimizerConfig {
  std::size_t max_iters = 5000;  // per simplex run
  std::size_t restarts = 8;
  double penalty_weight = 1e3;
  double tol = 1e-10;
  std::uint64_t seed = 20240601;

  void validate() const;
};

struct CssResult {
  TwoQubitState sigma_star;
  double e_value = 0.0;      // (1/2) d_B(rho, sigma*)^2
  std::size_t iterations = 0;
  bool converged = false;
  double pt_min_eig = 0.0;   // smallest eigenvalue of sigma*^T2
  std::size_t best_restart = 0;
};

// Largest PT violation accepted on a returned sigma*.
inline constexpr double kPptFeasibilityTol = 1e-7;

/// Minimize (1/2) d_B(rho, sigma)^2 over PPT states sigma.
///
/// sigma is parametrized as L L^dagger / Tr(L L^dagger) with L lower
/// triangular (16 reals). Candidates with a negative partial transpose are
/// pulled radially toward I/4 until they reach the PPT boundary, and a
/// penalty on the original violation keeps the simplex near the feasible
/// set. Restart 0 starts from rho itself; the rest are seeded from
/// cfg.seed. Restarts run concurrently; the lowest objective wins, ties go
/// to the lower restart index. A result with pt_min_eig below
/// -kPptFeasibilityTol is reported as is, never repaired.
CssResult closest_separable_bures(const TwoQubitState& rho, const OptimizerConfig& cfg = {});

/// Bures measure of the eps = 1/2 state against the fixed mixed reference
/// sigma_m(ntilde): 1 - (1/2)[sqrt(1+beta-alpha) + sqrt(1+beta+alpha)].
/// X is taken as the corner of sigma_m, e^{-2 ntilde}/2, and phase_offset is
/// the coherence phase of rho minus that of sigma_m.
double e_mixed_closed(double abs_a, double ntilde, double phase_offset);

/// Same expression with X = e^{-2 ntilde} (no factor 1/2), i.e. as the
/// formula is usually printed. NaN when 4|X|^2 > 1 makes a root imaginary.
double e_mixed_closed_as_printed(double abs_a, double ntilde, double phase_offset);

// 1 - (1/2)[sqrt(1-|A|) + sqrt(1+|A|)] for the eps = 1/2 state.
double e_maxmixed_closed(double abs_a);

/// Exact minimum of (1/2) d_B^2 over separable states for a family state.
/// Local phase twirling and swap symmetry reduce the closest separable state
/// to diag(p, 0, 0, 1-p), giving F_max = (1 + sqrt(1 - N^2))/2 with N the
/// negativity.
double e_separable_family(double epsilon, double abs_a);

/// Fidelity to a pure reference supported on span{|++>, |-->}: Tr(rho sigma_p).
double e_pure(const TwoQubitState& rho, const TwoQubitState& sigma_p);
// 1 - 2 eps^2 (1-eps)^2 (1-|A|) / n^2.
double e_pure_closed(double epsilon, double abs_a);

struct Section5Residuals {
  // eps = 1/2 identities; near zero only at eps = 1/2.
  double purity_half = 0.0;    // delta12 - (2d/(d-1)) E_p E_r
  double triangle_half = 0.0;  // C^2 - E_p^2 - E_r^2
  // General-eps relations exactly as commonly printed.
  double purity_general = 0.0;
  double concurrence_general = 0.0;
  // The same two relations with the algebra repaired (see README).
  double purity_general_corrected = 0.0;
  double concurrence_general_corrected = 0.0;
};

/// Residuals of the purity/concurrence relations, using the record's
/// delta12, concurrence_paper, e_pure and er_lin with d = 4.
Section5Residuals section5_relations(const MeasureRecord& record);

enum class OrderingAxis { kLinearEntropy, kFidelityPure };

struct OrderingViolation {
  double epsilon = 0.0;
  double gamma = 0.0;
  std::string relation;  // e.g. "e_mixed<=negativity"
  double amount = 0.0;   // how far the inequality fails
};

struct CrossWitness {
  bool found = false;
  double epsilon_a = 0.0;  // e_mixed taken at this epsilon
  double epsilon_b = 0.0;  // negativity taken at this epsilon
  double abscissa = 0.0;
  double e_mixed = 0.0;
  double negativity = 0.0;
};

struct OrderingReport {
  std::vector<double> epsilons;
  std::vector<std::size_t> violations_per_epsilon;
  std::vector<OrderingViolation> violations;
  // At equal abscissa: a pair with e_mixed(eps_a) > N(eps_b), and one with
  // e_mixed(eps_a) < N(eps_b), eps_a != eps_b. Both present means no global
  // order between the two measures exists.
  CrossWitness e_mixed_above;
  CrossWitness e_mixed_below;

  std::size_t total_violations() const { return violations.size(); }
  bool no_global_order() const { return e_mixed_above.found && e_mixed_below.found; }
};

/// Check e_mixed <= negativity <= e_pure <= concurrence_paper pointwise for
/// every epsilon group, then compare e_mixed and negativity across epsilons
/// at equal abscissa (linear interpolation within each group).
OrderingReport ordering_check(const std::vector<MeasureRecord>& records,
                              OrderingAxis axis = OrderingAxis::kLinearEntropy);

}  // namespace dephase
