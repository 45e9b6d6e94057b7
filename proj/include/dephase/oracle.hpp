#pragma once

// Brute-force reference: the qubits plus N bosonic modes evolved exactly
// (the Hamiltonian is diagonal in the qubit x Fock product basis), then the
// reservoir traced out.
//
// Conventions: qubit z-eigenvalues are +-1/2, so the |++> branch carries
// energy +(w1+w2)/2 + mu12/4 and the |--> branch -(w1+w2)/2 + mu12/4. The
// reservoir term is w1 * sum_k wr_k (n_k + 1/2) with wr_k = omega_ratios[k],
// the cross-Kerr term 2 mu w1 sum_{k>j} wr_k n_k wr_j n_j, and the coupling
// +-(mu1+mu2)/2 * sum_k n_k per branch.

#include <cstddef>
#include <vector>

#include "dephase/channel.hpp"
#include "dephase/matcore.hpp"
#include "dephase/states.hpp"

namespace dephase {

struct ReservoirConfig {
  std::vector<Complex> alphas;        // coherent amplitude per mode
  std::vector<double> omega_ratios;   // mode frequency / omega1, one per mode
  double mu_cross = 0.0;              // reservoir cross-Kerr, rad/s
  double mu12 = 0.0;                  // qubit-qubit coupling, rad/s
  double cutoff_tail = 1e-10;         // discarded coherent weight per mode
  std::size_t hard_cutoff = 64;       // largest allowed Fock level per mode

  // `modes` equal real amplitudes with sum |alpha|^2 = ntilde, all ratios 1.
  static ReservoirConfig resonant(std::size_t modes, double ntilde);

  std::size_t modes() const { return alphas.size(); }
  double ntilde() const;
  bool is_resonant() const;
  void validate() const;
};

/// Smallest n_max with sum_{n<=n_max} e^{-|a|^2} |a|^{2n}/n! >= 1 - tail.
std::size_t fock_cutoff(double abs_alpha_sq, double tail);

struct JointAmplitudes {
  std::vector<std::size_t> levels;  // Fock levels kept per mode (n_max + 1)
  std::vector<Complex> plus;        // reservoir amplitudes paired with |++>
  std::vector<Complex> minus;       // ... with |-->
  double weight_plus = 0.0;         // eps / sqrt(n)
  double weight_minus = 0.0;        // (1 - eps) / sqrt(n)

  std::size_t size() const { return plus.size(); }
  double squared_norm() const;
};

/// Product of truncated coherent states on both branches. Throws
/// kCutoffTooTight if a mode needs more than r.hard_cutoff levels.
JointAmplitudes build_joint(double epsilon, const ReservoirConfig& r);

/// Multiply every basis coefficient by e^{-i phi_branch(n) t}.
JointAmplitudes evolve_joint(const JointAmplitudes& j, const ReservoirConfig& r, const ChannelParams& c, double t);

/// Full |Psi><Psi| over qubit1 x qubit2 x modes, for small configurations.
/// Throws kInvalidArgument beyond max_dim.
ComplexMatrix joint_density_matrix(const JointAmplitudes& j, std::size_t max_dim = 2048);

struct OracleComparison {
  TwoQubitState rho_oracle;
  double max_abs_diff = 0.0;     // entrywise against the closed form
  double diagonal_diff = 0.0;    // populations only
  double abs_corner_diff = 0.0;  // ||corner_oracle| - |corner_closed||
  double phase_offset = 0.0;     // arg(corner_oracle / corner_closed), 0 if either vanishes
};

/// Trace out the reservoir (branch overlaps summed in lexicographic order)
/// and compare with evolve(eps, c, t) where c.ntilde is the reservoir's
/// total excitation.
OracleComparison reduce_and_compare(const JointAmplitudes& evolved, double epsilon, const ReservoirConfig& r,
                                    const ChannelParams& c, double t);

}  // namespace dephase
