#pragma once

// Phase-damping channel acting on the |++>, |--> coherence of the family.

#include "dephase/matcore.hpp"
#include "dephase/states.hpp"

namespace dephase {

struct ChannelParams {
  double omega1 = 1.0;  // qubit frequencies, rad/s
  double omega2 = 1.0;
  double mu1 = 0.5;     // qubit-reservoir couplings, rad/s
  double mu2 = 0.5;
  double ntilde = 1.0;  // total reservoir excitation sum_j |alpha_j|^2

  // Throws kInvalidArgument naming the offending field.
  void validate() const;
  // 2 pi / (mu1 + mu2); coherence revives at every multiple.
  double revival_period() const;
};

struct DecoherenceFactor {
  Complex a;           // multiplies the corner coherence
  double abs_a = 1.0;  // |a|
  double gamma = 0.0;  // 1 - |a|^2
  double phase = 0.0;  // a = |a| e^{-i phase}
};

/// a = e^{-i(w1+w2)t} exp(ntilde [e^{-i(mu1+mu2)t} - 1]).
/// gamma and phase are derived here and nowhere else.
DecoherenceFactor decoherence_factor(const ChannelParams& p, double t);

struct KrausPair {
  ComplexMatrix e0;
  ComplexMatrix e1;
};

// E0 = diag(1, 0, 0, sqrt(1-gamma)), E1 = diag(0, 0, 0, sqrt(gamma)).
// Complete only on span{|++>, |-->}.
KrausPair kraus_ops(double gamma);

/// E0 rho E0^dagger + E1 rho E1^dagger. Inputs with any weight in the
/// |+->, |-+> block throw kUnsupportedSubspace since the pair loses trace there.
TwoQubitState apply_channel(const TwoQubitState& rho0, double gamma);

/// Closed-form reduced state of the qubits at time t.
TwoQubitState evolve(double epsilon, const ChannelParams& c, double t);

}  // namespace dephase
