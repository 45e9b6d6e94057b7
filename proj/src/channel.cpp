#include "dephase/channel.hpp"

#include <cmath>
#include <string>

#include "dephase/error.hpp"

namespace dephase {

void ChannelParams::validate() const {
  const auto finite = [](double v, const char* name) {
    if (!std::isfinite(v)) throw Error(ErrorCode::kInvalidArgument, std::string(name) + " must be finite");
  };
  finite(omega1, "omega1");
  finite(omega2, "omega2");
  finite(mu1, "mu1");
  finite(mu2, "mu2");
  finite(ntilde, "ntilde");
  if (ntilde < 0.0) throw Error(ErrorCode::kInvalidArgument, "ntilde must be >= 0");
}

double ChannelParams::revival_period() const {
  const double rate = mu1 + mu2;
  if (rate == 0.0) throw Error(ErrorCode::kInvalidArgument, "mu1 + mu2 is zero: no revival period");
  return 2.0 * M_PI / std::abs(rate);
}

DecoherenceFactor decoherence_factor(const ChannelParams& p, double t) {
  p.validate();
  if (!(t >= 0.0) || !std::isfinite(t)) throw Error(ErrorCode::kInvalidArgument, "t must be finite and >= 0");
  const double theta = (p.mu1 + p.mu2) * t;
  const double log_abs = p.ntilde * (std::cos(theta) - 1.0);
  DecoherenceFactor f;
  f.abs_a = std::exp(log_abs);
  f.gamma = 0.0 - std::expm1(2.0 * log_abs);  // +0 rather than -0 at t = 0
  f.phase = (p.omega1 + p.omega2) * t + p.ntilde * std::sin(theta);
  f.a = std::polar(f.abs_a, -f.phase);
  return f;
}

KrausPair kraus_ops(double gamma) {
  if (!(gamma >= 0.0 && gamma <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "gamma must lie in [0, 1]");
  }
  return {ComplexMatrix::diagonal({1.0, 0.0, 0.0, std::sqrt(1.0 - gamma)}),
          ComplexMatrix::diagonal({0.0, 0.0, 0.0, std::sqrt(gamma)})};
}

TwoQubitState apply_channel(const TwoQubitState& rho0, double gamma) {
  const KrausPair k = kraus_ops(gamma);
  const ComplexMatrix& r = rho0.matrix();
  double middle = 0.0;
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j : {1, 2}) {
      middle = std::max({middle, std::abs(r(i, j)), std::abs(r(j, i))});
    }
  }
  if (middle > 1e-12) {
    throw Error(ErrorCode::kUnsupportedSubspace,
                "state has weight outside span{|++>, |-->} (" + std::to_string(middle) + ")");
  }
  const ComplexMatrix out = k.e0 * r * k.e0.adjoint() + k.e1 * r * k.e1.adjoint();
  // Only the supported block is carried over so the middle block stays exactly zero.
  return x_block_state(out(0, 0).real(), out(3, 3).real(), out(0, 3));
}

TwoQubitState evolve(double epsilon, const ChannelParams& c, double t) {
  const DecoherenceFactor f = decoherence_factor(c, t);
  if (!(epsilon >= 0.0 && epsilon <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "epsilon must lie in [0, 1]");
  }
  const double n = family_norm(epsilon);
  return x_block_state(epsilon * epsilon / n, (1.0 - epsilon) * (1.0 - epsilon) / n,
                       (epsilon * (1.0 - epsilon) / n) * f.a);
}

}  // namespace dephase
