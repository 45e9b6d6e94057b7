#include "dephase/measures.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "dephase/error.hpp"

namespace dephase {

namespace {

void check_unit(double v, const char* name) {
  if (!(v >= 0.0 && v <= 1.0)) throw Error(ErrorCode::kInvalidArgument, std::string(name) + " must lie in [0, 1]");
}

// 2 eps (1-eps) / n: the negativity of the undamped family state.
double initial_coherence(double epsilon) {
  return 2.0 * epsilon * (1.0 - epsilon) / family_norm(epsilon);
}

double binary_entropy(double x) {
  const auto term = [](double p) { return p <= 0.0 ? 0.0 : -p * std::log2(p); };
  return term(x) + term(1.0 - x);
}

void require_pure(const TwoQubitState& sigma) {
  const auto& m = sigma.matrix().eigen();
  const double purity = (m * m).trace().real();
  if (std::abs(purity - 1.0) > 1e-9) {
    throw Error(ErrorCode::kInvalidArgument, "reference state must be pure (purity " + std::to_string(purity) + ")");
  }
}

}  // namespace

std::vector<std::string> MeasureRecord::violations() const {
  std::vector<std::string> bad;
  const auto unit = [&](double v, const char* name) {
    if (!std::isfinite(v) || v < -1e-12 || v > 1.0 + 1e-12) bad.emplace_back(name);
  };
  const auto finite = [&](double v, const char* name) {
    if (!std::isfinite(v)) bad.emplace_back(name);
  };
  finite(epsilon, "epsilon");
  finite(t, "t");
  unit(gamma, "gamma");
  unit(abs_a, "abs_a");
  unit(delta12, "delta12");
  unit(negativity, "negativity");
  unit(concurrence_wootters, "concurrence_wootters");
  unit(concurrence_paper, "concurrence_paper");
  unit(eof, "eof");
  unit(fidelity_pure, "fidelity_pure");
  unit(e_pure, "e_pure");
  unit(e_mixed, "e_mixed");
  unit(e_maxmixed, "e_maxmixed");
  // er_exact may be +inf (support mismatch), never negative or NaN.
  if (std::isnan(er_exact) || er_exact < -1e-12) bad.emplace_back("er_exact");
  unit(er_lin, "er_lin");
  return bad;
}

double linear_entropy(const TwoQubitState& rho) {
  const auto& m = rho.matrix().eigen();
  const double purity = (m * m).trace().real();
  return std::max(0.0, (4.0 / 3.0) * (1.0 - purity));
}

double linear_entropy_closed(double epsilon, double gamma) {
  check_unit(epsilon, "epsilon");
  check_unit(gamma, "gamma");
  const double n = family_norm(epsilon);
  const double e2 = epsilon * epsilon * (1.0 - epsilon) * (1.0 - epsilon);
  return (8.0 / 3.0) * e2 * gamma / (n * n);
}

double negativity(const TwoQubitState& rho) {
  const EigenSystem es = hermitian_eig(partial_transpose(rho.matrix()));
  return 2.0 * std::max(0.0, -es.values.front());
}

double negativity_closed(double epsilon, double abs_a) {
  check_unit(epsilon, "epsilon");
  check_unit(abs_a, "abs_a");
  return initial_coherence(epsilon) * abs_a;
}

double concurrence_wootters(const TwoQubitState& rho) {
  const ComplexMatrix yy = kron(pauli_y(), pauli_y());
  const ComplexMatrix root = psd_sqrt(rho.matrix());
  const std::vector<double> s = singular_values(root * yy * root.conjugate());
  return std::max(0.0, s[0] - s[1] - s[2] - s[3]);
}

double concurrence_paper_closed(double epsilon, double abs_a) {
  check_unit(epsilon, "epsilon");
  check_unit(abs_a, "abs_a");
  const double n = family_norm(epsilon);
  const double e2 = epsilon * epsilon * (1.0 - epsilon) * (1.0 - epsilon);
  return std::sqrt(1.0 - 2.0 * e2 * (1.0 - abs_a * abs_a) / (n * n));
}

double eof(double concurrence) {
  check_unit(concurrence, "concurrence");
  return binary_entropy(0.5 * (1.0 + std::sqrt(1.0 - concurrence * concurrence)));
}

double uhlmann_fidelity(const TwoQubitState& rho, const TwoQubitState& sigma, const Tolerances& tol) {
  const ComplexMatrix a = psd_sqrt(rho.matrix(), tol);
  const ComplexMatrix b = psd_sqrt(sigma.matrix(), tol);
  double trace_norm = 0.0;
  for (double s : singular_values(a * b)) trace_norm += s;
  return std::clamp(trace_norm * trace_norm, 0.0, 1.0);
}

double bures_distance(const TwoQubitState& rho, const TwoQubitState& sigma, const Tolerances& tol) {
  const double f = uhlmann_fidelity(rho, sigma, tol);
  return std::sqrt(std::max(0.0, 2.0 - 2.0 * std::sqrt(f)));
}

double relative_entropy_exact(const TwoQubitState& sigma_p, const TwoQubitState& rho, const Tolerances& tol) {
  require_pure(sigma_p);
  const EigenSystem es = hermitian_eig(rho.matrix(), tol);
  const auto& v = es.vectors.eigen();
  const auto& s = sigma_p.matrix().eigen();
  double value = 0.0;
  double off_support = 0.0;
  for (std::size_t i = 0; i < es.values.size(); ++i) {
    const auto col = v.col(static_cast<Eigen::Index>(i));
    const double weight = (col.adjoint() * s * col)(0, 0).real();
    if (es.values[i] > tol.psd) {
      value -= weight * std::log(es.values[i]);
    } else {
      off_support += std::max(0.0, weight);
    }
  }
  if (off_support >= 1e-8) {
    throw Error(ErrorCode::kSupportMismatch,
                "reference has weight " + std::to_string(off_support) + " outside the support of rho");
  }
  return std::max(0.0, value);
}

double relative_entropy_linearized(const TwoQubitState& rho, const TwoQubitState& sigma_p) {
  require_pure(sigma_p);
  return 1.0 - (sigma_p.matrix().eigen() * rho.matrix().eigen()).trace().real();
}

MonotonicResiduals monotonic_relations_check(double epsilon, double gamma) {
  check_unit(gamma, "gamma");
  const double abs_a = std::sqrt(1.0 - gamma);
  const double n0 = negativity_closed(epsilon, 1.0);
  const double nt = negativity_closed(epsilon, abs_a);
  const double drop = n0 * n0 - nt * nt;
  return {linear_entropy_closed(epsilon, gamma) - (2.0 / 3.0) * drop,
          concurrence_paper_closed(epsilon, abs_a) - std::sqrt(1.0 - 0.5 * drop)};
}

}  // namespace dephase
