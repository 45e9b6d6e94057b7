#include "dephase/states.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace dephase {

struct StateFactory {
  static TwoQubitState make(ComplexMatrix m) { return TwoQubitState(std::move(m)); }
};

ValidationResult validate(const ComplexMatrix& m, const Tolerances& tol) {
  if (m.dim() != 4) throw Error(ErrorCode::kBadDim, "two-qubit state must be 4x4");
  ValidationResult result;
  const double asym = (m.eigen() - m.eigen().adjoint()).cwiseAbs().maxCoeff();
  if (asym > tol.herm) {
    result.violations.push_back({"hermitian", asym});
    // The spectrum of a non-Hermitian matrix is meaningless here.
    return result;
  }
  const Complex tr = m.trace();
  const double trace_err = std::abs(tr - Complex(1.0, 0.0));
  if (trace_err > tol.herm) result.violations.push_back({"unit_trace", trace_err});
  const EigenSystem es = hermitian_eig(m, tol);
  if (es.values.front() < -tol.psd) result.violations.push_back({"positive_semidefinite", es.values.front()});
  return result;
}

TwoQubitState TwoQubitState::from_matrix(ComplexMatrix m, const Tolerances& tol) {
  ValidationResult v = validate(m, tol);
  if (!v.ok()) throw InvalidStateError(std::move(v.violations));
  return TwoQubitState(std::move(m));
}

double family_norm(double epsilon) { return epsilon * epsilon + (1.0 - epsilon) * (1.0 - epsilon); }

namespace {

void check_epsilon(double epsilon) {
  if (!(epsilon >= 0.0 && epsilon <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "epsilon must lie in [0, 1], got " + std::to_string(epsilon));
  }
}

}  // namespace

TwoQubitState x_block_state(double p00, double p11, Complex corner) {
  const double tol = kDefaultTolerances.herm;
  std::vector<Diagnostic> bad;
  if (std::abs(p00 + p11 - 1.0) > tol) bad.push_back({"unit_trace", std::abs(p00 + p11 - 1.0)});
  if (p00 < 0.0 || p11 < 0.0) bad.push_back({"positive_semidefinite", std::min(p00, p11)});
  // Block eigenvalues are nonnegative iff |corner|^2 <= p00 p11.
  const double excess = std::norm(corner) - p00 * p11;
  if (excess > kDefaultTolerances.psd) bad.push_back({"positive_semidefinite", -excess});
  if (!bad.empty()) throw InvalidStateError(std::move(bad));
  ComplexMatrix m(4);
  m(0, 0) = p00;
  m(3, 3) = p11;
  m(0, 3) = corner;
  m(3, 0) = std::conj(corner);
  return StateFactory::make(std::move(m));
}

TwoQubitState initial_pure(const FamilyParams& p) {
  check_epsilon(p.epsilon);
  if (!std::isfinite(p.phase)) throw Error(ErrorCode::kInvalidArgument, "phase must be finite");
  const double e = p.epsilon;
  const double n = family_norm(e);
  return x_block_state(e * e / n, (1.0 - e) * (1.0 - e) / n, std::polar(e * (1.0 - e) / n, -p.phase));
}

TwoQubitState pure_reference(const FamilyParams& p) { return initial_pure(p); }

TwoQubitState maximally_mixed() { return StateFactory::make(0.25 * ComplexMatrix::identity(4)); }

TwoQubitState sigma_m(double ntilde, double phase) {
  if (!(ntilde >= 0.0) || !std::isfinite(ntilde)) {
    throw Error(ErrorCode::kInvalidArgument, "ntilde must be finite and >= 0");
  }
  return x_block_state(0.5, 0.5, std::polar(0.5 * std::exp(-2.0 * ntilde), -phase));
}

}  // namespace dephase
