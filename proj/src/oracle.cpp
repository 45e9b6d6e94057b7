#include "dephase/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "dephase/error.hpp"

namespace dephase {

ReservoirConfig ReservoirConfig::resonant(std::size_t modes, double ntilde) {
  if (modes == 0) throw Error(ErrorCode::kInvalidArgument, "reservoir needs at least one mode");
  if (!(ntilde >= 0.0)) throw Error(ErrorCode::kInvalidArgument, "ntilde must be >= 0");
  ReservoirConfig r;
  r.alphas.assign(modes, Complex(std::sqrt(ntilde / static_cast<double>(modes)), 0.0));
  r.omega_ratios.assign(modes, 1.0);
  return r;
}

double ReservoirConfig::ntilde() const {
  double sum = 0.0;
  for (const Complex& a : alphas) sum += std::norm(a);
  return sum;
}

bool ReservoirConfig::is_resonant() const {
  for (double w : omega_ratios)
    if (w != omega_ratios.front()) return false;
  return true;
}

void ReservoirConfig::validate() const {
  if (alphas.empty()) throw Error(ErrorCode::kInvalidArgument, "reservoir.modes must be >= 1");
  if (omega_ratios.size() != alphas.size()) {
    throw Error(ErrorCode::kInvalidArgument, "reservoir.omega_ratios needs one entry per mode");
  }
  for (const Complex& a : alphas)
    if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) {
      throw Error(ErrorCode::kInvalidArgument, "reservoir.alphas must be finite");
    }
  for (double w : omega_ratios)
    if (!std::isfinite(w)) throw Error(ErrorCode::kInvalidArgument, "reservoir.omega_ratios must be finite");
  if (!std::isfinite(mu_cross) || !std::isfinite(mu12)) {
    throw Error(ErrorCode::kInvalidArgument, "reservoir.mu_cross and reservoir.mu12 must be finite");
  }
  if (!(cutoff_tail > 0.0 && cutoff_tail < 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "reservoir.cutoff_tail must lie in (0, 1)");
  }
  if (hard_cutoff == 0) throw Error(ErrorCode::kInvalidArgument, "reservoir.hard_cutoff must be >= 1");
}

std::size_t fock_cutoff(double abs_alpha_sq, double tail) {
  // Poisson pmf accumulated in order; bounded so huge amplitudes terminate.
  double term = std::exp(-abs_alpha_sq);
  double cumulative = term;
  std::size_t n = 0;
  while (cumulative < 1.0 - tail && n < 100000) {
    ++n;
    term *= abs_alpha_sq / static_cast<double>(n);
    cumulative += term;
  }
  return n;
}

double JointAmplitudes::squared_norm() const {
  double sp = 0.0, sm = 0.0;
  for (const Complex& c : plus) sp += std::norm(c);
  for (const Complex& c : minus) sm += std::norm(c);
  return weight_plus * weight_plus * sp + weight_minus * weight_minus * sm;
}

namespace {

// Calls fn(flat_index, multi_index) in lexicographic order, last mode fastest.
template <typename Fn>
void for_each_index(const std::vector<std::size_t>& levels, Fn&& fn) {
  std::vector<std::size_t> idx(levels.size(), 0);
  std::size_t total = 1;
  for (std::size_t l : levels) total *= l;
  for (std::size_t flat = 0; flat < total; ++flat) {
    fn(flat, idx);
    for (std::size_t k = levels.size(); k-- > 0;) {
      if (++idx[k] < levels[k]) break;
      idx[k] = 0;
    }
  }
}

}  // namespace

JointAmplitudes build_joint(double epsilon, const ReservoirConfig& r) {
  r.validate();
  if (!(epsilon >= 0.0 && epsilon <= 1.0)) throw Error(ErrorCode::kInvalidArgument, "epsilon must lie in [0, 1]");

  JointAmplitudes j;
  std::vector<std::vector<Complex>> per_mode;
  for (std::size_t m = 0; m < r.modes(); ++m) {
    const Complex a = r.alphas[m];
    const std::size_t n_max = fock_cutoff(std::norm(a), r.cutoff_tail);
    if (n_max > r.hard_cutoff) {
      throw Error(ErrorCode::kCutoffTooTight, "mode " + std::to_string(m) + " needs Fock level " +
                                                  std::to_string(n_max) + " beyond the hard cutoff " +
                                                  std::to_string(r.hard_cutoff));
    }
    std::vector<Complex> c(n_max + 1);
    c[0] = std::exp(-0.5 * std::norm(a));
    for (std::size_t n = 1; n <= n_max; ++n) c[n] = c[n - 1] * a / std::sqrt(static_cast<double>(n));
    j.levels.push_back(n_max + 1);
    per_mode.push_back(std::move(c));
  }

  std::size_t total = 1;
  for (std::size_t l : j.levels) total *= l;
  j.plus.resize(total);
  for_each_index(j.levels, [&](std::size_t flat, const std::vector<std::size_t>& idx) {
    Complex v = 1.0;
    for (std::size_t m = 0; m < idx.size(); ++m) v *= per_mode[m][idx[m]];
    j.plus[flat] = v;
  });
  j.minus = j.plus;
  const double norm = std::sqrt(family_norm(epsilon));
  j.weight_plus = epsilon / norm;
  j.weight_minus = (1.0 - epsilon) / norm;
  return j;
}

JointAmplitudes evolve_joint(const JointAmplitudes& j, const ReservoirConfig& r, const ChannelParams& c, double t) {
  r.validate();
  if (!(t >= 0.0) || !std::isfinite(t)) throw Error(ErrorCode::kInvalidArgument, "t must be finite and >= 0");
  if (j.levels.size() != r.modes()) throw Error(ErrorCode::kInvalidArgument, "amplitudes do not match reservoir");

  const double branch_energy = 0.5 * (c.omega1 + c.omega2);
  const double coupling = 0.5 * (c.mu1 + c.mu2);
  const double qubit_qubit = 0.25 * r.mu12;

  JointAmplitudes out = j;
  for_each_index(j.levels, [&](std::size_t flat, const std::vector<std::size_t>& n) {
    double occupation = 0.0;
    double reservoir = 0.0;
    for (std::size_t a = 0; a < n.size(); ++a) {
      const double na = static_cast<double>(n[a]);
      occupation += na;
      reservoir += c.omega1 * r.omega_ratios[a] * (na + 0.5);
      double cross = 0.0;
      for (std::size_t b = a + 1; b < n.size(); ++b) cross += r.omega_ratios[b] * static_cast<double>(n[b]);
      reservoir += 2.0 * r.mu_cross * c.omega1 * cross * r.omega_ratios[a] * na;
    }
    const double common = reservoir + qubit_qubit;
    const double e_plus = branch_energy + coupling * occupation + common;
    const double e_minus = -branch_energy - coupling * occupation + common;
    out.plus[flat] *= std::polar(1.0, -e_plus * t);
    out.minus[flat] *= std::polar(1.0, -e_minus * t);
  });
  return out;
}

ComplexMatrix joint_density_matrix(const JointAmplitudes& j, std::size_t max_dim) {
  const std::size_t m = j.size();
  const std::size_t dim = 4 * m;
  if (dim > max_dim) throw Error(ErrorCode::kInvalidArgument, "joint space too large for a dense matrix");
  std::vector<Complex> psi(dim, 0.0);
  // Qubit index is the most significant: |++> block first, |--> block last.
  for (std::size_t k = 0; k < m; ++k) {
    psi[k] = j.weight_plus * j.plus[k];
    psi[3 * m + k] = j.weight_minus * j.minus[k];
  }
  ComplexMatrix out(dim);
  for (std::size_t a = 0; a < dim; ++a) {
    if (psi[a] == 0.0) continue;
    for (std::size_t b = 0; b < dim; ++b) out(a, b) = psi[a] * std::conj(psi[b]);
  }
  return out;
}

OracleComparison reduce_and_compare(const JointAmplitudes& evolved, double epsilon, const ReservoirConfig& r,
                                    const ChannelParams& c, double t) {
  double pp = 0.0, mm = 0.0;
  Complex overlap = 0.0;
  for (std::size_t k = 0; k < evolved.size(); ++k) {
    pp += std::norm(evolved.plus[k]);
    mm += std::norm(evolved.minus[k]);
    overlap += evolved.plus[k] * std::conj(evolved.minus[k]);
  }
  ComplexMatrix m(4);
  m(0, 0) = evolved.weight_plus * evolved.weight_plus * pp;
  m(3, 3) = evolved.weight_minus * evolved.weight_minus * mm;
  m(0, 3) = evolved.weight_plus * evolved.weight_minus * overlap;
  m(3, 0) = std::conj(m(0, 3));

  // Truncation removes up to cutoff_tail of weight per mode.
  Tolerances tol;
  tol.herm = 1e-10 + 10.0 * static_cast<double>(r.modes()) * r.cutoff_tail;
  TwoQubitState rho = TwoQubitState::from_matrix(m, tol);

  ChannelParams closed = c;
  closed.ntilde = r.ntilde();
  const TwoQubitState ref = evolve(epsilon, closed, t);

  const Complex co = rho(0, 3);
  const Complex cc = ref(0, 3);
  const double phase = std::abs(co) > 0.0 && std::abs(cc) > 0.0 ? std::arg(co / cc) : 0.0;
  const double diag = std::max(std::abs(m(0, 0) - ref(0, 0)), std::abs(m(3, 3) - ref(3, 3)));
  return {std::move(rho), max_abs_diff(m, ref.matrix()), diag, std::abs(std::abs(co) - std::abs(cc)), phase};
}

}  // namespace dephase
