#include "dephase/refsearch.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <random>
#include <thread>

#include "dephase/error.hpp"
#include "dephase/simplex.hpp"

namespace dephase {

void OptimizerConfig::validate() const {
  if (max_iters < 1) throw Error(ErrorCode::kInvalidArgument, "optimizer.max_iters must be >= 1");
  if (restarts < 1) throw Error(ErrorCode::kInvalidArgument, "optimizer.restarts must be >= 1");
  if (!(tol > 0.0)) throw Error(ErrorCode::kInvalidArgument, "optimizer.tol must be > 0");
  if (!(penalty_weight >= 0.0) || !std::isfinite(penalty_weight)) {
    throw Error(ErrorCode::kInvalidArgument, "optimizer.penalty_weight must be finite and >= 0");
  }
}

namespace {

constexpr std::size_t kParams = 16;
// Lower-triangle positions of L, in parameter order after the 4 diagonal reals.
constexpr std::size_t kOffDiag[6][2] = {{1, 0}, {2, 0}, {2, 1}, {3, 0}, {3, 1}, {3, 2}};

struct Candidate {
  ComplexMatrix sigma;
  double raw_pt_min = 0.0;  // PT minimum eigenvalue before the retraction
  bool valid = false;
};

Candidate candidate_from_params(std::span<const double> x) {
  ComplexMatrix l(4);
  for (std::size_t i = 0; i < 4; ++i) l(i, i) = x[i];
  for (std::size_t k = 0; k < 6; ++k) l(kOffDiag[k][0], kOffDiag[k][1]) = Complex(x[4 + 2 * k], x[5 + 2 * k]);
  ComplexMatrix sigma = l * l.adjoint();
  const double tr = sigma.trace().real();
  if (!(tr > 1e-300) || !std::isfinite(tr)) return {ComplexMatrix(4), 0.0, false};
  sigma = Complex(1.0 / tr) * sigma;

  const double pt_min = hermitian_eig(partial_transpose(sigma)).values.front();
  if (pt_min < 0.0) {
    // PT(I/4) = I/4, so mixing toward I/4 shifts every PT eigenvalue by the
    // same affine map; this weight lands the minimum exactly on zero.
    const double p = -pt_min / (0.25 - pt_min);
    sigma = Complex(1.0 - p) * sigma + Complex(0.25 * p) * ComplexMatrix::identity(4);
  }
  return {std::move(sigma), pt_min, true};
}

std::vector<double> params_from_state(const ComplexMatrix& rho) {
  // Cholesky of a slightly lifted rho so rank-deficient inputs factor cleanly.
  const Eigen::MatrixXcd lifted = rho.eigen() + 1e-12 * Eigen::MatrixXcd::Identity(4, 4);
  const Eigen::MatrixXcd l = Eigen::LLT<Eigen::MatrixXcd>(lifted).matrixL();
  std::vector<double> x(kParams);
  for (std::size_t i = 0; i < 4; ++i) x[i] = l(i, i).real();
  for (std::size_t k = 0; k < 6; ++k) {
    const Complex v = l(kOffDiag[k][0], kOffDiag[k][1]);
    x[4 + 2 * k] = v.real();
    x[5 + 2 * k] = v.imag();
  }
  return x;
}

struct RestartOutcome {
  std::vector<double> x;
  double value = std::numeric_limits<double>::infinity();
  std::size_t iterations = 0;
  bool converged = false;
};

// Fidelity against a fixed rho whose square root is computed once.
double sqrt_fidelity(const ComplexMatrix& sqrt_rho, const ComplexMatrix& sigma) {
  double trace_norm = 0.0;
  for (double s : singular_values(sqrt_rho * psd_sqrt(sigma))) trace_norm += s;
  return std::min(trace_norm, 1.0);
}

RestartOutcome run_restart(const ComplexMatrix& sqrt_rho, const ComplexMatrix& rho, const OptimizerConfig& cfg,
                           std::size_t index) {
  const Objective objective = [&](std::span<const double> x) {
    const Candidate c = candidate_from_params(x);
    if (!c.valid) return 1e6;
    const double violation = std::max(0.0, -c.raw_pt_min);
    return 1.0 - sqrt_fidelity(sqrt_rho, c.sigma) + cfg.penalty_weight * violation * violation;
  };

  std::vector<double> start;
  double step = 0.1;
  if (index == 0) {
    start = params_from_state(rho);
    step = 0.05;
  } else {
    std::seed_seq seq{static_cast<std::uint32_t>(cfg.seed), static_cast<std::uint32_t>(cfg.seed >> 32),
                      static_cast<std::uint32_t>(index)};
    std::mt19937_64 rng(seq);
    std::normal_distribution<double> normal(0.0, 0.5);
    start.resize(kParams);
    for (double& v : start) v = normal(rng);
  }

  RestartOutcome out;
  out.x = start;
  out.value = objective(start);
  // Re-seed the simplex around the incumbent with a shrinking step until a
  // fresh run no longer improves on it.
  for (int round = 0; round < 12; ++round) {
    SimplexOptions opts;
    opts.max_iters = cfg.max_iters;
    opts.ftol = cfg.tol;
    opts.xtol = std::sqrt(cfg.tol);
    opts.initial_step = step;
    SimplexResult r = nelder_mead(objective, out.x, opts);
    out.iterations += r.iterations;
    const double gain = out.value - r.value;
    out.converged = r.converged;
    if (r.value < out.value) {
      out.x = std::move(r.x);
      out.value = r.value;
    }
    if (gain <= cfg.tol && round > 0) break;
    step = std::max(step * 0.5, 1e-4);
  }
  return out;
}

}  // namespace

CssResult closest_separable_bures(const TwoQubitState& rho, const OptimizerConfig& cfg) {
  cfg.validate();
  const ComplexMatrix sqrt_rho = psd_sqrt(rho.matrix());

  std::vector<RestartOutcome> outcomes(cfg.restarts);
  {
    std::vector<std::jthread> workers;
    workers.reserve(cfg.restarts);
    for (std::size_t i = 0; i < cfg.restarts; ++i) {
      workers.emplace_back([&, i] { outcomes[i] = run_restart(sqrt_rho, rho.matrix(), cfg, i); });
    }
  }

  std::size_t best = 0;
  std::size_t total_iters = 0;
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    total_iters += outcomes[i].iterations;
    if (outcomes[i].value < outcomes[best].value) best = i;
  }

  Candidate c = candidate_from_params(outcomes[best].x);
  if (!c.valid) throw Error(ErrorCode::kNoConvergence, "optimizer produced a degenerate candidate");
  // Re-validate; the retraction keeps sigma a density matrix up to roundoff.
  TwoQubitState sigma = TwoQubitState::from_matrix(std::move(c.sigma));
  const double pt_min = hermitian_eig(partial_transpose(sigma.matrix())).values.front();
  const double f = uhlmann_fidelity(rho, sigma);
  return CssResult{std::move(sigma), std::clamp(1.0 - std::sqrt(f), 0.0, 1.0), total_iters,
                   outcomes[best].converged, pt_min, best};
}

namespace {

double mixed_reference_measure(double abs_a, double x, double phase_offset) {
  if (!(abs_a >= 0.0 && abs_a <= 1.0)) throw Error(ErrorCode::kInvalidArgument, "abs_a must lie in [0, 1]");
  const double beta = 2.0 * abs_a * x * std::cos(phase_offset);
  const double alpha2 = (1.0 + beta) * (1.0 + beta) - (1.0 - abs_a * abs_a) * (1.0 - 4.0 * x * x);
  const double alpha = std::sqrt(std::max(0.0, alpha2));
  // Roundoff can push 1 + beta - alpha a hair below zero when rho = sigma_m.
  const double lower = 1.0 + beta - alpha;
  const double lower_root = lower < 0.0 && lower > -1e-14 ? 0.0 : std::sqrt(lower);
  return 1.0 - 0.5 * (lower_root + std::sqrt(1.0 + beta + alpha));
}

}  // namespace

double e_mixed_closed(double abs_a, double ntilde, double phase_offset) {
  if (!(ntilde >= 0.0)) throw Error(ErrorCode::kInvalidArgument, "ntilde must be >= 0");
  return mixed_reference_measure(abs_a, 0.5 * std::exp(-2.0 * ntilde), phase_offset);
}

double e_mixed_closed_as_printed(double abs_a, double ntilde, double phase_offset) {
  if (!(ntilde >= 0.0)) throw Error(ErrorCode::kInvalidArgument, "ntilde must be >= 0");
  const double x = std::exp(-2.0 * ntilde);
  if (4.0 * x * x > 1.0) return std::numeric_limits<double>::quiet_NaN();
  return mixed_reference_measure(abs_a, x, phase_offset);
}

double e_maxmixed_closed(double abs_a) {
  if (!(abs_a >= 0.0 && abs_a <= 1.0)) throw Error(ErrorCode::kInvalidArgument, "abs_a must lie in [0, 1]");
  return 1.0 - 0.5 * (std::sqrt(1.0 - abs_a) + std::sqrt(1.0 + abs_a));
}

double e_separable_family(double epsilon, double abs_a) {
  const double n = negativity_closed(epsilon, abs_a);
  const double f = 0.5 * (1.0 + std::sqrt(std::max(0.0, 1.0 - n * n)));
  return 1.0 - std::sqrt(f);
}

double e_pure(const TwoQubitState& rho, const TwoQubitState& sigma_p) {
  const ComplexMatrix& s = sigma_p.matrix();
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j : {1, 2})
      if (std::abs(s(i, j)) > 1e-12 || std::abs(s(j, i)) > 1e-12) {
        throw Error(ErrorCode::kInvalidArgument, "pure reference must live on span{|++>, |-->}");
      }
  return 1.0 - relative_entropy_linearized(rho, sigma_p);
}

double e_pure_closed(double epsilon, double abs_a) {
  if (!(epsilon >= 0.0 && epsilon <= 1.0) || !(abs_a >= 0.0 && abs_a <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "epsilon and abs_a must lie in [0, 1]");
  }
  const double n = family_norm(epsilon);
  const double e2 = epsilon * epsilon * (1.0 - epsilon) * (1.0 - epsilon);
  return 1.0 - 2.0 * e2 * (1.0 - abs_a) / (n * n);
}

Section5Residuals section5_relations(const MeasureRecord& r) {
  constexpr double d = 4.0;
  constexpr double k = 2.0 * d / (d - 1.0);
  const double m = negativity_closed(r.epsilon, 1.0);
  const double ep = r.e_pure;
  const double er = r.er_lin;
  const double c2 = r.concurrence_paper * r.concurrence_paper;

  Section5Residuals out;
  out.purity_half = r.delta12 - k * ep * er;
  out.triangle_half = c2 - ep * ep - er * er;

  const double bracket = 0.5 * m * (er * (1.0 + m) + (ep - 1.0) * (1.0 - m));
  out.purity_general = r.delta12 * m * m - k * (er * k * (ep - 1.0) + bracket);
  out.purity_general_corrected = r.delta12 * m * m - k * (er * (ep - 1.0) + bracket);

  const double squares = (ep - 1.0) * (ep - 1.0) + er * er;
  out.concurrence_general = c2 * m * m - (squares + ep * m * (1.0 + m) + er * m * (1.0 - m));
  out.concurrence_general_corrected = c2 * m * m - (squares + m * m * (ep - er));
  return out;
}

namespace {

struct Point {
  double x;
  double e_mixed;
  double negativity;
};

double abscissa(const MeasureRecord& r, OrderingAxis axis) {
  return axis == OrderingAxis::kLinearEntropy ? r.delta12 : r.e_pure;
}

// Linear interpolation of negativity at x; points sorted by x, x inside range.
double interpolate_negativity(const std::vector<Point>& pts, double x) {
  auto hi = std::lower_bound(pts.begin(), pts.end(), x, [](const Point& p, double v) { return p.x < v; });
  if (hi == pts.begin()) return hi->negativity;
  if (hi == pts.end()) return pts.back().negativity;
  auto lo = hi - 1;
  if (hi->x == lo->x) return hi->negativity;
  const double w = (x - lo->x) / (hi->x - lo->x);
  return lo->negativity + w * (hi->negativity - lo->negativity);
}

}  // namespace

OrderingReport ordering_check(const std::vector<MeasureRecord>& records, OrderingAxis axis) {
  constexpr double slack = 1e-12;
  OrderingReport report;
  std::map<double, std::vector<Point>> groups;

  for (const MeasureRecord& r : records) {
    groups[r.epsilon].push_back({abscissa(r, axis), r.e_mixed, r.negativity});
    const auto check = [&](double lhs, double rhs, const char* name) {
      if (lhs > rhs + slack) report.violations.push_back({r.epsilon, r.gamma, name, lhs - rhs});
    };
    check(r.e_mixed, r.negativity, "e_mixed<=negativity");
    check(r.negativity, r.e_pure, "negativity<=fidelity");
    check(r.e_pure, r.concurrence_paper, "fidelity<=concurrence_paper");
  }

  for (auto& [eps, pts] : groups) {
    std::stable_sort(pts.begin(), pts.end(), [](const Point& a, const Point& b) { return a.x < b.x; });
    report.epsilons.push_back(eps);
    report.violations_per_epsilon.push_back(static_cast<std::size_t>(
        std::count_if(report.violations.begin(), report.violations.end(),
                      [eps = eps](const OrderingViolation& v) { return v.epsilon == eps; })));
  }

  // Keep the widest gap in each direction as the witness.
  for (const auto& [eps_a, pts_a] : groups) {
    for (const auto& [eps_b, pts_b] : groups) {
      if (eps_a == eps_b || pts_b.empty()) continue;
      const double lo = pts_b.front().x;
      const double hi = pts_b.back().x;
      for (const Point& p : pts_a) {
        if (p.x < lo || p.x > hi) continue;
        const double n_b = interpolate_negativity(pts_b, p.x);
        const double gap = p.e_mixed - n_b;
        CrossWitness& w = gap > 0.0 ? report.e_mixed_above : report.e_mixed_below;
        if (std::abs(gap) <= slack) continue;
        if (!w.found || std::abs(gap) > std::abs(w.e_mixed - w.negativity)) {
          w = {true, eps_a, eps_b, p.x, p.e_mixed, n_b};
        }
      }
    }
  }
  return report;
}

}  // namespace dephase
