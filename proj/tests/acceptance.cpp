// Acceptance run: one PASS/FAIL line per criterion, details indented below.
//
// Exit status is 0 only if every criterion passes, or every failing one is
// named with --known-fail ID (these still print FAIL and are counted).

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <numbers>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "dephase/app.hpp"
#include "dephase/channel.hpp"
#include "dephase/measures.hpp"
#include "dephase/oracle.hpp"
#include "dephase/refsearch.hpp"
#include "support.hpp"

using namespace dephase;

namespace {

struct Outcome {
  std::string id;
  bool pass;
};

std::vector<Outcome> g_outcomes;

void line(const std::string& id, bool pass, const std::string& title) {
  std::printf("criterion %-3s %s  %s\n", id.c_str(), pass ? "PASS" : "FAIL", title.c_str());
  g_outcomes.push_back({id, pass});
}

template <typename... Args>
void detail(const char* fmt, Args... args) {
  std::printf("    ");
  std::printf(fmt, args...);
  std::printf("\n");
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

TwoQubitState family(double eps, double gamma) { return apply_channel(initial_pure({eps, 0.0}), gamma); }

void criterion_1() {
  OracleCheckConfig cfg;  // 3 resonant modes, ntilde 1, 50 points over one period
  cfg.modes = 3;
  cfg.ntilde = 1.0;
  cfg.cutoff_tail = 1e-10;
  cfg.t_steps = 50;
  const ChannelParams channel{1.0, 1.0, 0.5, 0.5, 1.0};
  const auto t0 = std::chrono::steady_clock::now();
  const OracleReport rep = run_oracle_check(cfg, channel);
  const double secs = seconds_since(t0);
  const double worst = *std::max_element(rep.max_abs_diff.begin(), rep.max_abs_diff.end());
  const bool ok = rep.equivalence_mode && rep.t_grid.size() == 50 && worst <= 1e-8 && secs < 10.0;
  line("1", ok, "oracle equivalence, 3 resonant modes, ntilde 1, 50 t points");
  detail("max entrywise |reduced - closed form| = %.3e (limit 1e-8), runtime %.2f s (limit 10 s)", worst, secs);
}

void criterion_2(const std::vector<SweepRow>& rows) {
  double max_d = -1.0, at_eps = 0.0, at_gamma = 0.0;
  bool below = true;
  for (const auto& row : rows) {
    const auto& r = row.record;
    if (r.delta12 > max_d) {
      max_d = r.delta12;
      at_eps = r.epsilon;
      at_gamma = r.gamma;
    }
    below = below && r.delta12 <= 2.0 / 3.0 + 1e-12;
  }
  const bool ok = std::abs(max_d - 2.0 / 3.0) <= 1e-9 && at_eps == 0.5 && at_gamma > 1 - 1e-9 && below &&
                  2.0 / 3.0 < 8.0 / 9.0;
  line("2", ok, "max linear entropy over the sweep is 2/3 at eps = 1/2, gamma -> 1");
  detail("max delta12 = %.15f (|diff| %.2e) at eps = %g, gamma = %.12f; all rows <= 2/3: %s", max_d,
         std::abs(max_d - 2.0 / 3.0), at_eps, at_gamma, below ? "yes" : "no");
}

void criterion_3() {
  double neg = 0.0, lin = 0.0, mono_d = 0.0, mono_c = 0.0;
  for (int i = 0; i < 50; ++i)
    for (int j = 0; j < 50; ++j) {
      const double eps = i / 49.0, gamma = j / 49.0;
      const TwoQubitState rho = family(eps, gamma);
      neg = std::max(neg, std::abs(negativity(rho) - negativity_closed(eps, std::sqrt(1 - gamma))));
      lin = std::max(lin, std::abs(linear_entropy(rho) - linear_entropy_closed(eps, gamma)));
      const auto m = monotonic_relations_check(eps, gamma);
      mono_d = std::max(mono_d, std::abs(m.delta12));
      mono_c = std::max(mono_c, std::abs(m.concurrence));
    }
  const bool ok = neg <= 1e-12 && lin <= 1e-12 && mono_d <= 1e-12 && mono_c <= 1e-12;
  line("3", ok, "closed forms vs spectral evaluation on a 50x50 (eps, gamma) grid");
  detail("negativity %.2e, linear entropy %.2e, monotonic relations %.2e / %.2e (limit 1e-12)", neg, lin, mono_d,
         mono_c);
}

void criterion_4() {
  const ChannelParams p{1.0, 1.0, 0.5, 0.5, 6.0};
  Section5Residuals half{}, general{};
  const auto keep = [](double& acc, double v) { acc = std::max(acc, std::abs(v)); };
  for (int k = 0; k <= 200; ++k) {
    const double t = p.revival_period() * k / 200.0;
    const Section5Residuals h = section5_relations(compute_record(0.5, p, t));
    keep(half.purity_half, h.purity_half);
    keep(half.triangle_half, h.triangle_half);
    for (double eps : {0.05, 0.12, 0.19, 0.26, 0.3, 0.32, 0.37, 0.42, 0.5}) {
      const Section5Residuals g = section5_relations(compute_record(eps, p, t));
      keep(general.purity_general, g.purity_general);
      keep(general.concurrence_general, g.concurrence_general);
      keep(general.purity_general_corrected, g.purity_general_corrected);
      keep(general.concurrence_general_corrected, g.concurrence_general_corrected);
    }
  }
  line("4a", half.purity_half <= 1e-12 && half.triangle_half <= 1e-12,
       "eps = 1/2 purity and triangular identities");
  detail("max |delta12 - (8/3) E_p E_r| = %.2e, max |C^2 - E_p^2 - E_r^2| = %.2e (limit 1e-12)", half.purity_half,
         half.triangle_half);

  line("4b", general.purity_general <= 1e-12 && general.concurrence_general <= 1e-12,
       "general-eps purity and concurrence relations as printed");
  detail("max residual as printed: purity %.3e, concurrence %.3e (limit 1e-12)", general.purity_general,
         general.concurrence_general);
  const MeasureRecord ex = compute_record(0.3, p, 0.9);
  const Section5Residuals exr = section5_relations(ex);
  detail("at eps = 0.3, gamma = %.3f: purity %.4e, concurrence %.4e; initial negativity N0 = %.4e", ex.gamma,
         exr.purity_general, exr.concurrence_general, negativity_closed(0.3, 1.0));
  detail("repaired forms (inner 8/3 factor dropped; N^2 (E_p - E_r) tail): %.2e / %.2e",
         general.purity_general_corrected, general.concurrence_general_corrected);
}

void criterion_5(const std::vector<SweepRow>& rows) {
  std::vector<MeasureRecord> records;
  for (const auto& r : rows) records.push_back(r.record);
  const OrderingReport rep = ordering_check(records, OrderingAxis::kLinearEntropy);
  const std::vector<double> wanted{0.05, 0.12, 0.19, 0.26, 0.32, 0.37, 0.42, 0.5};
  const bool eps_ok = rep.epsilons == wanted;
  const bool ok = eps_ok && rep.total_violations() == 0 && rep.no_global_order();
  line("5", ok, "pointwise ordering e_mixed <= N <= F <= C_paper, no global order across eps");
  std::string per;
  for (std::size_t i = 0; i < rep.epsilons.size(); ++i) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%s%g:%zu", i ? " " : "", rep.epsilons[i], rep.violations_per_epsilon[i]);
    per += buf;
  }
  detail("violations per eps: %s", per.c_str());
  const auto& a = rep.e_mixed_above;
  const auto& b = rep.e_mixed_below;
  detail("e_mixed(%g) = %.4f > N(%g) = %.4f at delta12 = %.4f", a.epsilon_a, a.e_mixed, a.epsilon_b, a.negativity,
         a.abscissa);
  detail("e_mixed(%g) = %.4f < N(%g) = %.4f at delta12 = %.4f", b.epsilon_a, b.e_mixed, b.epsilon_b, b.negativity,
         b.abscissa);
}

void criterion_6() {
  const double grid = testing_support::bell_best_product_overlap();
  const double reference = 1.0 - std::sqrt(grid);
  double worst_time = 0.0;
  double min_pt = 1.0;
  const auto run = [&](const TwoQubitState& s) {
    const auto t0 = std::chrono::steady_clock::now();
    CssResult r = closest_separable_bures(s);
    worst_time = std::max(worst_time, seconds_since(t0));
    min_pt = std::min(min_pt, r.pt_min_eig);
    return r;
  };
  const CssResult bell = run(testing_support::bell());
  double sep = 0.0;
  for (const TwoQubitState& s : {maximally_mixed(), testing_support::diag_state(0.1, 0.2, 0.3, 0.4),
                                 family(0.5, 1.0), family(0.3, 1.0)}) {
    sep = std::max(sep, run(s).e_value);
  }
  const bool ok = std::abs(bell.e_value - reference) <= 1e-4 && sep <= 1e-6 && min_pt >= -1e-7 && worst_time < 5.0;
  line("6", ok, "closest separable state search");
  detail("Bell: %.10f vs grid oracle %.10f (|diff| %.2e, limit 1e-4); separable inputs max %.2e (limit 1e-6)",
         bell.e_value, reference, std::abs(bell.e_value - reference), sep);
  detail("min pt_min_eig %.2e (limit -1e-7), slowest call %.2f s (limit 5 s)", min_pt, worst_time);

  // Not a pass condition: sigma_m is itself not PPT, so its distance need not be the minimum.
  const double abs_a = std::exp(-1.0);
  const CssResult half = closest_separable_bures(family(0.5, 1.0 - abs_a * abs_a));
  detail("eps = 1/2, ntilde = 1, |A| = e^-1: distance to sigma_m %.6f, PPT minimum %.6f, family closed form %.6f",
         e_mixed_closed(abs_a, 1.0, 0.0), half.e_value, e_separable_family(0.5, abs_a));
}

void criterion_7(const std::vector<SweepRow>& rows) {
  double wootters = 0.0;
  for (int i = 0; i <= 40; ++i)
    for (int j = 0; j <= 40; ++j) {
      const double eps = i / 40.0, gamma = j / 40.0;
      const TwoQubitState rho = family(eps, gamma);
      wootters = std::max(wootters, std::abs(concurrence_wootters(rho) - negativity(rho)));
    }

  std::mt19937_64 rng(2024);
  double sym = 0.0, self = 0.0, pure = 0.0;
  for (int k = 0; k < 200; ++k) {
    const TwoQubitState a = testing_support::random_state(rng, 1 + k % 4);
    const TwoQubitState b = testing_support::random_state(rng, 1 + (k / 4) % 4);
    const TwoQubitState p = testing_support::random_state(rng, 1);
    sym = std::max(sym, std::abs(uhlmann_fidelity(a, b) - uhlmann_fidelity(b, a)));
    self = std::max(self, std::abs(uhlmann_fidelity(a, a) - 1.0));
    pure = std::max(pure, std::abs(uhlmann_fidelity(a, p) - (a.matrix() * p.matrix()).trace().real()));
  }

  bool monotone = true;
  double prev = -1.0;
  for (int k = 0; k <= 10000; ++k) {
    const double e = eof(k / 10000.0);
    monotone = monotone && e >= prev;
    prev = e;
  }

  double identity = 0.0;
  const ChannelParams p{1.0, 1.0, 0.5, 0.5, 6.0};
  for (const auto& row : rows) {
    const auto& r = row.record;
    const TwoQubitState rho = evolve(r.epsilon, p, r.t);
    const TwoQubitState sp = pure_reference({r.epsilon, decoherence_factor(p, r.t).phase});
    identity = std::max(identity, std::abs(e_pure(rho, sp) + relative_entropy_linearized(rho, sp) - 1.0));
  }

  const bool ok = wootters <= 1e-10 && sym <= 1e-10 && self <= 1e-10 && pure <= 1e-10 && monotone && identity <= 1e-15;
  line("7", ok, "measure pipeline properties");
  detail("|C_W - N| on family %.2e; fidelity symmetry %.2e, F(rho,rho) %.2e, pure reduction %.2e (limit 1e-10)",
         wootters, sym, self, pure);
  detail("eof monotone: %s; max |e_pure + er_lin - 1| = %.2e (limit 1e-15)", monotone ? "yes" : "no", identity);
}

void criterion_8() {
  const double c_paper = concurrence_paper_closed(0.0, 1.0);
  const double c_w = concurrence_wootters(initial_pure({0.0, 0.0}));
  const double f_general = uhlmann_fidelity(testing_support::bell(), maximally_mixed());
  const double e_closed = e_maxmixed_closed(1.0);
  const double f_closed = (1.0 - e_closed) * (1.0 - e_closed);
  const double nt = 1.0;
  const double pt_min = hermitian_eig(partial_transpose(sigma_m(nt, 0.0).matrix())).values.front();
  const bool ok = std::abs(c_paper - 1.0) < 1e-12 && c_w < 1e-12 && std::abs(f_general - 0.25) < 1e-12 &&
                  std::abs(f_closed - 0.5) < 1e-12 && std::abs(pt_min + 0.5 * std::exp(-2 * nt)) < 1e-12 &&
                  pt_min < 0.0;
  line("8", ok, "documented discrepancies show up in the predicted direction");
  detail("eps = 0, |A| = 1: C_paper = %.12f, C_Wootters = %.2e", c_paper, c_w);
  detail("F(Bell, I/4): general %.12f, closed form %.12f", f_general, f_closed);
  detail("min eig of sigma_m^T2 at ntilde = 1: %.12f (expected %.12f)", pt_min, -0.5 * std::exp(-2 * nt));
}

}  // namespace

int main(int argc, char** argv) {
  std::set<std::string> known;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--known-fail") == 0 && i + 1 < argc) {
      known.insert(argv[++i]);
    } else {
      std::fprintf(stderr, "usage: %s [--known-fail ID]...\n", argv[0]);
      return 2;
    }
  }

  SweepConfig sweep;  // eps list 0.5 ... 0.05, 201 points over one period, ntilde 6
  const std::vector<SweepRow> rows = sweep_rows(sweep);

  criterion_1();
  criterion_2(rows);
  criterion_3();
  criterion_4();
  criterion_5(rows);
  criterion_6();
  criterion_7(rows);
  criterion_8();

  std::size_t passed = 0;
  std::vector<std::string> failed, unexpected;
  for (const auto& o : g_outcomes) {
    if (o.pass) {
      ++passed;
      continue;
    }
    failed.push_back(o.id);
    if (!known.count(o.id)) unexpected.push_back(o.id);
  }
  std::string f;
  for (const auto& id : failed) f += " " + id;
  std::printf("summary: %zu passed, %zu failed%s%s\n", passed, failed.size(), failed.empty() ? "" : ":",
              f.c_str());
  for (const auto& id : known)
    if (std::none_of(failed.begin(), failed.end(), [&](const std::string& x) { return x == id; })) {
      std::printf("note: %s was listed as a known failure but passed\n", id.c_str());
    }
  return unexpected.empty() ? 0 : 1;
}
