#include "dephase/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace dephase {

namespace {

struct Vertex {
  std::vector<double> x;
  double f;
};

}  // namespace

SimplexResult nelder_mead(const Objective& f, std::vector<double> start, const SimplexOptions& opts) {
  const std::size_t n = start.size();
  const double dim = static_cast<double>(n);
  // Gao & Han adaptive parameters; they reduce to the classic ones for n = 2.
  const double reflect = 1.0;
  const double expand = 1.0 + 2.0 / dim;
  const double contract = 0.75 - 1.0 / (2.0 * dim);
  const double shrink = 1.0 - 1.0 / dim;

  std::vector<Vertex> simplex;
  simplex.reserve(n + 1);
  simplex.push_back({start, f(start)});
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> x = start;
    x[i] += opts.initial_step;
    const double fx = f(x);
    simplex.push_back({std::move(x), fx});
  }

  const auto order = [&] {
    std::stable_sort(simplex.begin(), simplex.end(), [](const Vertex& a, const Vertex& b) { return a.f < b.f; });
  };
  const auto along = [&](const std::vector<double>& centroid, const std::vector<double>& worst, double coeff) {
    std::vector<double> x(n);
    for (std::size_t k = 0; k < n; ++k) x[k] = centroid[k] + coeff * (centroid[k] - worst[k]);
    return x;
  };

  SimplexResult result;
  std::vector<double> centroid(n);
  order();
  for (result.iterations = 0; result.iterations < opts.max_iters; ++result.iterations) {
    const double spread = simplex.back().f - simplex.front().f;
    double diameter = 0.0;
    for (std::size_t i = 1; i <= n; ++i)
      for (std::size_t k = 0; k < n; ++k)
        diameter = std::max(diameter, std::abs(simplex[i].x[k] - simplex[0].x[k]));
    if (spread <= opts.ftol && diameter <= opts.xtol) {
      result.converged = true;
      break;
    }

    std::fill(centroid.begin(), centroid.end(), 0.0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k) centroid[k] += simplex[i].x[k] / dim;

    Vertex& worst = simplex.back();
    std::vector<double> xr = along(centroid, worst.x, reflect);
    const double fr = f(xr);
    if (fr < simplex.front().f) {
      std::vector<double> xe = along(centroid, worst.x, expand);
      const double fe = f(xe);
      worst = fe < fr ? Vertex{std::move(xe), fe} : Vertex{std::move(xr), fr};
    } else if (fr < simplex[n - 1].f) {
      worst = {std::move(xr), fr};
    } else {
      const bool outside = fr < worst.f;
      std::vector<double> xc = along(centroid, worst.x, outside ? contract : -contract);
      const double fc = f(xc);
      if (fc < (outside ? fr : worst.f)) {
        worst = {std::move(xc), fc};
      } else {
        for (std::size_t i = 1; i <= n; ++i) {
          for (std::size_t k = 0; k < n; ++k)
            simplex[i].x[k] = simplex[0].x[k] + shrink * (simplex[i].x[k] - simplex[0].x[k]);
          simplex[i].f = f(simplex[i].x);
        }
      }
    }
    order();
  }
  result.x = simplex.front().x;
  result.value = simplex.front().f;
  return result;
}

}  // namespace dephase
