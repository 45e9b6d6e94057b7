#pragma once

// Derivative-free Nelder-Mead minimizer with dimension-adaptive coefficients.

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace dephase {

struct SimplexOptions {
  std::size_t max_iters = 5000;
  double ftol = 1e-10;        // stop when max - min objective over the simplex is below this
  double xtol = 1e-10;        // ... and the simplex diameter is below this
  double initial_step = 0.1;  // edge length of the starting simplex
};

struct SimplexResult {
  std::vector<double> x;
  double value = 0.0;
  std::size_t iterations = 0;
  bool converged = false;
};

using Objective = std::function<double(std::span<const double>)>;

SimplexResult nelder_mead(const Objective& f, std::vector<double> start, const SimplexOptions& opts);

}  // namespace dephase
