#pragma once

#include <cmath>
#include <complex>
#include <random>

#include "dephase/matcore.hpp"
#include "dephase/states.hpp"

namespace testing_support {

using dephase::Complex;
using dephase::ComplexMatrix;

inline ComplexMatrix bell_matrix() {
  return ComplexMatrix(4, {0.5, 0, 0, 0.5, 0, 0, 0, 0, 0, 0, 0, 0, 0.5, 0, 0, 0.5});
}

inline dephase::TwoQubitState bell() { return dephase::TwoQubitState::from_matrix(bell_matrix()); }

inline dephase::TwoQubitState diag_state(double a, double b, double c, double d) {
  return dephase::TwoQubitState::from_matrix(ComplexMatrix::diagonal({a, b, c, d}));
}

inline ComplexMatrix random_matrix(std::mt19937_64& rng, std::size_t dim) {
  std::normal_distribution<double> g(0.0, 1.0);
  ComplexMatrix m(dim);
  for (std::size_t r = 0; r < dim; ++r)
    for (std::size_t c = 0; c < dim; ++c) m(r, c) = Complex(g(rng), g(rng));
  return m;
}

inline ComplexMatrix random_hermitian(std::mt19937_64& rng, std::size_t dim) {
  const ComplexMatrix a = random_matrix(rng, dim);
  return Complex(0.5) * (a + a.adjoint());
}

// G G^dagger, optionally rank deficient.
inline ComplexMatrix random_psd(std::mt19937_64& rng, std::size_t dim, std::size_t rank) {
  ComplexMatrix g = random_matrix(rng, dim);
  for (std::size_t c = rank; c < dim; ++c)
    for (std::size_t r = 0; r < dim; ++r) g(r, c) = 0.0;
  return g * g.adjoint();
}

inline dephase::TwoQubitState random_state(std::mt19937_64& rng, std::size_t rank = 4) {
  ComplexMatrix m = random_psd(rng, 4, rank);
  const double tr = m.trace().real();
  return dephase::TwoQubitState::from_matrix(Complex(1.0 / tr) * m);
}

// Independent check on the separable optimum for a Bell state: the largest
// overlap |<Phi+|a b>|^2 over product pure states, searched on a dense grid
// of Bloch angles. For pure targets the best separable fidelity is attained
// on pure product states.
inline double bell_best_product_overlap(int steps = 48) {
  const double pi = std::acos(-1.0);
  double best = 0.0;
  const auto qubit = [](double th, double ph) {
    return std::array<Complex, 2>{std::cos(th / 2), std::polar(std::sin(th / 2), ph)};
  };
  for (int i = 0; i <= steps; ++i) {
    const double th1 = pi * i / steps;
    for (int j = 0; j < steps; ++j) {
      const double ph1 = 2 * pi * j / steps;
      const auto a = qubit(th1, ph1);
      for (int k = 0; k <= steps; ++k) {
        const double th2 = pi * k / steps;
        for (int l = 0; l < steps; ++l) {
          const double ph2 = 2 * pi * l / steps;
          const auto b = qubit(th2, ph2);
          const Complex amp = (a[0] * b[0] + a[1] * b[1]) / std::sqrt(2.0);
          best = std::max(best, std::norm(amp));
        }
      }
    }
  }
  return best;
}

}  // namespace testing_support
