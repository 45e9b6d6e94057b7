#include <doctest.h>

#include <cmath>
#include <numbers>

#include "dephase/channel.hpp"
#include "dephase/error.hpp"
#include "dephase/measures.hpp"
#include "dephase/states.hpp"
#include "support.hpp"

using namespace dephase;
using std::numbers::pi;

TEST_CASE("initial_pure entries") {
  const TwoQubitState s = initial_pure({0.25, 0.0});
  CHECK(s(0, 0).real() == doctest::Approx(0.1).epsilon(1e-15));
  CHECK(s(3, 3).real() == doctest::Approx(0.9).epsilon(1e-15));
  CHECK(s(0, 3).real() == doctest::Approx(0.3).epsilon(1e-15));
  CHECK(s(3, 0).real() == doctest::Approx(0.3).epsilon(1e-15));
  for (std::size_t i : {1, 2})
    for (std::size_t j = 0; j < 4; ++j) CHECK(std::abs(s(i, j)) == 0.0);

  CHECK(max_abs_diff(initial_pure({0.5, 0.0}).matrix(), testing_support::bell_matrix()) < 1e-15);
  CHECK(max_abs_diff(initial_pure({0.0, 0.0}).matrix(), ComplexMatrix::diagonal({0, 0, 0, 1})) == 0.0);

  const TwoQubitState phased = initial_pure({0.5, 0.7});
  CHECK(std::arg(phased(0, 3)) == doctest::Approx(-0.7));
  CHECK(linear_entropy(phased) < 1e-14);
  CHECK_THROWS_AS(initial_pure({1.5, 0.0}), Error);
}

TEST_CASE("validate reports the failing invariant") {
  CHECK(validate(Complex(0.25) * ComplexMatrix::identity(4)).ok());
  const auto two = validate(ComplexMatrix::diagonal({1, 1, 0, 0}));
  REQUIRE(two.violations.size() == 1);
  CHECK(two.violations[0].invariant == "unit_trace");

  ComplexMatrix perturbed = testing_support::bell_matrix();
  perturbed(0, 3) = perturbed(3, 0) = 0.51;
  const auto neg = validate(perturbed);
  REQUIRE(neg.violations.size() == 1);
  CHECK(neg.violations[0].invariant == "positive_semidefinite");
  CHECK(neg.violations[0].magnitude == doctest::Approx(-0.01));

  try {
    TwoQubitState::from_matrix(perturbed);
    FAIL("expected InvalidStateError");
  } catch (const InvalidStateError& e) {
    CHECK(e.code() == ErrorCode::kInvalidState);
    CHECK(e.diagnostics().size() == 1);
  }

  ComplexMatrix skew = testing_support::bell_matrix();
  skew(0, 3) = 0.4;
  CHECK(validate(skew).violations.at(0).invariant == "hermitian");
  CHECK_THROWS_AS(validate(ComplexMatrix::identity(3)), Error);
}

TEST_CASE("reference states") {
  CHECK(max_abs_diff(maximally_mixed().matrix(), ComplexMatrix::diagonal({.25, .25, .25, .25})) == 0.0);

  const TwoQubitState s1 = sigma_m(1.0, 0.0);
  CHECK(s1(0, 3).real() == doctest::Approx(0.0676676416).epsilon(1e-9));
  CHECK(max_abs_diff(sigma_m(0.0, 0.0).matrix(), testing_support::bell_matrix()) < 1e-15);
  CHECK(max_abs_diff(sigma_m(40.0, 0.0).matrix(), ComplexMatrix::diagonal({.5, 0, 0, .5})) < 1e-15);

  for (double nt : {0.0, 0.3, 1.0, 2.5}) {
    const double min_pt = hermitian_eig(partial_transpose(sigma_m(nt, 0.4).matrix())).values.front();
    CHECK(min_pt == doctest::Approx(-0.5 * std::exp(-2 * nt)).epsilon(1e-12));
  }
  CHECK(max_abs_diff(pure_reference({0.3, 1.1}).matrix(), initial_pure({0.3, 1.1}).matrix()) == 0.0);
}

TEST_CASE("decoherence factor") {
  ChannelParams p;  // mu1 + mu2 = 1
  p.ntilde = 1.0;
  const auto f0 = decoherence_factor(p, 0.0);
  CHECK(f0.abs_a == 1.0);
  CHECK(f0.gamma == 0.0);
  CHECK(!std::signbit(f0.gamma));
  CHECK(std::abs(f0.a - Complex(1.0)) < 1e-15);

  CHECK(decoherence_factor(p, pi).gamma == doctest::Approx(0.981684).epsilon(1e-6));
  CHECK(decoherence_factor(p, pi).gamma == doctest::Approx(1 - std::exp(-4.0)).epsilon(1e-14));
  CHECK(decoherence_factor(p, 2 * pi).gamma < 1e-15);
  CHECK(p.revival_period() == doctest::Approx(2 * pi));

  // Periodicity of |A| and gamma over a grid.
  for (int k = 0; k < 64; ++k) {
    const double t = 0.1 * k;
    const auto a = decoherence_factor(p, t);
    const auto b = decoherence_factor(p, t + p.revival_period());
    CHECK(std::abs(a.abs_a - b.abs_a) < 1e-12);
    CHECK(std::abs(a.gamma - b.gamma) < 1e-12);
    CHECK(std::abs(a.gamma - (1 - a.abs_a * a.abs_a)) < 1e-14);
    CHECK(std::abs(std::polar(a.abs_a, -a.phase) - a.a) < 1e-14);
  }

  ChannelParams bad = p;
  bad.ntilde = -1;
  CHECK_THROWS_AS(bad.validate(), Error);
  bad = p;
  bad.mu1 = bad.mu2 = 0;
  CHECK_THROWS_AS(bad.revival_period(), Error);
  CHECK_THROWS_AS(decoherence_factor(p, -1.0), Error);
}

TEST_CASE("Kraus operators") {
  const auto k0 = kraus_ops(0.0);
  CHECK(max_abs_diff(k0.e0, ComplexMatrix::diagonal({1, 0, 0, 1})) < 1e-15);
  CHECK(k0.e1.max_abs() < 1e-15);
  const auto k1 = kraus_ops(1.0);
  CHECK(max_abs_diff(k1.e0, ComplexMatrix::diagonal({1, 0, 0, 0})) < 1e-15);
  CHECK(max_abs_diff(k1.e1, ComplexMatrix::diagonal({0, 0, 0, 1})) < 1e-15);

  for (double g : {0.0, 0.2, 0.75, 1.0}) {
    const auto k = kraus_ops(g);
    const ComplexMatrix sum = k.e0.adjoint() * k.e0 + k.e1.adjoint() * k.e1;
    CHECK(max_abs_diff(sum, ComplexMatrix::diagonal({1, 0, 0, 1})) < 1e-15);
  }
  CHECK_THROWS_AS(kraus_ops(1.5), Error);
}

TEST_CASE("apply_channel") {
  const TwoQubitState bell = testing_support::bell();
  CHECK(max_abs_diff(apply_channel(bell, 0.0).matrix(), bell.matrix()) < 1e-15);
  CHECK(max_abs_diff(apply_channel(bell, 1.0).matrix(), ComplexMatrix::diagonal({.5, 0, 0, .5})) < 1e-15);
  CHECK(std::abs(apply_channel(bell, 0.75)(0, 3)) == doctest::Approx(0.25).epsilon(1e-15));

  const TwoQubitState mixed = maximally_mixed();
  try {
    apply_channel(mixed, 0.5);
    FAIL("expected kUnsupportedSubspace");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kUnsupportedSubspace);
  }
}

TEST_CASE("evolve") {
  const ChannelParams p{1.0, 1.0, 0.5, 0.5, 1.0};
  for (double eps : {0.0, 0.25, 0.5, 0.9}) {
    CHECK(max_abs_diff(evolve(eps, p, 0.0).matrix(), initial_pure({eps, 0.0}).matrix()) < 1e-15);
  }
  for (double t : {0.0, 0.4, 1.7, 3.0}) {
    CHECK(max_abs_diff(evolve(0.0, p, t).matrix(), ComplexMatrix::diagonal({0, 0, 0, 1})) == 0.0);
    // The channel picture and the closed form agree.
    const auto f = decoherence_factor(p, t);
    const TwoQubitState via_kraus = apply_channel(initial_pure({0.3, f.phase}), f.gamma);
    CHECK(max_abs_diff(via_kraus.matrix(), evolve(0.3, p, t).matrix()) < 1e-14);
  }
  ChannelParams strong = p;
  strong.ntilde = 30;
  CHECK(max_abs_diff(evolve(0.5, strong, pi).matrix(), ComplexMatrix::diagonal({.5, 0, 0, .5})) < 1e-15);
}
