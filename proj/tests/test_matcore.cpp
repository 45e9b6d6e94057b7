#include <doctest.h>

#include <random>
#include <vector>

#include "dephase/error.hpp"
#include "dephase/matcore.hpp"
#include "support.hpp"

using namespace dephase;
using testing_support::bell_matrix;

namespace {

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an exception");
  return ErrorCode::kNumericalFailure;
}

}  // namespace

TEST_CASE("matrix construction rejects bad input") {
  CHECK_THROWS_AS(ComplexMatrix(2, {1, 2, 3}), Error);
  CHECK_THROWS_AS(ComplexMatrix(2, {1, 0, 0, std::nan("")}), Error);
  CHECK_THROWS_AS(ComplexMatrix(2, {1, 0, 0, Complex(0, INFINITY)}), Error);
  const ComplexMatrix m(2, {1, Complex(2, 1), 3, 4});
  CHECK(m.adjoint()(0, 1) == Complex(3, 0));
  CHECK(m.adjoint()(1, 0) == Complex(2, -1));
  CHECK(m.trace() == Complex(5, 0));
}

TEST_CASE("hermitian_eig on simple inputs") {
  auto es = hermitian_eig(ComplexMatrix::identity(4));
  for (double v : es.values) CHECK(v == doctest::Approx(1.0).epsilon(1e-15));

  es = hermitian_eig(ComplexMatrix::diagonal({0.5, 0, 0, 0.5}));
  const std::vector<double> want{0, 0, 0.5, 0.5};
  for (std::size_t i = 0; i < 4; ++i) CHECK(std::abs(es.values[i] - want[i]) < 1e-15);

  // Eps = 1/2 state with |A| = 0.5.
  ComplexMatrix rho = ComplexMatrix::diagonal({0.5, 0, 0, 0.5});
  rho(0, 3) = rho(3, 0) = 0.25;
  es = hermitian_eig(rho);
  const std::vector<double> want2{0, 0, 0.25, 0.75};
  for (std::size_t i = 0; i < 4; ++i) CHECK(std::abs(es.values[i] - want2[i]) < 1e-14);
}

TEST_CASE("hermitian_eig rejects non-Hermitian input") {
  ComplexMatrix m = ComplexMatrix::identity(3);
  m(0, 1) = 1e-6;
  CHECK(code_of([&] { hermitian_eig(m); }) == ErrorCode::kNotHermitian);
  m(0, 1) = 1e-12;  // within tolerance
  CHECK_NOTHROW(hermitian_eig(m));
}

TEST_CASE("eigendecomposition reconstructs random Hermitian matrices") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t dim = 1 + trial % 8;
    const ComplexMatrix m = testing_support::random_hermitian(rng, dim);
    const EigenSystem es = hermitian_eig(m);
    CHECK(std::is_sorted(es.values.begin(), es.values.end()));
    CHECK(max_abs_diff(reconstruct(es, es.values), m) < 1e-9);
    const ComplexMatrix gram = es.vectors.adjoint() * es.vectors;
    CHECK(max_abs_diff(gram, ComplexMatrix::identity(dim)) < 1e-10);
    const ComplexMatrix mv = m * es.vectors;
    for (std::size_t i = 0; i < dim; ++i)
      for (std::size_t r = 0; r < dim; ++r)
        CHECK(std::abs(mv(r, i) - es.values[i] * es.vectors(r, i)) < 1e-9 * std::max(1.0, m.max_abs()));
  }
}

TEST_CASE("psd_sqrt") {
  CHECK(max_abs_diff(psd_sqrt(ComplexMatrix::identity(4)), ComplexMatrix::identity(4)) < 1e-15);
  CHECK(max_abs_diff(psd_sqrt(ComplexMatrix::diagonal({4, 1, 0, 9})), ComplexMatrix::diagonal({2, 1, 0, 3})) <
        1e-14);
  // A projector is its own root.
  CHECK(max_abs_diff(psd_sqrt(bell_matrix()), bell_matrix()) < 1e-14);

  CHECK(code_of([] { psd_sqrt(ComplexMatrix::diagonal({1, -1e-3})); }) == ErrorCode::kNotPSD);
  const ComplexMatrix clipped = psd_sqrt(ComplexMatrix::diagonal({1, -1e-10}));
  CHECK(clipped(1, 1) == Complex(0.0));
}

TEST_CASE("psd_sqrt squares back for random PSD matrices") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t dim = 1 + trial % 8;
    const std::size_t rank = 1 + (trial / 8) % dim;
    const ComplexMatrix m = testing_support::random_psd(rng, dim, rank);
    const ComplexMatrix s = psd_sqrt(m);
    CHECK(s.is_hermitian(1e-12));
    CHECK(hermitian_eig(s).values.front() >= -1e-12);
    CHECK(max_abs_diff(s * s, m) < 1e-8);
  }
}

TEST_CASE("partial transpose") {
  const ComplexMatrix d = ComplexMatrix::diagonal({0.1, 0.2, 0.3, 0.4});
  CHECK(max_abs_diff(partial_transpose(d), d) == 0.0);

  const auto es = hermitian_eig(partial_transpose(bell_matrix()));
  CHECK(es.values[0] == doctest::Approx(-0.5));
  for (int i = 1; i < 4; ++i) CHECK(es.values[i] == doctest::Approx(0.5));

  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    const ComplexMatrix m = testing_support::random_hermitian(rng, 4);
    for (Subsystem s : {Subsystem::kFirst, Subsystem::kSecond}) {
      const ComplexMatrix pt = partial_transpose(m, s);
      CHECK(max_abs_diff(partial_transpose(pt, s), m) == 0.0);
      CHECK(pt.trace() == m.trace());
      CHECK(max_abs_diff(pt, pt.adjoint()) == 0.0);
    }
  }
  CHECK(code_of([] { partial_transpose(ComplexMatrix::identity(3)); }) == ErrorCode::kBadDim);
}

TEST_CASE("kron and partial trace") {
  const ComplexMatrix i2 = ComplexMatrix::identity(2);
  CHECK(max_abs_diff(kron(i2, i2), ComplexMatrix::identity(4)) == 0.0);
  const ComplexMatrix p0 = ComplexMatrix::diagonal({1, 0});
  CHECK(max_abs_diff(kron(p0, p0), ComplexMatrix::diagonal({1, 0, 0, 0})) == 0.0);

  std::mt19937_64 rng(5);
  const ComplexMatrix a = testing_support::random_psd(rng, 2, 2);
  const ComplexMatrix b = testing_support::random_psd(rng, 3, 3);
  const ComplexMatrix c = testing_support::random_psd(rng, 2, 2);
  const ComplexMatrix abc = kron(kron(a, b), c);
  const std::vector<std::size_t> dims{2, 3, 2};

  const std::vector<std::size_t> keep0{0};
  CHECK(max_abs_diff(partial_trace(abc, dims, keep0), (b.trace() * c.trace()) * a) < 1e-12);
  const std::vector<std::size_t> keep02{0, 2};
  CHECK(max_abs_diff(partial_trace(abc, dims, keep02), b.trace() * kron(a, c)) < 1e-12);
  const std::vector<std::size_t> keep1{1};
  CHECK(max_abs_diff(partial_trace(abc, dims, keep1), (a.trace() * c.trace()) * b) < 1e-12);

  const std::vector<std::size_t> qubits{2, 2};
  CHECK(max_abs_diff(partial_trace(bell_matrix(), qubits, keep0), Complex(0.5) * i2) < 1e-15);

  const std::vector<std::size_t> wrong{2, 2};
  CHECK(code_of([&] { partial_trace(abc, wrong, keep0); }) == ErrorCode::kBadDims);
  const std::vector<std::size_t> none;
  CHECK(code_of([&] { partial_trace(abc, dims, none); }) == ErrorCode::kBadDims);
}

TEST_CASE("spin flip matches the explicit literal") {
  const ComplexMatrix yy = kron(pauli_y(), pauli_y());
  const ComplexMatrix literal(4, {0, 0, 0, -1, 0, 0, 1, 0, 0, 1, 0, 0, -1, 0, 0, 0});
  CHECK(max_abs_diff(yy, literal) == 0.0);
}

TEST_CASE("singular values are descending") {
  const auto sv = singular_values(ComplexMatrix::diagonal({0.5, -3, 2, 0}));
  REQUIRE(sv.size() == 4);
  CHECK(sv[0] == doctest::Approx(3));
  CHECK(sv[1] == doctest::Approx(2));
  CHECK(sv[2] == doctest::Approx(0.5));
  CHECK(sv[3] == doctest::Approx(0).epsilon(1e-15));
}
