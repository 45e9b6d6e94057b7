#pragma once

// Dense complex matrix kernels for two-qubit density matrices and the
// truncated qubit-reservoir spaces used by the oracle.

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace dephase {

using Complex = std::complex<double>;

// Numerical tolerances shared by every module. Tests may pass tighter ones.
struct Tolerances {
  double herm = 1e-10;  // max |m - m^dagger| entrywise
  double psd = 1e-9;    // eigenvalues in [-psd, 0) are clipped to zero
  // Eigenvalues with magnitude below this are eigensolver roundoff and are
  // treated as exact zeros before square roots are taken.
  double zero_floor = 1e-14;
};

inline constexpr Tolerances kDefaultTolerances{};

// Square complex matrix with value semantics. Entries must be finite.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  explicit ComplexMatrix(std::size_t dim);
  ComplexMatrix(std::size_t dim, std::vector<Complex> row_major);
  explicit ComplexMatrix(Eigen::MatrixXcd m);

  static ComplexMatrix identity(std::size_t dim);
  static ComplexMatrix diagonal(std::initializer_list<double> values);
  static ComplexMatrix diagonal(std::span<const double> values);

  std::size_t dim() const { return static_cast<std::size_t>(m_.rows()); }
  Complex operator()(std::size_t r, std::size_t c) const { return m_(r, c); }
  Complex& operator()(std::size_t r, std::size_t c) { return m_(r, c); }

  const Eigen::MatrixXcd& eigen() const { return m_; }

  ComplexMatrix adjoint() const;
  ComplexMatrix conjugate() const;
  Complex trace() const;
  double max_abs() const;
  bool is_hermitian(double tol = kDefaultTolerances.herm) const;
  std::vector<Complex> row_major() const;

  friend ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b);
  friend ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b);
  friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
  friend ComplexMatrix operator*(Complex s, const ComplexMatrix& a);

 private:
  Eigen::MatrixXcd m_;
};

// Entrywise max |a - b|. Dimensions must agree.
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

struct EigenSystem {
  std::vector<double> values;  // ascending
  ComplexMatrix vectors;       // column i pairs with values[i]
};

/// Eigendecomposition of a Hermitian matrix.
/// Throws kNotHermitian when max |m - m^dagger| exceeds tol.herm and
/// kNoConvergence if the solver gives up.
EigenSystem hermitian_eig(const ComplexMatrix& m, const Tolerances& tol = kDefaultTolerances);

/// Principal square root of a positive semidefinite Hermitian matrix.
/// Eigenvalues in [-tol.psd, 0) are clipped; anything lower throws kNotPSD.
ComplexMatrix psd_sqrt(const ComplexMatrix& m, const Tolerances& tol = kDefaultTolerances);

// Rebuild sum_i f(lambda_i) v_i v_i^dagger from an eigensystem.
ComplexMatrix reconstruct(const EigenSystem& es, std::span<const double> values);

enum class Subsystem { kFirst, kSecond };

/// Transpose on one qubit factor of a 2x2 system. Involution; preserves
/// trace and Hermiticity exactly.
ComplexMatrix partial_transpose(const ComplexMatrix& rho, Subsystem subsystem = Subsystem::kSecond);

/// Trace out every factor not listed in `keep`. Factor order follows `dims`;
/// the result is ordered by ascending factor index.
ComplexMatrix partial_trace(const ComplexMatrix& full, std::span<const std::size_t> dims,
                            std::span<const std::size_t> keep);

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

// Singular values in descending order.
std::vector<double> singular_values(const ComplexMatrix& m);

ComplexMatrix pauli_y();

}  // namespace dephase
