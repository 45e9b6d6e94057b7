#include "dephase/matcore.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "dephase/error.hpp"

namespace dephase {

ComplexMatrix::ComplexMatrix(std::size_t dim) : m_(Eigen::MatrixXcd::Zero(dim, dim)) {
  if (dim == 0) throw Error(ErrorCode::kBadDim, "matrix dimension must be positive");
}

ComplexMatrix::ComplexMatrix(std::size_t dim, std::vector<Complex> row_major) : ComplexMatrix(dim) {
  if (row_major.size() != dim * dim) {
    throw Error(ErrorCode::kBadDim, "expected " + std::to_string(dim * dim) + " entries, got " +
                                        std::to_string(row_major.size()));
  }
  for (std::size_t r = 0; r < dim; ++r) {
    for (std::size_t c = 0; c < dim; ++c) {
      const Complex v = row_major[r * dim + c];
      if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
        throw Error(ErrorCode::kInvalidArgument, "non-finite matrix entry");
      }
      m_(r, c) = v;
    }
  }
}

ComplexMatrix::ComplexMatrix(Eigen::MatrixXcd m) : m_(std::move(m)) {
  if (m_.rows() == 0 || m_.rows() != m_.cols()) {
    throw Error(ErrorCode::kBadDim, "matrix must be square and non-empty");
  }
  if (!m_.allFinite()) throw Error(ErrorCode::kInvalidArgument, "non-finite matrix entry");
}

ComplexMatrix ComplexMatrix::identity(std::size_t dim) {
  ComplexMatrix out(dim);
  out.m_.setIdentity();
  return out;
}

ComplexMatrix ComplexMatrix::diagonal(std::initializer_list<double> values) {
  return diagonal(std::span<const double>(values.begin(), values.size()));
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const double> values) {
  ComplexMatrix out(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) out.m_(i, i) = values[i];
  return out;
}

ComplexMatrix ComplexMatrix::adjoint() const { return ComplexMatrix(Eigen::MatrixXcd(m_.adjoint())); }
ComplexMatrix ComplexMatrix::conjugate() const { return ComplexMatrix(Eigen::MatrixXcd(m_.conjugate())); }
Complex ComplexMatrix::trace() const { return m_.trace(); }
double ComplexMatrix::max_abs() const { return m_.cwiseAbs().maxCoeff(); }

bool ComplexMatrix::is_hermitian(double tol) const {
  return (m_ - m_.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

std::vector<Complex> ComplexMatrix::row_major() const {
  std::vector<Complex> out;
  out.reserve(dim() * dim());
  for (Eigen::Index r = 0; r < m_.rows(); ++r)
    for (Eigen::Index c = 0; c < m_.cols(); ++c) out.push_back(m_(r, c));
  return out;
}

namespace {

void require_same_dim(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.dim() != b.dim()) {
    throw Error(ErrorCode::kBadDim, "dimension mismatch: " + std::to_string(a.dim()) + " vs " +
                                        std::to_string(b.dim()));
  }
}

}  // namespace

ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_dim(a, b);
  return ComplexMatrix(Eigen::MatrixXcd(a.m_ + b.m_));
}

ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_dim(a, b);
  return ComplexMatrix(Eigen::MatrixXcd(a.m_ - b.m_));
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_dim(a, b);
  return ComplexMatrix(Eigen::MatrixXcd(a.m_ * b.m_));
}

ComplexMatrix operator*(Complex s, const ComplexMatrix& a) {
  return ComplexMatrix(Eigen::MatrixXcd(s * a.m_));
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_dim(a, b);
  return (a.eigen() - b.eigen()).cwiseAbs().maxCoeff();
}

EigenSystem hermitian_eig(const ComplexMatrix& m, const Tolerances& tol) {
  const double asym = (m.eigen() - m.eigen().adjoint()).cwiseAbs().maxCoeff();
  if (asym > tol.herm) {
    throw Error(ErrorCode::kNotHermitian, "matrix is not Hermitian (max asymmetry " +
                                              std::to_string(asym) + ")");
  }
  // Solve the exactly Hermitian part so the result does not depend on which
  // triangle the solver reads.
  const Eigen::MatrixXcd h = 0.5 * (m.eigen() + m.eigen().adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::kNoConvergence, "Hermitian eigensolver did not converge");
  }
  EigenSystem out{{}, ComplexMatrix(Eigen::MatrixXcd(solver.eigenvectors()))};
  const auto& ev = solver.eigenvalues();
  out.values.assign(ev.data(), ev.data() + ev.size());
  return out;
}

ComplexMatrix reconstruct(const EigenSystem& es, std::span<const double> values) {
  const auto& v = es.vectors.eigen();
  Eigen::VectorXd lambda = Eigen::Map<const Eigen::VectorXd>(values.data(),
                                                              static_cast<Eigen::Index>(values.size()));
  return ComplexMatrix(Eigen::MatrixXcd(v * lambda.asDiagonal() * v.adjoint()));
}

ComplexMatrix psd_sqrt(const ComplexMatrix& m, const Tolerances& tol) {
  const EigenSystem es = hermitian_eig(m, tol);
  std::vector<double> roots(es.values.size());
  for (std::size_t i = 0; i < roots.size(); ++i) {
    const double lambda = es.values[i];
    if (lambda < -tol.psd) {
      throw Error(ErrorCode::kNotPSD, "matrix has eigenvalue " + std::to_string(lambda));
    }
    roots[i] = lambda <= tol.zero_floor ? 0.0 : std::sqrt(lambda);
  }
  return reconstruct(es, roots);
}

ComplexMatrix partial_transpose(const ComplexMatrix& rho, Subsystem subsystem) {
  if (rho.dim() != 4) throw Error(ErrorCode::kBadDim, "partial transpose needs a 4x4 matrix");
  ComplexMatrix out(4);
  // Index i = 2*a + b with a the first qubit, b the second.
  for (std::size_t a = 0; a < 2; ++a)
    for (std::size_t b = 0; b < 2; ++b)
      for (std::size_t c = 0; c < 2; ++c)
        for (std::size_t d = 0; d < 2; ++d) {
          const std::size_t row = 2 * a + b;
          const std::size_t col = 2 * c + d;
          const std::size_t src_row = subsystem == Subsystem::kSecond ? 2 * a + d : 2 * c + b;
          const std::size_t src_col = subsystem == Subsystem::kSecond ? 2 * c + b : 2 * a + d;
          out(row, col) = rho(src_row, src_col);
        }
  return out;
}

ComplexMatrix partial_trace(const ComplexMatrix& full, std::span<const std::size_t> dims,
                            std::span<const std::size_t> keep) {
  if (dims.empty() || keep.empty()) throw Error(ErrorCode::kBadDims, "dims and keep must be nonempty");
  std::size_t total = 1;
  for (std::size_t d : dims) {
    if (d == 0) throw Error(ErrorCode::kBadDims, "factor dimension must be positive");
    total *= d;
  }
  if (total != full.dim()) {
    throw Error(ErrorCode::kBadDims, "product of factor dimensions (" + std::to_string(total) +
                                         ") does not match matrix dimension " +
                                         std::to_string(full.dim()));
  }
  std::vector<bool> kept(dims.size(), false);
  for (std::size_t k : keep) {
    if (k >= dims.size() || kept[k]) throw Error(ErrorCode::kBadDims, "bad keep index");
    kept[k] = true;
  }

  const std::size_t n = dims.size();
  // Row-major strides of the full index.
  std::vector<std::size_t> stride(n, 1);
  for (std::size_t i = n - 1; i > 0; --i) stride[i - 1] = stride[i] * dims[i];

  // Full-space offset of every kept (resp. traced) multi-index.
  const auto offsets = [&](bool want_kept) {
    std::vector<std::size_t> result{0};
    for (std::size_t i = 0; i < n; ++i) {
      if (kept[i] != want_kept) continue;
      std::vector<std::size_t> next;
      next.reserve(result.size() * dims[i]);
      for (std::size_t base : result)
        for (std::size_t v = 0; v < dims[i]; ++v) next.push_back(base + v * stride[i]);
      result = std::move(next);
    }
    return result;
  };
  const std::vector<std::size_t> kept_off = offsets(true);
  const std::vector<std::size_t> traced_off = offsets(false);

  ComplexMatrix out(kept_off.size());
  for (std::size_t r = 0; r < kept_off.size(); ++r)
    for (std::size_t c = 0; c < kept_off.size(); ++c) {
      Complex acc = 0.0;
      for (std::size_t t : traced_off) acc += full(kept_off[r] + t, kept_off[c] + t);
      out(r, c) = acc;
    }
  return out;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  const std::size_t na = a.dim(), nb = b.dim();
  ComplexMatrix out(na * nb);
  for (std::size_t i = 0; i < na; ++i)
    for (std::size_t j = 0; j < na; ++j)
      for (std::size_t k = 0; k < nb; ++k)
        for (std::size_t l = 0; l < nb; ++l) out(i * nb + k, j * nb + l) = a(i, j) * b(k, l);
  return out;
}

std::vector<double> singular_values(const ComplexMatrix& m) {
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m.eigen());
  const auto& s = svd.singularValues();
  return {s.data(), s.data() + s.size()};
}

ComplexMatrix pauli_y() {
  using namespace std::complex_literals;
  return ComplexMatrix(2, {0.0, -1.0i, 1.0i, 0.0});
}

}  // namespace dephase
