#include "reductionlab/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "reductionlab/errors.hpp"

namespace reductionlab {

namespace {

void require_same_dim(const ComplexMatrix& a, const ComplexMatrix& b, const char* op) {
  if (a.dim() != b.dim()) {
    throw DimensionError(std::string(op) + ": dimension mismatch (" + std::to_string(a.dim()) +
                         " vs " + std::to_string(b.dim()) + ")");
  }
}

// Linear offsets contributed by the listed factors, enumerated in
// left-major order over those factors only.
std::vector<std::size_t> factor_offsets(const SubsystemDims& dims,
                                        std::span<const std::size_t> which) {
  const auto& f = dims.factors();
  std::vector<std::size_t> stride(f.size(), 1);
  for (std::size_t k = f.size(); k-- > 1;) stride[k - 1] = stride[k] * f[k];

  std::vector<std::size_t> offsets{0};
  for (std::size_t k : which) {
    std::vector<std::size_t> next;
    next.reserve(offsets.size() * f[k]);
    for (std::size_t base : offsets)
      for (std::size_t digit = 0; digit < f[k]; ++digit) next.push_back(base + digit * stride[k]);
    offsets = std::move(next);
  }
  return offsets;
}

void require_annotates(const ComplexMatrix& m, const SubsystemDims& dims, const char* op) {
  if (dims.total() != m.dim()) {
    throw DimensionError(std::string(op) + ": subsystem dims multiply to " +
                         std::to_string(dims.total()) + " but matrix has dim " +
                         std::to_string(m.dim()));
  }
}

void require_hermitian(const ComplexMatrix& m, const char* op) {
  if (!is_hermitian(m)) throw DomainError(std::string(op) + ": matrix is not Hermitian");
}

}  // namespace

ComplexMatrix::ComplexMatrix(std::size_t dim) : m_(Eigen::MatrixXcd::Zero(dim, dim)) {}

ComplexMatrix::ComplexMatrix(Eigen::MatrixXcd m) : m_(std::move(m)) {
  if (m_.rows() != m_.cols()) {
    throw DimensionError("ComplexMatrix: matrix must be square, got " +
                         std::to_string(m_.rows()) + "x" + std::to_string(m_.cols()));
  }
}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows)
    : m_(Eigen::MatrixXcd::Zero(rows.size(), rows.size())) {
  std::size_t i = 0;
  for (const auto& row : rows) {
    if (row.size() != rows.size()) throw DimensionError("ComplexMatrix: ragged or non-square rows");
    std::size_t j = 0;
    for (const auto& v : row) m_(i, j++) = v;
    ++i;
  }
}

ComplexMatrix ComplexMatrix::identity(std::size_t dim) {
  return ComplexMatrix(Eigen::MatrixXcd::Identity(dim, dim));
}

ComplexMatrix ComplexMatrix::zero(std::size_t dim) { return ComplexMatrix(dim); }

ComplexMatrix ComplexMatrix::diagonal(std::span<const double> values) {
  ComplexMatrix out(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) out(i, i) = values[i];
  return out;
}

ComplexMatrix ComplexMatrix::diagonal(std::initializer_list<double> values) {
  return diagonal(std::span<const double>(values.begin(), values.size()));
}

ComplexMatrix ComplexMatrix::outer(std::span<const Complex> ket) {
  ComplexMatrix out(ket.size());
  for (std::size_t i = 0; i < ket.size(); ++i)
    for (std::size_t j = 0; j < ket.size(); ++j) out(i, j) = ket[i] * std::conj(ket[j]);
  return out;
}

ComplexMatrix ComplexMatrix::outer(std::initializer_list<Complex> ket) {
  return outer(std::span<const Complex>(ket.begin(), ket.size()));
}

ComplexMatrix ComplexMatrix::unit(std::size_t dim, std::size_t row, std::size_t col) {
  ComplexMatrix out(dim);
  out(row, col) = 1.0;
  return out;
}

ComplexMatrix ComplexMatrix::adjoint() const { return ComplexMatrix(Eigen::MatrixXcd(m_.adjoint())); }

Complex ComplexMatrix::trace() const { return m_.trace(); }

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& o) {
  require_same_dim(*this, o, "operator+");
  m_ += o.m_;
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& o) {
  require_same_dim(*this, o, "operator-");
  m_ -= o.m_;
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex s) {
  m_ *= s;
  return *this;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_dim(a, b, "operator*");
  return ComplexMatrix(Eigen::MatrixXcd(a.m_ * b.m_));
}

bool operator==(const ComplexMatrix& a, const ComplexMatrix& b) {
  return a.dim() == b.dim() && a.m_ == b.m_;
}

double max_norm(const ComplexMatrix& m) {
  return m.dim() == 0 ? 0.0 : m.eigen().cwiseAbs().maxCoeff<Eigen::PropagateNaN>();
}

double max_deviation(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_dim(a, b, "max_deviation");
  return max_norm(a - b);
}

bool is_hermitian(const ComplexMatrix& m, double tol) { return max_deviation(m, m.adjoint()) <= tol; }

bool is_unitary(const ComplexMatrix& m, double tol) {
  return max_deviation(m.adjoint() * m, ComplexMatrix::identity(m.dim())) <= tol;
}

double min_eigenvalue(const ComplexMatrix& m) {
  if (m.dim() == 0) return 0.0;
  const Eigen::MatrixXcd herm = 0.5 * (m.eigen() + m.eigen().adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(herm, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

bool is_positive_semidefinite(const ComplexMatrix& m, double tol) {
  return is_hermitian(m, tol) && min_eigenvalue(m) >= -tol;
}

bool is_projection(const ComplexMatrix& m, double tol) {
  return is_hermitian(m, tol) && max_deviation(m * m, m) <= tol;
}

SubsystemDims::SubsystemDims(std::initializer_list<std::size_t> factors)
    : SubsystemDims(std::vector<std::size_t>(factors)) {}

SubsystemDims::SubsystemDims(std::vector<std::size_t> factors) : factors_(std::move(factors)) {
  if (factors_.empty()) throw DimensionError("SubsystemDims: at least one factor required");
  for (std::size_t f : factors_)
    if (f == 0) throw DimensionError("SubsystemDims: factor dimensions must be positive");
}

std::size_t SubsystemDims::total() const noexcept {
  return std::accumulate(factors_.begin(), factors_.end(), std::size_t{1}, std::multiplies<>());
}

ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b) {
  const auto na = static_cast<Eigen::Index>(a.dim());
  const auto nb = static_cast<Eigen::Index>(b.dim());
  Eigen::MatrixXcd out(na * nb, na * nb);
  for (Eigen::Index i = 0; i < na; ++i)
    for (Eigen::Index j = 0; j < na; ++j) out.block(i * nb, j * nb, nb, nb) = a.eigen()(i, j) * b.eigen();
  return ComplexMatrix(std::move(out));
}

ComplexMatrix tensor(std::initializer_list<ComplexMatrix> factors) {
  if (factors.size() == 0) throw DimensionError("tensor: no factors");
  auto it = factors.begin();
  ComplexMatrix out = *it++;
  for (; it != factors.end(); ++it) out = tensor(out, *it);
  return out;
}

ComplexMatrix partial_trace(const ComplexMatrix& m, const SubsystemDims& dims,
                            std::span<const std::size_t> keep) {
  require_annotates(m, dims, "partial_trace");
  std::vector<std::size_t> kept(keep.begin(), keep.end());
  std::sort(kept.begin(), kept.end());
  if (kept.empty() || std::adjacent_find(kept.begin(), kept.end()) != kept.end() ||
      kept.back() >= dims.size() || kept.size() == dims.size()) {
    throw DimensionError("partial_trace: keep must be a nonempty proper subset of factor indices");
  }
  std::vector<std::size_t> traced;
  for (std::size_t k = 0; k < dims.size(); ++k)
    if (!std::binary_search(kept.begin(), kept.end(), k)) traced.push_back(k);

  const auto keep_off = factor_offsets(dims, kept);
  const auto trace_off = factor_offsets(dims, traced);
  ComplexMatrix out(keep_off.size());
  for (std::size_t r = 0; r < keep_off.size(); ++r)
    for (std::size_t c = 0; c < keep_off.size(); ++c) {
      Complex acc = 0.0;
      for (std::size_t t : trace_off) acc += m(keep_off[r] + t, keep_off[c] + t);
      out(r, c) = acc;
    }
  return out;
}

ComplexMatrix partial_trace(const ComplexMatrix& m, const SubsystemDims& dims,
                            std::initializer_list<std::size_t> keep) {
  return partial_trace(m, dims, std::span<const std::size_t>(keep.begin(), keep.size()));
}

SubsystemDims permuted_dims(const SubsystemDims& dims, std::span<const std::size_t> order) {
  std::vector<std::size_t> out;
  out.reserve(order.size());
  for (std::size_t k : order) out.push_back(dims[k]);
  return SubsystemDims(std::move(out));
}

ComplexMatrix permute_subsystems(const ComplexMatrix& m, const SubsystemDims& dims,
                                 std::span<const std::size_t> order) {
  require_annotates(m, dims, "permute_subsystems");
  std::vector<std::size_t> sorted(order.begin(), order.end());
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t k = 0; k < sorted.size(); ++k) {
    if (sorted.size() != dims.size() || sorted[k] != k)
      throw DimensionError("permute_subsystems: order must be a permutation of factor indices");
  }
  // Enumerating the input offsets in output-factor order yields, for each
  // output linear index, the input linear index it reads from.
  const auto map = factor_offsets(dims, order);
  ComplexMatrix out(m.dim());
  for (std::size_t i = 0; i < map.size(); ++i)
    for (std::size_t j = 0; j < map.size(); ++j) out(i, j) = m(map[i], map[j]);
  return out;
}

ComplexMatrix permute_subsystems(const ComplexMatrix& m, const SubsystemDims& dims,
                                 std::initializer_list<std::size_t> order) {
  return permute_subsystems(m, dims, std::span<const std::size_t>(order.begin(), order.size()));
}

ComplexMatrix herm_expm(const ComplexMatrix& h, double tau) {
  require_hermitian(h, "herm_expm");
  const Eigen::MatrixXcd herm = 0.5 * (h.eigen() + h.eigen().adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(herm);
  const Eigen::VectorXcd phases =
      (solver.eigenvalues().cast<Complex>() * Complex(0.0, -tau)).array().exp().matrix();
  const Eigen::MatrixXcd& v = solver.eigenvectors();
  return ComplexMatrix(Eigen::MatrixXcd(v * phases.asDiagonal() * v.adjoint()));
}

std::vector<SpectralProjection> spectral_decompose(const ComplexMatrix& a) {
  require_hermitian(a, "spectral_decompose");
  const Eigen::MatrixXcd herm = 0.5 * (a.eigen() + a.eigen().adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(herm);
  const Eigen::VectorXd& values = solver.eigenvalues();  // ascending
  const Eigen::MatrixXcd& vectors = solver.eigenvectors();

  std::vector<SpectralProjection> out;
  const auto n = values.size();
  Eigen::Index start = 0;
  while (start < n) {
    Eigen::Index end = start + 1;
    while (end < n && values(end) - values(end - 1) <= kTolEig) ++end;
    const auto block = vectors.middleCols(start, end - start);
    const double mean = values.segment(start, end - start).mean();
    out.push_back({mean, ComplexMatrix(Eigen::MatrixXcd(block * block.adjoint()))});
    start = end;
  }
  return out;
}

}  // namespace reductionlab
