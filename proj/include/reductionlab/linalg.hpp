#pragma once

// Dense complex linear algebra on small square matrices: Kronecker products,
// partial traces, subsystem permutations, Hermitian exponentials and
// spectral decomposition with eigenvalue clustering.

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace reductionlab {

using Complex = std::complex<double>;

// Operator comparisons (max-entry norm).
inline constexpr double kTolOp = 1e-9;
// Eigenvalues closer than this are merged into one spectral cluster.
inline constexpr double kTolEig = 1e-8;
// Probability comparisons.
inline constexpr double kTolProb = 1e-10;

class ComplexMatrix {
 public:
  explicit ComplexMatrix(std::size_t dim);
  explicit ComplexMatrix(Eigen::MatrixXcd m);
  // Row-major nested initializer; must be square.
  ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

  static ComplexMatrix identity(std::size_t dim);
  static ComplexMatrix zero(std::size_t dim);
  static ComplexMatrix diagonal(std::span<const double> values);
  static ComplexMatrix diagonal(std::initializer_list<double> values);
  // |ket><ket| without normalization.
  static ComplexMatrix outer(std::span<const Complex> ket);
  static ComplexMatrix outer(std::initializer_list<Complex> ket);
  // Matrix unit |row><col|.
  static ComplexMatrix unit(std::size_t dim, std::size_t row, std::size_t col);

  std::size_t dim() const noexcept { return static_cast<std::size_t>(m_.rows()); }
  Complex operator()(std::size_t i, std::size_t j) const { return m_(i, j); }
  Complex& operator()(std::size_t i, std::size_t j) { return m_(i, j); }
  const Eigen::MatrixXcd& eigen() const noexcept { return m_; }

  ComplexMatrix adjoint() const;
  Complex trace() const;

  ComplexMatrix& operator+=(const ComplexMatrix& o);
  ComplexMatrix& operator-=(const ComplexMatrix& o);
  ComplexMatrix& operator*=(Complex s);

  friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
  friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
  friend ComplexMatrix operator*(ComplexMatrix a, Complex s) { return a *= s; }
  friend ComplexMatrix operator*(Complex s, ComplexMatrix a) { return a *= s; }
  friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);

  // Exact entrywise equality; used by determinism checks.
  friend bool operator==(const ComplexMatrix& a, const ComplexMatrix& b);

 private:
  Eigen::MatrixXcd m_;
};

// Largest |entry|; NaN if any entry is NaN.
double max_norm(const ComplexMatrix& m);
double max_deviation(const ComplexMatrix& a, const ComplexMatrix& b);

// max(a, b) that keeps a NaN instead of dropping it.
inline double worst_of(double a, double b) { return (a != a || b != b) ? a + b : (a < b ? b : a); }

bool is_hermitian(const ComplexMatrix& m, double tol = kTolOp);
bool is_unitary(const ComplexMatrix& m, double tol = kTolOp);
bool is_positive_semidefinite(const ComplexMatrix& m, double tol = kTolOp);
bool is_projection(const ComplexMatrix& m, double tol = kTolOp);

// Smallest eigenvalue of the Hermitian part.
double min_eigenvalue(const ComplexMatrix& m);

// Ordered tensor factors annotating a composite operator.
class SubsystemDims {
 public:
  SubsystemDims(std::initializer_list<std::size_t> factors);
  explicit SubsystemDims(std::vector<std::size_t> factors);

  const std::vector<std::size_t>& factors() const noexcept { return factors_; }
  std::size_t size() const noexcept { return factors_.size(); }
  std::size_t operator[](std::size_t i) const { return factors_.at(i); }
  std::size_t total() const noexcept;

  friend bool operator==(const SubsystemDims&, const SubsystemDims&) = default;

 private:
  std::vector<std::size_t> factors_;
};

// Kronecker product, left factor major: entry ((i1,i2),(j1,j2)) = a[i1,j1] b[i2,j2].
ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix tensor(std::initializer_list<ComplexMatrix> factors);

// Traces out every factor not listed in `keep`. `keep` must be a nonempty
// proper subset of factor indices; kept factors retain their original order.
ComplexMatrix partial_trace(const ComplexMatrix& m, const SubsystemDims& dims,
                            std::span<const std::size_t> keep);
ComplexMatrix partial_trace(const ComplexMatrix& m, const SubsystemDims& dims,
                            std::initializer_list<std::size_t> keep);

// Reorders tensor factors. Output factor k is input factor order[k], so for
// m = X0 ⊗ X1 ⊗ X2 and order {0,2,1} the result is X0 ⊗ X2 ⊗ X1.
ComplexMatrix permute_subsystems(const ComplexMatrix& m, const SubsystemDims& dims,
                                 std::span<const std::size_t> order);
ComplexMatrix permute_subsystems(const ComplexMatrix& m, const SubsystemDims& dims,
                                 std::initializer_list<std::size_t> order);
// Factor annotation after permute_subsystems with the same order.
SubsystemDims permuted_dims(const SubsystemDims& dims, std::span<const std::size_t> order);

// e^{-i h tau} for Hermitian h (hbar = 1).
ComplexMatrix herm_expm(const ComplexMatrix& h, double tau);

struct SpectralProjection {
  double eigenvalue;
  ComplexMatrix projection;
};

// Spectral resolution with eigenvalues clustered at kTolEig, sorted ascending.
std::vector<SpectralProjection> spectral_decompose(const ComplexMatrix& a);

}  // namespace reductionlab
