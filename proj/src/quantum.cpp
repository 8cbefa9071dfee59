#include "reductionlab/quantum.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "reductionlab/errors.hpp"

namespace reductionlab {

Observable::Observable(ComplexMatrix matrix)
    : matrix_(std::move(matrix)), spectrum_(spectral_decompose(matrix_)) {}

std::vector<double> Observable::eigenvalues() const {
  std::vector<double> out;
  out.reserve(spectrum_.size());
  for (const auto& s : spectrum_) out.push_back(s.eigenvalue);
  return out;
}

std::optional<std::size_t> Observable::index_of(double value) const {
  for (std::size_t k = 0; k < spectrum_.size(); ++k)
    if (std::abs(spectrum_[k].eigenvalue - value) <= kTolEig) return k;
  return std::nullopt;
}

const ComplexMatrix& Observable::projection(double value) const {
  const auto k = index_of(value);
  if (!k) throw DomainError("observable has no eigenvalue " + std::to_string(value));
  return spectrum_[*k].projection;
}

bool same_spectrum(const Observable& a, const Observable& b) {
  if (a.outcome_count() != b.outcome_count()) return false;
  for (std::size_t k = 0; k < a.outcome_count(); ++k)
    if (std::abs(a.spectrum()[k].eigenvalue - b.spectrum()[k].eigenvalue) > kTolEig) return false;
  return true;
}

DensityOperator::DensityOperator(ComplexMatrix matrix, std::optional<SubsystemDims> dims)
    : matrix_(std::move(matrix)), dims_(std::move(dims)) {
  if (matrix_.dim() == 0) throw ValidationError("density operator must have positive dimension");
  if (dims_ && dims_->total() != matrix_.dim())
    throw DimensionError("density operator: factor annotation does not match dimension");
  if (!is_hermitian(matrix_)) throw ValidationError("density operator is not Hermitian");
  const double tr_im = std::abs(matrix_.trace().imag());
  const double tr_re = matrix_.trace().real();
  if (std::abs(tr_re - 1.0) > kTolProb || tr_im > kTolProb)
    throw ValidationError("density operator trace is " + std::to_string(tr_re) + ", expected 1");
  const double lo = min_eigenvalue(matrix_);
  if (lo < -kTolOp)
    throw ValidationError("density operator has negative eigenvalue " + std::to_string(lo));
}

DensityOperator DensityOperator::pure(std::span<const Complex> ket) {
  double norm2 = 0.0;
  for (const auto& c : ket) norm2 += std::norm(c);
  if (norm2 <= 0.0) throw ValidationError("pure state from zero vector");
  return DensityOperator(ComplexMatrix::outer(ket) * Complex(1.0 / norm2));
}

DensityOperator DensityOperator::pure(std::initializer_list<Complex> ket) {
  return pure(std::span<const Complex>(ket.begin(), ket.size()));
}

DensityOperator DensityOperator::maximally_mixed(std::size_t dim) {
  return DensityOperator(ComplexMatrix::identity(dim) * Complex(1.0 / static_cast<double>(dim)));
}

OutcomeDistribution::OutcomeDistribution(std::vector<Entry> entries) : entries_(std::move(entries)) {
  std::sort(entries_.begin(), entries_.end());
  double total = 0.0;
  for (const auto& [outcome, p] : entries_) {
    if (p < -kTolProb || p > 1.0 + kTolProb)
      throw ValidationError("probability " + std::to_string(p) + " outside [0,1]");
    total += p;
  }
  if (std::abs(total - 1.0) > kTolProb)
    throw ValidationError("probabilities sum to " + std::to_string(total));
}

double OutcomeDistribution::probability(double outcome) const {
  for (const auto& [value, p] : entries_)
    if (std::abs(value - outcome) <= kTolEig) return p;
  return 0.0;
}

double max_deviation(const OutcomeDistribution& p, const OutcomeDistribution& q) {
  double worst = 0.0;
  for (const auto& [a, pa] : p.entries()) worst = worst_of(worst, std::abs(pa - q.probability(a)));
  for (const auto& [a, qa] : q.entries()) worst = worst_of(worst, std::abs(qa - p.probability(a)));
  return worst;
}

OutcomeDistribution born_distribution(const Observable& a, const DensityOperator& rho) {
  if (a.dim() != rho.dim())
    throw DimensionError("born_distribution: observable dim " + std::to_string(a.dim()) +
                         " vs state dim " + std::to_string(rho.dim()));
  std::vector<OutcomeDistribution::Entry> entries;
  for (const auto& s : a.spectrum())
    entries.emplace_back(s.eigenvalue, (s.projection * rho.matrix()).trace().real());
  return OutcomeDistribution(std::move(entries));
}

DensityOperator evolve(const DensityOperator& rho, const ComplexMatrix& h, double tau) {
  if (h.dim() != rho.dim()) throw DimensionError("evolve: Hamiltonian and state dims differ");
  const ComplexMatrix u = herm_expm(h, tau);
  return DensityOperator(u * rho.matrix() * u.adjoint(), rho.dims());
}

OutcomeDistribution rule1_distribution(const DensityOperator& rho, const ComplexMatrix& h,
                                       const Observable& x, double tau) {
  return born_distribution(x, evolve(rho, h, tau));
}

DensityOperator reduced_state(const DensityOperator& rho, const SubsystemDims& dims,
                              std::span<const std::size_t> keep) {
  ComplexMatrix m = partial_trace(rho.matrix(), dims, keep);
  std::vector<std::size_t> sorted(keep.begin(), keep.end());
  std::sort(sorted.begin(), sorted.end());
  std::vector<std::size_t> factors;
  for (std::size_t k : sorted) factors.push_back(dims[k]);
  return DensityOperator(std::move(m), SubsystemDims(std::move(factors)));
}

DensityOperator reduced_state(const DensityOperator& rho, const SubsystemDims& dims,
                              std::initializer_list<std::size_t> keep) {
  return reduced_state(rho, dims, std::span<const std::size_t>(keep.begin(), keep.size()));
}

DensityOperator reduced_state(const DensityOperator& rho, std::initializer_list<std::size_t> keep) {
  if (!rho.dims()) throw DimensionError("reduced_state: state has no factor annotation");
  return reduced_state(rho, *rho.dims(), keep);
}

}  // namespace reductionlab
