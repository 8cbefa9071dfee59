#pragma once

// Observables, density operators, Born statistics, free evolution and
// reduced states.

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "reductionlab/linalg.hpp"

namespace reductionlab {

// Hermitian operator carrying its clustered spectral resolution.
class Observable {
 public:
  explicit Observable(ComplexMatrix matrix);

  const ComplexMatrix& matrix() const noexcept { return matrix_; }
  const std::vector<SpectralProjection>& spectrum() const noexcept { return spectrum_; }
  std::size_t dim() const noexcept { return matrix_.dim(); }
  std::size_t outcome_count() const noexcept { return spectrum_.size(); }
  std::vector<double> eigenvalues() const;

  // Position of the cluster containing `value` (within kTolEig).
  std::optional<std::size_t> index_of(double value) const;
  // E(value); throws DomainError if `value` is not an eigenvalue.
  const ComplexMatrix& projection(double value) const;

 private:
  ComplexMatrix matrix_;
  std::vector<SpectralProjection> spectrum_;
};

// True when both observables have the same number of outcomes and their
// sorted eigenvalues agree within kTolEig.
bool same_spectrum(const Observable& a, const Observable& b);

// Positive, unit-trace operator with an optional tensor-factor annotation.
// Eigenvalues down to -kTolOp are accepted as is (no clamping).
class DensityOperator {
 public:
  explicit DensityOperator(ComplexMatrix matrix, std::optional<SubsystemDims> dims = std::nullopt);

  static DensityOperator pure(std::span<const Complex> ket);
  static DensityOperator pure(std::initializer_list<Complex> ket);
  static DensityOperator maximally_mixed(std::size_t dim);

  const ComplexMatrix& matrix() const noexcept { return matrix_; }
  const std::optional<SubsystemDims>& dims() const noexcept { return dims_; }
  std::size_t dim() const noexcept { return matrix_.dim(); }

 private:
  ComplexMatrix matrix_;
  std::optional<SubsystemDims> dims_;
};

// Outcome value -> probability, sorted by outcome.
class OutcomeDistribution {
 public:
  using Entry = std::pair<double, double>;

  explicit OutcomeDistribution(std::vector<Entry> entries);

  const std::vector<Entry>& entries() const& noexcept { return entries_; }
  std::vector<Entry> entries() && { return std::move(entries_); }
  std::size_t size() const noexcept { return entries_.size(); }
  // Probability of `outcome` (within kTolEig); 0 if absent.
  double probability(double outcome) const;

 private:
  std::vector<Entry> entries_;
};

// Largest |p - q| over the union of outcomes.
double max_deviation(const OutcomeDistribution& p, const OutcomeDistribution& q);

// Tr[E(a) rho] for each eigenvalue a.
OutcomeDistribution born_distribution(const Observable& a, const DensityOperator& rho);

// e^{-ih tau} rho e^{ih tau}.
DensityOperator evolve(const DensityOperator& rho, const ComplexMatrix& h, double tau);

// Distribution of x at time tau for a state rho at time 0 under h.
OutcomeDistribution rule1_distribution(const DensityOperator& rho, const ComplexMatrix& h,
                                       const Observable& x, double tau);

DensityOperator reduced_state(const DensityOperator& rho, const SubsystemDims& dims,
                              std::span<const std::size_t> keep);
DensityOperator reduced_state(const DensityOperator& rho, const SubsystemDims& dims,
                              std::initializer_list<std::size_t> keep);
// Uses the factor annotation carried by `rho`.
DensityOperator reduced_state(const DensityOperator& rho, std::initializer_list<std::size_t> keep);

}  // namespace reductionlab
