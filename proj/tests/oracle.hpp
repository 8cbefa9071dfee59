#pragma once

// Brute-force reference arithmetic for tests. Plain nested loops over
// std::vector storage; shares no code with the library.

#include <complex>
#include <cstddef>
#include <vector>

#include "reductionlab/linalg.hpp"

namespace oracle {

using C = std::complex<double>;

struct Mat {
  std::size_t n;
  std::vector<C> a;  // row-major

  explicit Mat(std::size_t n_) : n(n_), a(n_ * n_, 0.0) {}
  C& operator()(std::size_t i, std::size_t j) { return a[i * n + j]; }
  C operator()(std::size_t i, std::size_t j) const { return a[i * n + j]; }
};

inline Mat from(const reductionlab::ComplexMatrix& m) {
  Mat out(m.dim());
  for (std::size_t i = 0; i < m.dim(); ++i)
    for (std::size_t j = 0; j < m.dim(); ++j) out(i, j) = m(i, j);
  return out;
}

inline Mat identity(std::size_t n) {
  Mat out(n);
  for (std::size_t i = 0; i < n; ++i) out(i, i) = 1.0;
  return out;
}

inline Mat mul(const Mat& x, const Mat& y) {
  Mat out(x.n);
  for (std::size_t i = 0; i < x.n; ++i)
    for (std::size_t k = 0; k < x.n; ++k)
      for (std::size_t j = 0; j < x.n; ++j) out(i, j) += x(i, k) * y(k, j);
  return out;
}

inline Mat dagger(const Mat& x) {
  Mat out(x.n);
  for (std::size_t i = 0; i < x.n; ++i)
    for (std::size_t j = 0; j < x.n; ++j) out(i, j) = std::conj(x(j, i));
  return out;
}

inline Mat scale(const Mat& x, C s) {
  Mat out = x;
  for (auto& v : out.a) v *= s;
  return out;
}

inline Mat add(const Mat& x, const Mat& y) {
  Mat out = x;
  for (std::size_t k = 0; k < out.a.size(); ++k) out.a[k] += y.a[k];
  return out;
}

inline Mat kron(const Mat& x, const Mat& y) {
  Mat out(x.n * y.n);
  for (std::size_t i1 = 0; i1 < x.n; ++i1)
    for (std::size_t j1 = 0; j1 < x.n; ++j1)
      for (std::size_t i2 = 0; i2 < y.n; ++i2)
        for (std::size_t j2 = 0; j2 < y.n; ++j2) out(i1 * y.n + i2, j1 * y.n + j2) = x(i1, j1) * y(i2, j2);
  return out;
}

inline C trace(const Mat& x) {
  C t = 0.0;
  for (std::size_t i = 0; i < x.n; ++i) t += x(i, i);
  return t;
}

// Tr over the second factor of a (d1*d2)-dimensional operator.
inline Mat trace_second(const Mat& x, std::size_t d1, std::size_t d2) {
  Mat out(d1);
  for (std::size_t i = 0; i < d1; ++i)
    for (std::size_t j = 0; j < d1; ++j)
      for (std::size_t k = 0; k < d2; ++k) out(i, j) += x(i * d2 + k, j * d2 + k);
  return out;
}

// Tr over the first factor.
inline Mat trace_first(const Mat& x, std::size_t d1, std::size_t d2) {
  Mat out(d2);
  for (std::size_t i = 0; i < d2; ++i)
    for (std::size_t j = 0; j < d2; ++j)
      for (std::size_t k = 0; k < d1; ++k) out(i, j) += x(k * d2 + i, k * d2 + j);
  return out;
}

inline double max_diff(const Mat& x, const reductionlab::ComplexMatrix& y) {
  double worst = 0.0;
  for (std::size_t i = 0; i < x.n; ++i)
    for (std::size_t j = 0; j < x.n; ++j) worst = std::max(worst, std::abs(x(i, j) - y(i, j)));
  return worst;
}

inline double max_diff(const Mat& x, const Mat& y) {
  double worst = 0.0;
  for (std::size_t k = 0; k < x.a.size(); ++k) worst = std::max(worst, std::abs(x.a[k] - y.a[k]));
  return worst;
}

// Taylor series of e^{-i h tau}, squared back up; independent of eigensolvers.
inline Mat expm_taylor(const Mat& h, double tau) {
  int squarings = 0;
  double norm = 0.0;
  for (const auto& v : h.a) norm = std::max(norm, std::abs(v));
  double scaled = std::abs(tau) * norm * static_cast<double>(h.n);
  while (scaled > 0.5) {
    scaled /= 2.0;
    ++squarings;
  }
  const Mat g = scale(h, C(0.0, -tau / static_cast<double>(1 << squarings)));
  Mat term = identity(h.n);
  Mat sum = identity(h.n);
  for (int k = 1; k < 30; ++k) {
    term = scale(mul(term, g), 1.0 / k);
    sum = add(sum, term);
  }
  for (int s = 0; s < squarings; ++s) sum = mul(sum, sum);
  return sum;
}

}  // namespace oracle
