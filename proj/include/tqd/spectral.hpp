#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace tqd::spectral {

/// Dense real symmetric matrix, row-major.
class SymMatrix {
 public:
  SymMatrix() = default;
  explicit SymMatrix(std::size_t dim) : dim_(dim), entries_(dim * dim, 0.0) {}
  SymMatrix(std::size_t dim, std::vector<double> entries);

  std::size_t dim() const noexcept { return dim_; }
  double& operator()(std::size_t i, std::size_t j) { return entries_[i * dim_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return entries_[i * dim_ + j]; }
  std::span<const double> entries() const noexcept { return entries_; }

  /// Adds v to (i,j) and, for i != j, to (j,i).
  void add_symmetric(std::size_t i, std::size_t j, double v) {
    (*this)(i, j) += v;
    if (i != j) (*this)(j, i) += v;
  }

  double max_abs() const noexcept;

 private:
  std::size_t dim_ = 0;
  std::vector<double> entries_;
};

/// Eigenpairs sorted by ascending eigenvalue. Eigenvector n is stored
/// contiguously and is returned by vector(n).
struct EigenSystem {
  std::size_t dim = 0;
  std::vector<double> values;
  std::vector<double> vectors;  // vectors[n * dim + i] = component i of eigenvector n

  std::span<const double> vector(std::size_t n) const {
    return {vectors.data() + n * dim, dim};
  }
};

/// Householder tridiagonalization followed by implicit QL with eigenvector
/// accumulation. Throws NotSymmetric when |a(i,j) - a(j,i)| > 1e-12 and
/// DimensionZero for an empty matrix.
EigenSystem eigh(const SymMatrix& a);

/// Eigenvalues only; same algorithm without vector accumulation.
std::vector<double> eigvalsh(const SymMatrix& a);

struct ThermalWeights {
  std::vector<double> weights;
  double log_z = 0.0;
};

/// Canonical-ensemble weights exp(-beta E_i)/Z evaluated relative to the
/// smallest level so that large beta never overflows. log_z is the
/// unshifted log sum_i exp(-beta E_i).
ThermalWeights thermal_weights(std::span<const double> values, double beta);

}  // namespace tqd::spectral
