#include "tqd/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "tqd/error.hpp"

namespace tqd::spectral {

namespace {

constexpr double kSymmetryTolerance = 1e-12;
constexpr int kMaxQlIterations = 60;

void check_input(const SymMatrix& a) {
  const std::size_t n = a.dim();
  if (n == 0) throw Error(ErrorCode::DimensionZero, "eigh on a 0x0 matrix");
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (std::abs(a(i, j) - a(j, i)) > kSymmetryTolerance) {
        throw Error(ErrorCode::NotSymmetric,
                    "entries (" + std::to_string(i) + "," + std::to_string(j) + ") differ by " +
                        std::to_string(std::abs(a(i, j) - a(j, i))));
      }
    }
  }
}

// Householder reduction of the symmetric matrix held in `a` (row-major,
// n x n) to tridiagonal form. On return d holds the diagonal, e the
// subdiagonal in e[1..n-1], and, when `want_vectors`, `a` holds the
// orthogonal transformation Q with A = Q T Q^T.
void tridiagonalize(std::vector<double>& a, std::size_t n, std::vector<double>& d,
                    std::vector<double>& e, bool want_vectors) {
  auto at = [&](std::size_t i, std::size_t j) -> double& { return a[i * n + j]; };
  d.assign(n, 0.0);
  e.assign(n, 0.0);

  for (std::size_t i = n - 1; i > 0; --i) {
    const std::size_t l = i - 1;
    double h = 0.0;
    if (l > 0) {
      double scale = 0.0;
      for (std::size_t k = 0; k <= l; ++k) scale += std::abs(at(i, k));
      if (scale == 0.0) {
        e[i] = at(i, l);
      } else {
        for (std::size_t k = 0; k <= l; ++k) {
          at(i, k) /= scale;
          h += at(i, k) * at(i, k);
        }
        double f = at(i, l);
        double g = f >= 0.0 ? -std::sqrt(h) : std::sqrt(h);
        e[i] = scale * g;
        h -= f * g;
        at(i, l) = f - g;
        f = 0.0;
        for (std::size_t j = 0; j <= l; ++j) {
          if (want_vectors) at(j, i) = at(i, j) / h;
          g = 0.0;
          for (std::size_t k = 0; k <= j; ++k) g += at(j, k) * at(i, k);
          for (std::size_t k = j + 1; k <= l; ++k) g += at(k, j) * at(i, k);
          e[j] = g / h;
          f += e[j] * at(i, j);
        }
        const double hh = f / (h + h);
        for (std::size_t j = 0; j <= l; ++j) {
          f = at(i, j);
          g = e[j] - hh * f;
          e[j] = g;
          for (std::size_t k = 0; k <= j; ++k) at(j, k) -= (f * e[k] + g * at(i, k));
        }
      }
    } else {
      e[i] = at(i, l);
    }
    d[i] = h;
  }

  d[0] = 0.0;
  e[0] = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (want_vectors) {
      if (d[i] != 0.0) {
        for (std::size_t j = 0; j < i; ++j) {
          double g = 0.0;
          for (std::size_t k = 0; k < i; ++k) g += at(i, k) * at(k, j);
          for (std::size_t k = 0; k < i; ++k) at(k, j) -= g * at(k, i);
        }
      }
      d[i] = at(i, i);
      at(i, i) = 1.0;
      for (std::size_t j = 0; j < i; ++j) at(j, i) = at(i, j) = 0.0;
    } else {
      d[i] = at(i, i);
    }
  }
}

// Implicit QL on the tridiagonal (d, e) produced above. `zt` is the
// transpose of the accumulated transformation (row r = column r of Q) so
// each plane rotation touches two contiguous rows.
void ql_implicit(std::vector<double>& d, std::vector<double>& e, std::size_t n,
                 std::vector<double>* zt) {
  for (std::size_t i = 1; i < n; ++i) e[i - 1] = e[i];
  e[n - 1] = 0.0;

  const double eps = std::numeric_limits<double>::epsilon();
  for (std::size_t l = 0; l < n; ++l) {
    int iter = 0;
    std::size_t m = l;
    do {
      for (m = l; m + 1 < n; ++m) {
        const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(e[m]) <= eps * dd) break;
      }
      if (m != l) {
        if (iter++ == kMaxQlIterations) {
          throw Error(ErrorCode::ConvergenceFailure, "implicit QL did not converge");
        }
        double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
        double r = std::hypot(g, 1.0);
        g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
        double s = 1.0;
        double c = 1.0;
        double p = 0.0;
        bool underflow = false;
        for (std::size_t ii = m; ii-- > l;) {
          double f = s * e[ii];
          const double b = c * e[ii];
          r = std::hypot(f, g);
          e[ii + 1] = r;
          if (r == 0.0) {
            d[ii + 1] -= p;
            e[m] = 0.0;
            underflow = true;
            break;
          }
          s = f / r;
          c = g / r;
          g = d[ii + 1] - p;
          r = (d[ii] - g) * s + 2.0 * c * b;
          p = s * r;
          d[ii + 1] = g + p;
          g = c * r - b;
          if (zt != nullptr) {
            double* lo = zt->data() + ii * n;
            double* hi = lo + n;
            for (std::size_t k = 0; k < n; ++k) {
              f = hi[k];
              hi[k] = s * lo[k] + c * f;
              lo[k] = c * lo[k] - s * f;
            }
          }
        }
        if (underflow) continue;
        d[l] -= p;
        e[l] = g;
        e[m] = 0.0;
      }
    } while (m != l);
  }
}

}  // namespace

SymMatrix::SymMatrix(std::size_t dim, std::vector<double> entries)
    : dim_(dim), entries_(std::move(entries)) {
  if (entries_.size() != dim_ * dim_) {
    throw Error(ErrorCode::InvalidParameter, "SymMatrix entries must have dim^2 elements");
  }
}

double SymMatrix::max_abs() const noexcept {
  double m = 0.0;
  for (double v : entries_) m = std::max(m, std::abs(v));
  return m;
}

EigenSystem eigh(const SymMatrix& a) {
  check_input(a);
  const std::size_t n = a.dim();
  std::vector<double> work(a.entries().begin(), a.entries().end());
  std::vector<double> d;
  std::vector<double> e;
  tridiagonalize(work, n, d, e, true);

  // work holds Q row-major; QL wants its transpose.
  std::vector<double> zt(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) zt[j * n + i] = work[i * n + j];
  ql_implicit(d, e, n, &zt);

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return d[x] < d[y]; });

  EigenSystem out;
  out.dim = n;
  out.values.resize(n);
  out.vectors.resize(n * n);
  for (std::size_t k = 0; k < n; ++k) {
    out.values[k] = d[order[k]];
    std::copy_n(zt.data() + order[k] * n, n, out.vectors.data() + k * n);
  }
  return out;
}

std::vector<double> eigvalsh(const SymMatrix& a) {
  check_input(a);
  const std::size_t n = a.dim();
  std::vector<double> work(a.entries().begin(), a.entries().end());
  std::vector<double> d;
  std::vector<double> e;
  tridiagonalize(work, n, d, e, false);
  ql_implicit(d, e, n, nullptr);
  std::sort(d.begin(), d.end());
  return d;
}

ThermalWeights thermal_weights(std::span<const double> values, double beta) {
  if (!(beta > 0.0)) throw Error(ErrorCode::NonPositiveBeta, "beta must be positive");
  ThermalWeights out;
  if (values.empty()) return out;
  const double e0 = *std::min_element(values.begin(), values.end());
  out.weights.resize(values.size());
  double sum = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    out.weights[i] = std::exp(-beta * (values[i] - e0));
    sum += out.weights[i];
  }
  for (double& w : out.weights) w /= sum;
  out.log_z = -beta * e0 + std::log(sum);
  return out;
}

}  // namespace tqd::spectral
