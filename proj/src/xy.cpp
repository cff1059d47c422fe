#include "tqd/xy.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include <boost/math/quadrature/gauss.hpp>

#include "tqd/error.hpp"

namespace tqd::xy {

namespace {

constexpr int kGaussPoints = 20;
using Rule = boost::math::quadrature::gauss<double, kGaussPoints>;

// tanh(2 omega/kt) / (2 pi omega), continuous at omega = 0.
double thermal_kernel(double w, double kt) {
  const double x = 2.0 * w / kt;
  if (x < 1e-8) return (2.0 / kt) / (2.0 * std::numbers::pi);
  return std::tanh(x) / (2.0 * std::numbers::pi * w);
}

// values[0] = <sz>, values[1 + (m + k)] = G_m.
void accumulate(const XYParams& p, double phi, double weight, std::vector<double>& values) {
  const double c = std::cos(phi);
  const double s = std::sin(phi);
  const double tau = thermal_kernel(omega(phi, p), p.kt);
  const double field = 1.0 + p.lambda * c;
  values[0] += weight * field * tau;
  for (int m = -p.k; m <= p.k; ++m) {
    const double g = tau * (std::cos(m * phi) * field - p.gamma * p.lambda * std::sin(m * phi) * s);
    values[static_cast<std::size_t>(1 + m + p.k)] += weight * g;
  }
}

std::vector<double> composite_rule(const XYParams& p, int panels) {
  std::vector<double> values(static_cast<std::size_t>(2 * p.k + 2), 0.0);
  const double width = std::numbers::pi / panels;
  const auto& nodes = Rule::abscissa();
  const auto& weights = Rule::weights();
  for (int i = 0; i < panels; ++i) {
    const double mid = (i + 0.5) * width;
    const double half = 0.5 * width;
    for (std::size_t n = 0; n < nodes.size(); ++n) {
      accumulate(p, mid + half * nodes[n], half * weights[n], values);
      accumulate(p, mid - half * nodes[n], half * weights[n], values);
    }
  }
  return values;
}

}  // namespace

void validate(const XYParams& p) {
  if (!std::isfinite(p.lambda) || p.lambda < 0.0) {
    throw Error(ErrorCode::InvalidParameter, "lambda must be finite and >= 0");
  }
  if (!std::isfinite(p.gamma) || p.gamma < -1.0 || p.gamma > 1.0) {
    throw Error(ErrorCode::InvalidParameter, "gamma must lie in [-1, 1]");
  }
  if (!std::isfinite(p.kt)) throw Error(ErrorCode::InvalidParameter, "kt must be finite");
  if (!(p.kt > 0.0)) throw Error(ErrorCode::NonPositiveTemperature, "kt must be positive");
  if (p.k < 1 || p.k > kMaxDistance) {
    throw Error(ErrorCode::InvalidParameter,
                "neighbour distance k must be in [1, " + std::to_string(kMaxDistance) + "]");
  }
}

double omega(double phi, const XYParams& p) {
  const double a = p.gamma * p.lambda * std::sin(phi);
  const double b = 1.0 + p.lambda * std::cos(phi);
  return 0.5 * std::hypot(a, b);
}

GFunction::GFunction(const XYParams& p, const QuadratureOptions& opts) : k_(p.k) {
  validate(p);
  int panels = opts.initial_panels;
  auto prev = composite_rule(p, panels);
  for (;;) {
    if (2 * panels > opts.max_panels) {
      throw Error(ErrorCode::QuadratureFailure,
                  "no convergence to " + std::to_string(opts.tolerance) + " with " +
                      std::to_string(opts.max_panels) + " panels");
    }
    panels *= 2;
    auto cur = composite_rule(p, panels);
    double change = 0.0;
    for (std::size_t i = 0; i < cur.size(); ++i) change = std::max(change, std::abs(cur[i] - prev[i]));
    prev = std::move(cur);
    if (change < opts.tolerance) {
      last_change_ = change;
      break;
    }
  }
  panels_ = panels;
  sz_ = prev[0];
  g_.assign(prev.begin() + 1, prev.end());
}

double GFunction::operator()(int m) const {
  if (m < -k_ || m > k_) {
    throw Error(ErrorCode::InvalidParameter, "G index " + std::to_string(m) + " outside cache");
  }
  return g_[static_cast<std::size_t>(m + k_)];
}

double transverse_magnetization(const XYParams& p) { return GFunction(p).magnetization(); }

double g_function(int m, const XYParams& p) {
  XYParams q = p;
  q.k = std::max(std::abs(m), 1);
  validate(q);
  return GFunction(q)(m);
}

double determinant(std::vector<double> a, int n) {
  double det = 1.0;
  const auto at = [&](int i, int j) -> double& { return a[static_cast<std::size_t>(i * n + j)]; };
  for (int col = 0; col < n; ++col) {
    int pivot = col;
    for (int r = col + 1; r < n; ++r) {
      if (std::abs(at(r, col)) > std::abs(at(pivot, col))) pivot = r;
    }
    if (at(pivot, col) == 0.0) return 0.0;
    if (pivot != col) {
      for (int j = 0; j < n; ++j) std::swap(at(pivot, j), at(col, j));
      det = -det;
    }
    det *= at(col, col);
    for (int r = col + 1; r < n; ++r) {
      const double f = at(r, col) / at(col, col);
      for (int j = col; j < n; ++j) at(r, j) -= f * at(col, j);
    }
  }
  return det;
}

namespace {

double toeplitz(const GFunction& g, int offset) {
  const int k = g.max_index();
  std::vector<double> a(static_cast<std::size_t>(k * k));
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) a[static_cast<std::size_t>(i * k + j)] = g(i - j + offset);
  return determinant(std::move(a), k);
}

}  // namespace

XYCorrelators correlators(const GFunction& g) {
  const int k = g.max_index();
  XYCorrelators c;
  c.sz = g.magnetization();
  c.sxx = toeplitz(g, -1);
  c.syy = toeplitz(g, +1);
  c.szz = c.sz * c.sz - g(k) * g(-k);
  return c;
}

XYCorrelators correlators(const XYParams& p, const QuadratureOptions& opts) {
  return correlators(GFunction(p, opts));
}

double xx_correlator(const XYParams& p) { return toeplitz(GFunction(p), -1); }
double yy_correlator(const XYParams& p) { return toeplitz(GFunction(p), +1); }
double zz_correlator(const XYParams& p) { return correlators(p).szz; }

qcorr::XState reduced_state(const XYCorrelators& c) {
  qcorr::XState s;
  s.r11 = (1.0 + 2.0 * c.sz + c.szz) / 4.0;
  s.r44 = (1.0 - 2.0 * c.sz + c.szz) / 4.0;
  s.r22 = (1.0 - c.szz) / 4.0;
  s.r33 = s.r22;
  s.r14 = (c.sxx - c.syy) / 4.0;
  s.r23 = (c.sxx + c.syy) / 4.0;
  return s;
}

qcorr::XState reduced_state(const XYParams& p) { return reduced_state(correlators(p)); }

qcorr::CorrelationSet correlations(const XYParams& p) {
  return qcorr::correlation_set(reduced_state(p));
}

}  // namespace tqd::xy
