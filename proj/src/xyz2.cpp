#include "tqd/xyz2.hpp"

#include <algorithm>
#include <cmath>

#include "tqd/error.hpp"

namespace tqd::xyz2 {

namespace {

void check(const TwoSpinXYZParams& p) {
  for (double v : {p.jx, p.jy, p.jz, p.b, p.kt}) {
    if (!std::isfinite(v)) throw Error(ErrorCode::InvalidParameter, "non-finite parameter");
  }
  if (!(p.kt > 0.0)) throw Error(ErrorCode::NonPositiveTemperature, "kt must be positive");
}

}  // namespace

qcorr::XState thermal_state(const TwoSpinXYZParams& p) {
  check(p);
  const double delta = p.jx - p.jy;
  const double sigma = p.jx + p.jy;
  const double eta = std::sqrt(delta * delta + 16.0 * p.b * p.b);
  const double alpha = p.jz / (4.0 * p.kt);
  const double beta = eta / (4.0 * p.kt);
  const double gamma = sigma / (4.0 * p.kt);

  // Every entry is a combination of exp(-alpha +- beta) and
  // exp(alpha +- gamma); factor out the largest exponent.
  const double shift = std::max(-alpha + beta, alpha + std::abs(gamma));
  const double ea = std::exp(-alpha - shift);
  const double cosh_b = 0.5 * (std::exp(-alpha + beta - shift) + std::exp(-alpha - beta - shift));
  const double cosh_g = 0.5 * (std::exp(alpha + gamma - shift) + std::exp(alpha - gamma - shift));
  const double sinh_g = 0.5 * (std::exp(alpha + gamma - shift) - std::exp(alpha - gamma - shift));

  // e^{-alpha} sinh(beta)/eta, finite as eta -> 0.
  double sinh_over_eta;
  if (eta == 0.0) {
    sinh_over_eta = ea / (4.0 * p.kt);
  } else if (beta < 1.0) {
    sinh_over_eta = ea * std::sinh(beta) / eta;
  } else {
    sinh_over_eta =
        0.5 * (std::exp(-alpha + beta - shift) - std::exp(-alpha - beta - shift)) / eta;
  }

  const double a11 = cosh_b - 4.0 * p.b * sinh_over_eta;
  const double a22 = cosh_b + 4.0 * p.b * sinh_over_eta;
  const double a12 = -delta * sinh_over_eta;
  const double b11 = cosh_g;
  const double b12 = -sinh_g;
  const double z = 2.0 * (cosh_b + cosh_g);

  qcorr::XState s;
  s.r11 = a11 / z;
  s.r44 = a22 / z;
  s.r22 = b11 / z;
  s.r33 = b11 / z;
  s.r14 = a12 / z;
  s.r23 = b12 / z;
  return s;
}

qcorr::CorrelationSet correlations(const TwoSpinXYZParams& p) {
  return qcorr::correlation_set(thermal_state(p));
}

spectral::SymMatrix hamiltonian(const TwoSpinXYZParams& p) {
  spectral::SymMatrix h(4);
  h(0, 0) = p.jz / 4.0 + p.b;
  h(3, 3) = p.jz / 4.0 - p.b;
  h(1, 1) = -p.jz / 4.0;
  h(2, 2) = -p.jz / 4.0;
  h(0, 3) = h(3, 0) = (p.jx - p.jy) / 4.0;
  h(1, 2) = h(2, 1) = (p.jx + p.jy) / 4.0;
  return h;
}

}  // namespace tqd::xyz2
