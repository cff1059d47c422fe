#include "tqd/qcorr.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <span>
#include <string>

#include <boost/math/tools/minima.hpp>

#include "tqd/error.hpp"

namespace tqd::qcorr {

namespace {

constexpr double kTraceTolerance = 1e-10;
constexpr double kPopulationFloor = -1e-12;
constexpr double kPositivityTolerance = 1e-10;
constexpr double kOutcomeFloor = 1e-15;

constexpr int kGridTheta = 61;
constexpr int kGridPhi = 61;
constexpr int kMaxRefineCycles = 100;

double qubit_entropy_from_bloch(double r) {
  r = std::clamp(r, 0.0, 1.0);
  return binary_entropy(0.5 * (1.0 + r));
}

double norm3(const std::array<double, 3>& v) {
  return std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
}

std::array<double, 3> axis(MeasurementAngles m) {
  const double st = std::sin(m.theta);
  return {st * std::cos(m.phi), st * std::sin(m.phi), std::cos(m.theta)};
}

double conditional_entropy_bloch(const BlochForm& f, MeasurementAngles m, Side measured) {
  const auto n = axis(m);
  const auto& own = measured == Side::B ? f.b : f.a;
  const auto& other = measured == Side::B ? f.a : f.b;
  // T n for a B measurement, T^T n for an A measurement.
  std::array<double, 3> tn{};
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      tn[i] += (measured == Side::B ? f.t[i][j] : f.t[j][i]) * n[j];
    }
  }
  const double own_n = own[0] * n[0] + own[1] * n[1] + own[2] * n[2];
  double total = 0.0;
  for (double sign : {1.0, -1.0}) {
    const double denom = 1.0 + sign * own_n;
    const double p = 0.5 * denom;
    if (p < kOutcomeFloor) continue;
    std::array<double, 3> r{};
    for (int i = 0; i < 3; ++i) r[i] = (other[i] + sign * tn[i]) / denom;
    total += p * qubit_entropy_from_bloch(norm3(r));
  }
  return total;
}

MeasurementAngles normalized(MeasurementAngles m) {
  constexpr double pi = std::numbers::pi;
  double t = std::remainder(m.theta, 2.0 * pi);  // (-pi, pi]
  double p = m.phi;
  if (t < 0.0) {
    t = -t;
    p += pi;
  }
  p = std::fmod(p, 2.0 * pi);
  if (p < 0.0) p += 2.0 * pi;
  if (p >= 2.0 * pi) p = 0.0;
  return {t, p};
}

double entropy_of(std::span<const double> spectrum) {
  double s = 0.0;
  for (double l : spectrum) {
    l = std::clamp(l, 0.0, 1.0);
    if (l > 0.0) s -= l * std::log2(l);
  }
  return s;
}

}  // namespace

XState validated(const XState& s) {
  const double values[] = {s.r11, s.r22, s.r33, s.r44, s.r14, s.r23};
  for (double v : values) {
    if (!std::isfinite(v)) throw Error(ErrorCode::InvalidState, "non-finite matrix element");
  }
  const double trace = s.r11 + s.r22 + s.r33 + s.r44;
  if (std::abs(trace - 1.0) > kTraceTolerance) {
    throw Error(ErrorCode::InvalidState, "trace " + std::to_string(trace) + " != 1");
  }
  XState out = s;
  for (double* r : {&out.r11, &out.r22, &out.r33, &out.r44}) {
    if (*r < kPopulationFloor) {
      throw Error(ErrorCode::InvalidState, "negative population " + std::to_string(*r));
    }
    *r = std::max(*r, 0.0);
  }
  if (out.r11 * out.r44 < out.r14 * out.r14 - kPositivityTolerance ||
      out.r22 * out.r33 < out.r23 * out.r23 - kPositivityTolerance) {
    throw Error(ErrorCode::InvalidState, "X state is not positive semidefinite");
  }
  return out;
}

BlochForm bloch_form(const XState& s) {
  BlochForm f;
  f.a[2] = s.r11 + s.r22 - s.r33 - s.r44;
  f.b[2] = s.r11 - s.r22 + s.r33 - s.r44;
  f.t[0][0] = 2.0 * (s.r14 + s.r23);
  f.t[1][1] = 2.0 * (s.r23 - s.r14);
  f.t[2][2] = s.r11 - s.r22 - s.r33 + s.r44;
  return f;
}

std::array<double, 4> eigenvalues(const XState& s) {
  const double outer_mean = 0.5 * (s.r11 + s.r44);
  const double outer_rad = std::hypot(0.5 * (s.r11 - s.r44), s.r14);
  const double inner_mean = 0.5 * (s.r22 + s.r33);
  const double inner_rad = std::hypot(0.5 * (s.r22 - s.r33), s.r23);
  return {outer_mean + outer_rad, outer_mean - outer_rad, inner_mean + inner_rad,
          inner_mean - inner_rad};
}

QubitState reduced_state(const XState& s, Side keep) {
  if (keep == Side::A) return {s.r11 + s.r22, s.r33 + s.r44, {}};
  return {s.r11 + s.r33, s.r22 + s.r44, {}};
}

double binary_entropy(double p) {
  if (p <= 0.0 || p >= 1.0) return 0.0;
  return -p * std::log2(p) - (1.0 - p) * std::log2(1.0 - p);
}

double von_neumann_entropy(const XState& s) {
  const XState v = validated(s);
  const auto ev = eigenvalues(v);
  return entropy_of(ev);
}

double von_neumann_entropy(const QubitState& q) {
  const double trace = q.p0 + q.p1;
  if (!std::isfinite(trace) || std::abs(trace - 1.0) > kTraceTolerance ||
      q.p0 < kPopulationFloor || q.p1 < kPopulationFloor ||
      q.p0 * q.p1 < std::norm(q.c) - kPositivityTolerance) {
    throw Error(ErrorCode::InvalidState, "invalid single-qubit density matrix");
  }
  const double r = std::sqrt((q.p0 - q.p1) * (q.p0 - q.p1) + 4.0 * std::norm(q.c));
  return qubit_entropy_from_bloch(r);
}

double mutual_information(const XState& s) {
  const XState v = validated(s);
  return von_neumann_entropy(reduced_state(v, Side::A)) +
         von_neumann_entropy(reduced_state(v, Side::B)) - von_neumann_entropy(v);
}

double conditional_entropy(const XState& s, MeasurementAngles m, Side measured) {
  const XState v = validated(s);
  return conditional_entropy_bloch(bloch_form(v), m, measured);
}

ConditionalMinimum min_conditional_entropy(const XState& s, Side measured) {
  constexpr double pi = std::numbers::pi;
  const BlochForm f = bloch_form(validated(s));
  auto objective = [&](MeasurementAngles m) { return conditional_entropy_bloch(f, m, measured); };

  const double d_theta = pi / (kGridTheta - 1);
  const double d_phi = 2.0 * pi / kGridPhi;
  ConditionalMinimum best{std::numeric_limits<double>::infinity(), {}};
  for (int i = 0; i < kGridTheta; ++i) {
    for (int j = 0; j < kGridPhi; ++j) {
      const MeasurementAngles m{i * d_theta, j * d_phi};
      const double v = objective(m);
      if (v < best.value) best = {v, m};
    }
  }
  // The three Pauli axes are where X states usually attain the minimum.
  for (MeasurementAngles m : {MeasurementAngles{0.0, 0.0}, MeasurementAngles{pi / 2, 0.0},
                              MeasurementAngles{pi / 2, pi / 2}}) {
    const double v = objective(m);
    if (v < best.value) best = {v, m};
  }

  constexpr int bits = std::numeric_limits<double>::digits / 2;
  boost::uintmax_t max_iter = 200;
  MeasurementAngles cur = best.argmin;
  double cur_value = best.value;
  for (int cycle = 0; cycle < kMaxRefineCycles; ++cycle) {
    const double start = cur_value;

    max_iter = 200;
    auto [t, vt] = boost::math::tools::brent_find_minima(
        [&](double th) { return objective({th, cur.phi}); }, cur.theta - d_theta,
        cur.theta + d_theta, bits, max_iter);
    if (vt < cur_value) {
      cur.theta = t;
      cur_value = vt;
    }

    max_iter = 200;
    auto [p, vp] = boost::math::tools::brent_find_minima(
        [&](double ph) { return objective({cur.theta, ph}); }, cur.phi - d_phi, cur.phi + d_phi,
        bits, max_iter);
    if (vp < cur_value) {
      cur.phi = p;
      cur_value = vp;
    }

    if (start - cur_value < 1e-14) break;
  }
  return {cur_value, normalized(cur)};
}

double discord(const XState& s, Side measured) {
  const XState v = validated(s);
  const double s_ab = von_neumann_entropy(v);
  // S(A|B) = S(AB) - S(B) when B is the measured side.
  const double s_measured = von_neumann_entropy(reduced_state(v, measured));
  const double quantum_cond = min_conditional_entropy(v, measured).value;
  return std::max(quantum_cond - (s_ab - s_measured), 0.0);
}

double concurrence(const XState& s) {
  const XState v = validated(s);
  const double l1 = std::abs(v.r14) - std::sqrt(v.r22 * v.r33);
  const double l2 = std::abs(v.r23) - std::sqrt(v.r11 * v.r44);
  return std::min(2.0 * std::max({0.0, l1, l2}), 1.0);
}

double eof_from_concurrence(double c) {
  c = std::clamp(c, 0.0, 1.0);
  if (c == 0.0) return 0.0;
  const double g = 0.5 * (1.0 + std::sqrt(1.0 - c * c));
  return binary_entropy(g);
}

double eof(const XState& s) { return eof_from_concurrence(concurrence(s)); }

CorrelationSet correlation_set(const XState& s) {
  const XState v = validated(s);
  const BlochForm f = bloch_form(v);
  CorrelationSet out;
  out.discord = discord(v, Side::B);
  out.concurrence = concurrence(v);
  out.eof = eof_from_concurrence(out.concurrence);
  out.mutual_info = std::max(mutual_information(v), 0.0);
  out.sz = 0.5 * (f.a[2] + f.b[2]);
  out.sxx = f.t[0][0];
  out.syy = f.t[1][1];
  out.szz = f.t[2][2];
  return out;
}

}  // namespace tqd::qcorr
