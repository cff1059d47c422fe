#pragma once

#include <array>
#include <complex>

namespace tqd::qcorr {

/// Two-qubit density matrix in X form, basis |00>, |01>, |10>, |11>, with
/// |0> the sigma^z = +1 state. Only the real diagonal and the two real
/// anti-diagonal coherences are stored.
struct XState {
  double r11 = 0.25;
  double r22 = 0.25;
  double r33 = 0.25;
  double r44 = 0.25;
  double r14 = 0.0;
  double r23 = 0.0;

  static XState maximally_mixed() { return {}; }
};

/// Checks the XState invariants (unit trace, populations >= -1e-12,
/// positive 2x2 blocks) and returns a copy with tiny negative populations
/// clamped to zero. Throws InvalidState otherwise.
XState validated(const XState& s);

/// Single-qubit density matrix [[p0, c], [conj(c), p1]].
struct QubitState {
  double p0 = 0.5;
  double p1 = 0.5;
  std::complex<double> c{};
};

enum class Side { A, B };

/// Projective measurement axis n = (sin t cos p, sin t sin p, cos t).
struct MeasurementAngles {
  double theta = 0.0;
  double phi = 0.0;
};

struct CorrelationSet {
  double discord = 0.0;
  double eof = 0.0;
  double concurrence = 0.0;
  double mutual_info = 0.0;
  double sz = 0.0;
  double sxx = 0.0;
  double syy = 0.0;
  double szz = 0.0;
};

/// Local Bloch vectors and correlation tensor of a two-qubit state,
/// rho = (I + a.sigma x I + I x b.sigma + sum T_ij sigma_i x sigma_j)/4.
struct BlochForm {
  std::array<double, 3> a{};
  std::array<double, 3> b{};
  std::array<std::array<double, 3>, 3> t{};
};

BlochForm bloch_form(const XState& s);

/// Four eigenvalues of the X state (unclamped).
std::array<double, 4> eigenvalues(const XState& s);

QubitState reduced_state(const XState& s, Side keep);

/// Binary entropy in bits with 0 log 0 = 0.
double binary_entropy(double p);

double von_neumann_entropy(const XState& s);
double von_neumann_entropy(const QubitState& q);

double mutual_information(const XState& s);

/// Average entropy of the unmeasured qubit after a projective measurement
/// along `m` on `measured`.
double conditional_entropy(const XState& s, MeasurementAngles m, Side measured = Side::B);

struct ConditionalMinimum {
  double value = 0.0;
  MeasurementAngles argmin;
};

/// Minimum of conditional_entropy over projective measurements: a 61x61
/// (theta, phi) grid followed by alternating Brent line searches from the
/// best grid point.
ConditionalMinimum min_conditional_entropy(const XState& s, Side measured = Side::B);

double discord(const XState& s, Side measured = Side::B);
double concurrence(const XState& s);
double eof_from_concurrence(double c);
double eof(const XState& s);

/// All measures at once. Discord is the B-measured value; sz is the
/// single-site magnetization (<sz_A> + <sz_B>)/2.
CorrelationSet correlation_set(const XState& s);

}  // namespace tqd::qcorr
