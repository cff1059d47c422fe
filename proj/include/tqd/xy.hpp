#pragma once

#include <vector>

#include "tqd/qcorr.hpp"

namespace tqd::xy {

/// Infinite XY chain in a transverse field,
/// H = -(lambda/2) sum [(1+gamma) sx sx + (1-gamma) sy sy] - sum sz,
/// at temperature kt; k is the distance between the two spins studied.
struct XYParams {
  double lambda = 0.0;
  double gamma = 0.0;
  double kt = 1.0;
  int k = 1;
};

inline constexpr int kMaxDistance = 4;

struct QuadratureOptions {
  double tolerance = 1e-10;
  int initial_panels = 8;
  int max_panels = 1 << 16;
};

/// Quasiparticle energy sqrt((gamma lambda sin phi)^2 + (1 + lambda cos phi)^2)/2.
double omega(double phi, const XYParams& p);

/// Transverse magnetization <sz> and the G_m integrals for |m| <= k,
/// evaluated together by composite Gauss-Legendre with panel doubling.
class GFunction {
 public:
  GFunction(const XYParams& p, const QuadratureOptions& opts = {});

  double operator()(int m) const;
  int max_index() const noexcept { return k_; }
  double magnetization() const noexcept { return sz_; }
  int panels() const noexcept { return panels_; }
  /// Largest change of any integral in the final doubling step.
  double last_change() const noexcept { return last_change_; }

 private:
  int k_;
  double sz_ = 0.0;
  std::vector<double> g_;
  int panels_ = 0;
  double last_change_ = 0.0;
};

void validate(const XYParams& p);

double transverse_magnetization(const XYParams& p);
double g_function(int m, const XYParams& p);

/// <sx_0 sx_k>, <sy_0 sy_k> as k x k Toeplitz determinants of G and
/// <sz_0 sz_k> = <sz>^2 - G_k G_{-k}.
double xx_correlator(const XYParams& p);
double yy_correlator(const XYParams& p);
double zz_correlator(const XYParams& p);

struct XYCorrelators {
  double sz = 0.0;
  double sxx = 0.0;
  double syy = 0.0;
  double szz = 0.0;
};

XYCorrelators correlators(const XYParams& p, const QuadratureOptions& opts = {});
XYCorrelators correlators(const GFunction& g);

qcorr::XState reduced_state(const XYCorrelators& c);
qcorr::XState reduced_state(const XYParams& p);
qcorr::CorrelationSet correlations(const XYParams& p);

/// Determinant by LU with partial pivoting; `a` is row-major n x n.
double determinant(std::vector<double> a, int n);

}  // namespace tqd::xy
