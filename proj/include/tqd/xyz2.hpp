#pragma once

#include "tqd/qcorr.hpp"
#include "tqd/spectral.hpp"

namespace tqd::xyz2 {

/// H = (jx sx sx + jy sy sy + jz sz sz)/4 + (b/2)(sz_1 + sz_2) for two
/// spins in contact with a bath at temperature kt (k_B = 1).
struct TwoSpinXYZParams {
  double jx = 0.0;
  double jy = 0.0;
  double jz = 0.0;
  double b = 0.0;
  double kt = 1.0;

  static TwoSpinXYZParams xxx(double j, double b, double kt) { return {j, j, j, b, kt}; }
};

/// Lowest temperature accepted by the two-spin backend.
inline constexpr double kMinTemperature = 1e-3;

/// Closed-form Gibbs state exp(-H/kt)/Z. Throws NonPositiveTemperature
/// for kt <= 0 and InvalidParameter for non-finite inputs.
qcorr::XState thermal_state(const TwoSpinXYZParams& p);

qcorr::CorrelationSet correlations(const TwoSpinXYZParams& p);

/// Explicit 4x4 Hamiltonian in the |00>,|01>,|10>,|11> basis.
spectral::SymMatrix hamiltonian(const TwoSpinXYZParams& p);

}  // namespace tqd::xyz2
