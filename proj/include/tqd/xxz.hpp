#pragma once

#include <cstdint>
#include <vector>

#include "tqd/qcorr.hpp"
#include "tqd/spectral.hpp"

namespace tqd::xxz {

/// Periodic chain H = j sum (sx sx + sy sy + delta sz sz) - (h/2) sum sz.
struct XXZParams {
  double delta = 0.0;
  double h = 0.0;
  double j = 1.0;
  double kt = 1.0;
  int length = 12;
};

inline constexpr int kMinLength = 4;
inline constexpr int kMaxLength = 16;
/// Largest U(1) sector sector_spectra will diagonalize densely (C(14,7)).
inline constexpr std::size_t kMaxDenseSectorDim = 3432;

struct XXZCorrelators {
  double sz = 0.0;
  double szz = 0.0;
  double sxx = 0.0;
};

/// One fixed-magnetization block: basis states (bit set = spin up) in
/// ascending bit-pattern order and the dense eigensystem of H restricted
/// to them.
struct Sector {
  int n_up = 0;
  std::vector<std::uint32_t> basis;
  spectral::EigenSystem spectrum;
};

/// Throws InvalidParameter / NonPositiveTemperature / LengthTooLarge.
void validate(const XXZParams& p);

/// Dense diagonalization of every magnetization sector, ordered by n_up.
/// Throws LengthTooLarge when a sector exceeds max_sector_dim.
std::vector<Sector> sector_spectra(const XXZParams& p,
                                   std::size_t max_sector_dim = kMaxDenseSectorDim);

/// Levels of the n_up sector obtained from its lattice-momentum blocks,
/// sorted ascending. Same multiset as sector_spectra()[n_up].spectrum.values.
std::vector<double> sector_levels_by_momentum(const XXZParams& p, int n_up);

/// Thermal nearest-neighbour correlators <sz>, <sz_1 sz_2>, <sx_1 sx_2>.
XXZCorrelators correlators(const XXZParams& p);

qcorr::XState reduced_state(const XXZCorrelators& c);
qcorr::XState reduced_state(const XXZParams& p);
qcorr::CorrelationSet correlations(const XXZParams& p);

/// First-order critical anisotropy h/(4j) - 1. Throws ZeroExchange.
double cp_first_order(double h, double j);

/// 4 j sinh(eta) sum_n (-1)^n / cosh(n eta) with eta = acosh(delta).
double cp_infinite_order_rhs(double delta, double j);

/// Root delta >= 1 of h = cp_infinite_order_rhs(delta, j). Throws NoRoot
/// when h is outside [0, rhs(1000)] and ZeroExchange for j == 0.
double cp_infinite_order(double h, double j);

}  // namespace tqd::xxz
