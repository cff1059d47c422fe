#include "tqd/xxz.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>

#include "tqd/error.hpp"

namespace tqd::xxz {

namespace {

using cplx = std::complex<double>;

struct Lattice {
  int length;
  std::uint32_t mask;

  explicit Lattice(int l) : length(l), mask((std::uint32_t{1} << l) - 1) {}

  std::uint32_t rotate(std::uint32_t s) const {
    return ((s << 1) | (s >> (length - 1))) & mask;
  }
  // sum_j sz_j sz_{j+1}
  double zz_sum(std::uint32_t s) const {
    const int anti = std::popcount(s ^ rotate(s));
    return static_cast<double>(length - 2 * anti);
  }
  std::uint32_t bond_mask(int j) const {
    return (std::uint32_t{1} << j) | (std::uint32_t{1} << ((j + 1) % length));
  }
};

double field_energy(const XXZParams& p, int n_up) {
  return -0.5 * p.h * static_cast<double>(2 * n_up - p.length);
}

std::vector<std::uint32_t> sector_basis(const Lattice& lat, int n_up) {
  std::vector<std::uint32_t> basis;
  for (std::uint32_t s = 0; s <= lat.mask; ++s) {
    if (std::popcount(s) == n_up) basis.push_back(s);
  }
  return basis;
}

// Eigenvalues plus the diagonal expectations <n|sum sz sz|n> and
// <n|sum (sx sx + sy sy)|n> for one sector, from its momentum blocks.
struct SectorLevels {
  std::vector<double> energy;
  std::vector<double> zz;
  std::vector<double> flip;
};

SectorLevels momentum_resolved_levels(const XXZParams& p, const Lattice& lat, int n_up) {
  const int L = lat.length;
  const auto basis = sector_basis(lat, n_up);
  std::vector<std::int32_t> index(std::size_t{lat.mask} + 1, -1);
  for (std::size_t i = 0; i < basis.size(); ++i) index[basis[i]] = static_cast<std::int32_t>(i);

  // Representative (smallest translate) and the shift that reaches it.
  std::vector<std::uint32_t> rep(basis.size());
  std::vector<int> shift(basis.size());
  std::vector<int> period(basis.size(), 0);
  for (std::size_t i = 0; i < basis.size(); ++i) {
    std::uint32_t t = basis[i];
    std::uint32_t best = t;
    int best_l = 0;
    for (int l = 1; l < L; ++l) {
      t = lat.rotate(t);
      if (t < best) {
        best = t;
        best_l = l;
      }
      if (t == basis[i] && period[i] == 0) period[i] = l;
    }
    if (period[i] == 0) period[i] = L;
    rep[i] = best;
    shift[i] = best_l;
  }
  std::vector<std::size_t> reps;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    if (rep[i] == basis[i]) reps.push_back(i);
  }

  const double field = field_energy(p, n_up);
  SectorLevels out;
  std::vector<std::int32_t> local(basis.size(), -1);
  for (int q = 0; q <= L / 2; ++q) {
    std::vector<std::size_t> block;
    for (std::size_t r : reps) {
      if ((q * period[r]) % L == 0) block.push_back(r);
    }
    if (block.empty()) continue;
    const std::size_t m = block.size();
    for (std::size_t a = 0; a < m; ++a) local[block[a]] = static_cast<std::int32_t>(a);

    const double k = 2.0 * std::numbers::pi * q / L;
    std::vector<cplx> flip(m * m, cplx{});
    std::vector<double> zz(m);
    for (std::size_t a = 0; a < m; ++a) {
      const std::uint32_t s = basis[block[a]];
      zz[a] = lat.zz_sum(s);
      for (int j = 0; j < L; ++j) {
        const std::uint32_t bm = lat.bond_mask(j);
        const std::uint32_t pair = s & bm;
        if (pair == 0 || pair == bm) continue;
        const auto target = static_cast<std::size_t>(index[s ^ bm]);
        const std::int32_t b = local[index[rep[target]]];
        if (b < 0) continue;
        const double ratio =
            std::sqrt(static_cast<double>(period[block[a]]) / period[block[static_cast<std::size_t>(b)]]);
        flip[static_cast<std::size_t>(b) * m + a] += 2.0 * ratio * std::polar(1.0, -k * shift[target]);
      }
    }
    for (std::size_t a = 0; a < m; ++a) local[block[a]] = -1;

    const bool real_block = (q == 0) || (2 * q == L);
    const std::size_t dim = real_block ? m : 2 * m;
    spectral::SymMatrix kin(dim);
    for (std::size_t b = 0; b < m; ++b) {
      for (std::size_t a = 0; a < m; ++a) {
        const cplx c = 0.5 * (flip[b * m + a] + std::conj(flip[a * m + b]));
        if (real_block) {
          kin(b, a) = c.real();
        } else {
          kin(b, a) = c.real();
          kin(m + b, m + a) = c.real();
          kin(b, m + a) = -c.imag();
          kin(m + b, a) = c.imag();
        }
      }
    }
    spectral::SymMatrix h(dim);
    for (std::size_t i = 0; i < dim; ++i) {
      for (std::size_t jj = 0; jj < dim; ++jj) h(i, jj) = p.j * kin(i, jj);
      h(i, i) += p.j * p.delta * zz[i % m] + field;
    }

    const auto es = spectral::eigh(h);
    std::vector<double> kv(dim);
    for (std::size_t n = 0; n < dim; ++n) {
      const auto v = es.vector(n);
      double d_exp = 0.0;
      double k_exp = 0.0;
      for (std::size_t i = 0; i < dim; ++i) {
        d_exp += v[i] * v[i] * zz[i % m];
        double row = 0.0;
        for (std::size_t jj = 0; jj < dim; ++jj) row += kin(i, jj) * v[jj];
        k_exp += v[i] * row;
      }
      out.energy.push_back(es.values[n]);
      out.zz.push_back(d_exp);
      out.flip.push_back(k_exp);
    }
  }
  return out;
}

}  // namespace

void validate(const XXZParams& p) {
  for (double v : {p.delta, p.h, p.j, p.kt}) {
    if (!std::isfinite(v)) throw Error(ErrorCode::InvalidParameter, "non-finite XXZ parameter");
  }
  if (!(p.kt > 0.0)) throw Error(ErrorCode::NonPositiveTemperature, "kt must be positive");
  if (p.length < kMinLength || p.length % 2 != 0) {
    throw Error(ErrorCode::InvalidParameter,
                "chain length must be even and >= 4, got " + std::to_string(p.length));
  }
  if (p.length > kMaxLength) {
    throw Error(ErrorCode::LengthTooLarge, "chain length " + std::to_string(p.length) +
                                               " exceeds the supported maximum " +
                                               std::to_string(kMaxLength));
  }
}

std::vector<Sector> sector_spectra(const XXZParams& p, std::size_t max_sector_dim) {
  validate(p);
  const Lattice lat(p.length);
  std::vector<Sector> out;
  for (int n = 0; n <= p.length; ++n) {
    Sector sec;
    sec.n_up = n;
    sec.basis = sector_basis(lat, n);
    const std::size_t dim = sec.basis.size();
    if (dim > max_sector_dim) {
      throw Error(ErrorCode::LengthTooLarge, "sector dimension " + std::to_string(dim) +
                                                 " exceeds cap " + std::to_string(max_sector_dim));
    }
    std::vector<std::int32_t> index(std::size_t{lat.mask} + 1, -1);
    for (std::size_t i = 0; i < dim; ++i) index[sec.basis[i]] = static_cast<std::int32_t>(i);

    spectral::SymMatrix h(dim);
    const double field = field_energy(p, n);
    for (std::size_t a = 0; a < dim; ++a) {
      const std::uint32_t s = sec.basis[a];
      h(a, a) = p.j * p.delta * lat.zz_sum(s) + field;
      for (int j = 0; j < p.length; ++j) {
        const std::uint32_t bm = lat.bond_mask(j);
        const std::uint32_t pair = s & bm;
        if (pair == 0 || pair == bm) continue;
        h(static_cast<std::size_t>(index[s ^ bm]), a) += 2.0 * p.j;
      }
    }
    sec.spectrum = spectral::eigh(h);
    out.push_back(std::move(sec));
  }
  return out;
}

std::vector<double> sector_levels_by_momentum(const XXZParams& p, int n_up) {
  validate(p);
  if (n_up < 0 || n_up > p.length) {
    throw Error(ErrorCode::InvalidParameter, "n_up out of range");
  }
  auto levels = momentum_resolved_levels(p, Lattice(p.length), n_up).energy;
  std::sort(levels.begin(), levels.end());
  return levels;
}

XXZCorrelators correlators(const XXZParams& p) {
  validate(p);
  const Lattice lat(p.length);
  const int L = p.length;

  std::vector<double> energy;
  std::vector<double> magnetization;
  std::vector<double> zz;
  std::vector<double> flip;
  auto append = [&](const SectorLevels& lv, double shift, int n_up) {
    for (std::size_t i = 0; i < lv.energy.size(); ++i) {
      energy.push_back(lv.energy[i] + shift);
      magnetization.push_back(static_cast<double>(2 * n_up - L) / L);
      zz.push_back(lv.zz[i]);
      flip.push_back(lv.flip[i]);
    }
  };
  // Sectors n and L-n share the exchange part; only the Zeeman shift and
  // the sign of the magnetization differ.
  for (int n = 0; n <= L / 2; ++n) {
    const auto lv = momentum_resolved_levels(p, lat, n);
    append(lv, 0.0, n);
    if (2 * n != L) append(lv, field_energy(p, L - n) - field_energy(p, n), L - n);
  }

  const auto tw = spectral::thermal_weights(energy, 1.0 / p.kt);
  XXZCorrelators c;
  for (std::size_t i = 0; i < energy.size(); ++i) {
    const double w = tw.weights[i];
    c.sz += w * magnetization[i];
    c.szz += w * zz[i];
    c.sxx += w * flip[i];
  }
  c.szz /= L;
  c.sxx /= 2.0 * L;  // <sx sx> = <sy sy>, flip = sum (sx sx + sy sy)
  return c;
}

qcorr::XState reduced_state(const XXZCorrelators& c) {
  qcorr::XState s;
  s.r11 = (1.0 + 2.0 * c.sz + c.szz) / 4.0;
  s.r22 = (1.0 - c.szz) / 4.0;
  s.r33 = s.r22;
  s.r44 = (1.0 - 2.0 * c.sz + c.szz) / 4.0;
  s.r23 = 2.0 * c.sxx / 4.0;
  s.r14 = 0.0;
  return s;
}

qcorr::XState reduced_state(const XXZParams& p) { return reduced_state(correlators(p)); }

qcorr::CorrelationSet correlations(const XXZParams& p) {
  return qcorr::correlation_set(reduced_state(p));
}

double cp_first_order(double h, double j) {
  if (j == 0.0) throw Error(ErrorCode::ZeroExchange, "exchange constant j must be nonzero");
  return h / (4.0 * j) - 1.0;
}

double cp_infinite_order_rhs(double delta, double j) {
  if (!(delta >= 1.0)) throw Error(ErrorCode::InvalidParameter, "delta must be >= 1");
  const double eta = std::acosh(delta);
  if (eta == 0.0) return 0.0;
  const long n_max = std::min(static_cast<long>(std::ceil(30.0 / eta)) + 10, 1'000'000L);
  double tail = 0.0;
  for (long n = n_max; n >= 1; --n) {
    const double x = n * eta;
    if (x > 700.0) continue;
    tail += (n % 2 == 0 ? 1.0 : -1.0) / std::cosh(x);
  }
  return 4.0 * j * std::sinh(eta) * (1.0 + 2.0 * tail);
}

double cp_infinite_order(double h, double j) {
  if (j == 0.0) throw Error(ErrorCode::ZeroExchange, "exchange constant j must be nonzero");
  if (!(j > 0.0)) throw Error(ErrorCode::InvalidParameter, "infinite-order CP requires j > 0");
  if (h == 0.0) return 1.0;
  constexpr double kLower = 1.0 + 1e-9;
  constexpr double kUpper = 1e3;
  if (!(h > 0.0) || h > cp_infinite_order_rhs(kUpper, j)) {
    throw Error(ErrorCode::NoRoot, "field " + std::to_string(h) + " outside the attainable range");
  }
  double lo = kLower;
  double hi = kUpper;
  if (cp_infinite_order_rhs(lo, j) >= h) return lo;
  while (hi - lo > 1e-10) {
    const double mid = 0.5 * (lo + hi);
    if (cp_infinite_order_rhs(mid, j) < h) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace tqd::xxz
