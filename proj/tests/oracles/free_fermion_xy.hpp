#pragma once

// Exact thermal correlators of the periodic XY chain
//   H = -(lambda/2) sum [(1+gamma) X_j X_{j+1} + (1-gamma) Y_j Y_{j+1}] - sum Z_j
// of L sites, via Jordan-Wigner Majoranas a_j = S_j X_j, b_j = S_j Y_j
// (S_j the string of Z's left of j). Within each parity sector P the
// Hamiltonian is quadratic, H_P = (i/4) g^T A_P g, with the boundary bond
// multiplied by -P. Traces over a sector use the projector (1 + P Pop)/2,
// and both Tr(. e^{-bH}) and Tr(. Pop e^{-bH}) are Gaussian, so every
// correlator is a Pfaffian of two-point functions.

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

using cplx = std::complex<double>;

/// Pfaffian of a complex antisymmetric matrix (Parlett-Reid with pivoting).
inline cplx pfaffian(Eigen::MatrixXcd a) {
  const Eigen::Index n = a.rows();
  if (n % 2) return 0.0;
  cplx pf = 1.0;
  for (Eigen::Index k = 0; k + 1 < n; k += 2) {
    Eigen::Index kp = k + 1;
    double best = std::abs(a(k + 1, k));
    for (Eigen::Index i = k + 2; i < n; ++i) {
      if (std::abs(a(i, k)) > best) {
        best = std::abs(a(i, k));
        kp = i;
      }
    }
    if (kp != k + 1) {
      a.row(k + 1).swap(a.row(kp));
      a.col(k + 1).swap(a.col(kp));
      pf = -pf;
    }
    if (a(k + 1, k) == 0.0) return 0.0;
    pf *= a(k, k + 1);
    if (k + 2 < n) {
      const Eigen::VectorXcd tau = a.row(k).tail(n - k - 2).transpose() / a(k, k + 1);
      const Eigen::VectorXcd col = a.col(k + 1).tail(n - k - 2);
      a.bottomRightCorner(n - k - 2, n - k - 2) += tau * col.transpose() - col * tau.transpose();
    }
  }
  return pf;
}

class FreeFermionXY {
 public:
  FreeFermionXY(int L, double lambda, double gamma, double kt) : L_(L) {
    for (int p = 0; p < 2; ++p) sectors_[p] = build(p == 0 ? +1 : -1, lambda, gamma, 1.0 / kt);
    // weights of the four Gaussian pieces: (1/2) Z_P and (P/2) T_P
    double m = -1e300;
    for (const auto& s : sectors_) m = std::max({m, s.log_cosh, s.log_sinh});
    z_ = 0.0;
    for (int p = 0; p < 2; ++p) {
      auto& s = sectors_[p];
      s.w_plain = 0.5 * std::exp(s.log_cosh - m);
      s.w_parity = 0.5 * (p == 0 ? 1.0 : -1.0) * s.det_sign * std::exp(s.log_sinh - m);
      z_ += s.w_plain + s.w_parity;
    }
  }

  /// <g_{m_1} ... g_{m_2n}> for distinct Majorana indices (a_j = 2j, b_j = 2j+1).
  cplx majorana_product(const std::vector<int>& idx) const {
    cplx total = 0.0;
    for (const auto& s : sectors_) {
      total += s.w_plain * wick(s.c_plain, idx) + s.w_parity * wick(s.c_parity, idx);
    }
    return total / z_;
  }

  double z(int j) const { return real(cplx(0, -1) * majorana_product({a(j), b(j)})); }

  /// <X_0 X_r>, <Y_0 Y_r>, <Z_0 Z_r> for 1 <= r < L.
  double xx(int r) const {
    std::vector<int> idx{b(0)};
    for (int m = 1; m < r; ++m) {
      idx.push_back(a(m));
      idx.push_back(b(m));
    }
    idx.push_back(a(r));
    return real(std::pow(cplx(0, -1), r) * majorana_product(idx));
  }
  double yy(int r) const {
    std::vector<int> idx{a(0)};
    for (int m = 1; m < r; ++m) {
      idx.push_back(a(m));
      idx.push_back(b(m));
    }
    idx.push_back(b(r));
    return real(cplx(0, 1) * std::pow(cplx(0, -1), r - 1) * majorana_product(idx));
  }
  double zz(int r) const { return real(-majorana_product({a(0), b(0), a(r), b(r)})); }

  struct Correlators {
    double z, xx, yy, zz;
  };
  Correlators nearest(int r = 1) const { return {z(0), xx(r), yy(r), zz(r)}; }

 private:
  struct Sector {
    Eigen::MatrixXcd c_plain, c_parity;  // <g_m g_n> for m != n
    double log_cosh = 0.0, log_sinh = 0.0;
    double det_sign = 1.0;
    double w_plain = 0.0, w_parity = 0.0;
  };

  static int a(int j) { return 2 * j; }
  static int b(int j) { return 2 * j + 1; }
  static double real(cplx v) { return v.real(); }

  static cplx wick(const Eigen::MatrixXcd& c, const std::vector<int>& idx) {
    const Eigen::Index n = static_cast<Eigen::Index>(idx.size());
    Eigen::MatrixXcd k = Eigen::MatrixXcd::Zero(n, n);
    for (Eigen::Index p = 0; p < n; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        k(p, q) = c(idx[p], idx[q]);
        k(q, p) = -k(p, q);
      }
    }
    return pfaffian(k);
  }

  Sector build(int parity, double lambda, double gamma, double beta) const {
    const int n = 2 * L_;
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n, n);
    auto add = [&](int m, int q, double c) {  // term i c g_m g_q
      A(m, q) += 2.0 * c;
      A(q, m) -= 2.0 * c;
    };
    for (int j = 0; j < L_; ++j) {
      add(a(j), b(j), 1.0);  // -Z_j = i a_j b_j
      const int k = (j + 1) % L_;
      const double bc = (k == 0) ? -static_cast<double>(parity) : 1.0;
      add(b(j), a(k), bc * 0.5 * lambda * (1.0 + gamma));   // X_j X_k = -i b_j a_k
      add(a(j), b(k), -bc * 0.5 * lambda * (1.0 - gamma));  // Y_j Y_k = i a_j b_k
    }

    // iA is Hermitian with eigenvalues +-e_k. The two-point functions are
    // <g_m g_n> = [f(iA)]_mn (m != n) with f = tanh(b x/2) for the plain
    // trace and coth(b x/2) with the parity operator inserted; sign(Pf A)
    // fixes the sign of Tr(Pop e^{-bH}) = sign(Pf A) prod 2 sinh(b e_k/2).
    const cplx i(0, 1);
    const Eigen::MatrixXcd iA = i * A.cast<cplx>();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(iA);
    const Eigen::VectorXd& mu = es.eigenvalues();
    const Eigen::MatrixXcd& V = es.eigenvectors();
    Sector s;
    Eigen::VectorXd t_plain(n), t_parity(n);
    for (int k = 0; k < n; ++k) {
      const double x = 0.5 * beta * mu(k);
      // a zero mode (e.g. lambda = 1 exactly) makes the parity-weighted
      // trace a 0 * infinity limit; callers evaluate nearby and average
      if (std::abs(mu(k)) < 1e-9) throw std::runtime_error("free-fermion oracle: zero mode");
      t_plain(k) = std::tanh(x);
      t_parity(k) = 1.0 / std::tanh(x);
      if (mu(k) > 0) {
        // log 2cosh x and log 2sinh x without overflow
        s.log_cosh += x + std::log1p(std::exp(-2.0 * x));
        s.log_sinh += x + std::log1p(-std::exp(-2.0 * x));
      }
    }
    s.det_sign = pfaffian(A.cast<cplx>()).real() > 0 ? 1.0 : -1.0;
    s.c_plain = V * t_plain.cast<cplx>().asDiagonal() * V.adjoint();
    s.c_parity = V * t_parity.cast<cplx>().asDiagonal() * V.adjoint();
    return s;
  }

  int L_;
  Sector sectors_[2];
  double z_ = 0.0;
};

/// Correlators at distance r, averaging lambda +- 1e-7 when the chain has an
/// exact zero mode at `lambda` (the finite-chain values are analytic in
/// lambda, so the error is O(1e-14)).
inline FreeFermionXY::Correlators xy_chain_correlators(int L, double lambda, double gamma, double kt,
                                                       int r = 1) {
  try {
    return FreeFermionXY(L, lambda, gamma, kt).nearest(r);
  } catch (const std::runtime_error&) {
    const double d = 1e-7;
    const auto lo = FreeFermionXY(L, lambda - d, gamma, kt).nearest(r);
    const auto hi = FreeFermionXY(L, lambda + d, gamma, kt).nearest(r);
    return {(lo.z + hi.z) / 2, (lo.xx + hi.xx) / 2, (lo.yy + hi.yy) / 2, (lo.zz + hi.zz) / 2};
  }
}

}  // namespace oracle
