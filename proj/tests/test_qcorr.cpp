#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>

#include <Eigen/Dense>

#include "oracles/discord_grid.hpp"
#include "oracles/random_states.hpp"
#include "tqd/error.hpp"
#include "tqd/qcorr.hpp"

using namespace tqd;
using namespace tqd::qcorr;

namespace {

const XState kMixed{};
const XState kBellMinus{0.0, 0.5, 0.5, 0.0, 0.0, -0.5};  // singlet
const XState kBellPhi{0.5, 0.0, 0.0, 0.5, 0.5, 0.0};
const XState kClassical{0.5, 0.0, 0.0, 0.5, 0.0, 0.0};
const XState kOneThird{1.0 / 3, 1.0 / 6, 1.0 / 6, 1.0 / 3, 0.0, 1.0 / 6};

XState werner(double p) {
  const double q = (1.0 - p) / 4.0;
  return {q, q + p / 2, q + p / 2, q, 0.0, -p / 2};
}

// entropy of the dense matrix by Eigen, independent of the closed forms
double dense_entropy(const XState& s) {
  Eigen::Matrix4d r = Eigen::Matrix4d::Zero();
  r(0, 0) = s.r11;
  r(1, 1) = s.r22;
  r(2, 2) = s.r33;
  r(3, 3) = s.r44;
  r(0, 3) = r(3, 0) = s.r14;
  r(1, 2) = r(2, 1) = s.r23;
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> es(r);
  double h = 0.0;
  for (int i = 0; i < 4; ++i) {
    const double l = std::max(0.0, es.eigenvalues()(i));
    if (l > 0) h -= l * std::log2(l);
  }
  return h;
}

}  // namespace

TEST_CASE("validation") {
  CHECK_NOTHROW(validated(kMixed));
  XState bad = kMixed;
  bad.r11 = 0.3;  // trace 1.05
  CHECK_THROWS_AS(validated(bad), Error);
  XState incoherent{0.25, 0.25, 0.25, 0.25, 0.3, 0.0};  // r14^2 > r11 r44
  try {
    validated(incoherent);
    FAIL("expected InvalidState");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InvalidState);
  }
  XState tiny{0.5 + 1e-13, 0.0, -1e-13, 0.5, 0.0, 0.0};
  const auto v = validated(tiny);
  CHECK(v.r33 == 0.0);
}

TEST_CASE("entropies") {
  CHECK(von_neumann_entropy(kMixed) == doctest::Approx(2.0));
  CHECK(von_neumann_entropy(kBellMinus) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(von_neumann_entropy(XState{0.5, 0.5, 0.0, 0.0, 0.0, 0.0}) == doctest::Approx(1.0));
  CHECK(binary_entropy(0.0) == 0.0);
  CHECK(binary_entropy(1.0) == 0.0);
  CHECK(binary_entropy(0.5) == doctest::Approx(1.0));

  std::mt19937_64 rng(5);
  for (int i = 0; i < 100; ++i) {
    const auto s = oracle::random_xstate(rng);
    CHECK(von_neumann_entropy(s) == doctest::Approx(dense_entropy(s)).epsilon(1e-10));
  }
}

TEST_CASE("mutual information") {
  // |0><0| (x) (p|0><0| + (1-p)|1><1|)
  const double p = 0.3;
  CHECK(mutual_information(XState{p, 1 - p, 0.0, 0.0, 0.0, 0.0}) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(mutual_information(kBellPhi) == doctest::Approx(2.0));
  CHECK(mutual_information(kClassical) == doctest::Approx(1.0));
}

TEST_CASE("reduced states") {
  const XState s{0.4, 0.1, 0.2, 0.3, 0.1, 0.05};
  const auto a = reduced_state(s, Side::A);
  const auto b = reduced_state(s, Side::B);
  CHECK(a.p0 == doctest::Approx(0.5));
  CHECK(a.p1 == doctest::Approx(0.5));
  CHECK(b.p0 == doctest::Approx(0.6));
  CHECK(b.p1 == doctest::Approx(0.4));
  CHECK(std::abs(a.c) == 0.0);
}

TEST_CASE("conditional entropy at fixed measurements") {
  CHECK(conditional_entropy(kBellPhi, {0.0, 0.0}) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(conditional_entropy(kBellMinus, {0.0, 0.0}) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(conditional_entropy(kMixed, {0.7, 1.3}) == doctest::Approx(1.0));
  CHECK(conditional_entropy(kClassical, {std::numbers::pi / 2, 0.0}) == doctest::Approx(1.0));

  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> ang(0.0, std::numbers::pi);
  for (int i = 0; i < 100; ++i) {
    const auto s = oracle::random_xstate(rng);
    const double t = ang(rng), p = 2.0 * ang(rng);
    const double expect = oracle::conditional_entropy_bruteforce(oracle::dense(s), t, p);
    CHECK(conditional_entropy(s, {t, p}) == doctest::Approx(expect).epsilon(1e-10));
  }
}

TEST_CASE("minimum conditional entropy and discord examples") {
  CHECK(min_conditional_entropy(kBellPhi).value == doctest::Approx(0.0).epsilon(1e-10));
  CHECK(min_conditional_entropy(kMixed).value == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(discord(kOneThird) == doctest::Approx(1.0 / 3).epsilon(1e-4));
  CHECK(discord(kOneThird, Side::A) == doctest::Approx(1.0 / 3).epsilon(1e-4));
  CHECK(discord(kBellPhi) == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(discord(kBellMinus) == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(discord(XState{0.12, 0.28, 0.18, 0.42, 0.0, 0.0}) == doctest::Approx(0.0).epsilon(1e-10));  // product
  CHECK(discord(kClassical) == doctest::Approx(0.0).epsilon(1e-10));

  const auto m = min_conditional_entropy(kOneThird);
  CHECK(m.argmin.theta >= 0.0);
  CHECK(m.argmin.theta <= std::numbers::pi);
  CHECK(conditional_entropy(kOneThird, m.argmin) == doctest::Approx(m.value).epsilon(1e-12));
}

TEST_CASE("minimizer agrees with the brute-force grid") {
  std::mt19937_64 rng(21);
  for (int i = 0; i < 30; ++i) {
    const auto s = oracle::random_xstate(rng, i % 2 == 0);
    const double grid = oracle::min_conditional_entropy_grid(s, 361, 19);
    const double v = min_conditional_entropy(s).value;
    CHECK(v <= grid + 1e-12);
    CHECK(std::abs(v - grid) <= 1e-4);
  }
}

TEST_CASE("concurrence and entanglement of formation") {
  CHECK(concurrence(kBellMinus) == doctest::Approx(1.0));
  CHECK(concurrence(kClassical) == doctest::Approx(0.0));
  CHECK(concurrence(XState{0.1, 0.2, 0.3, 0.4, 0.0, 0.0}) == 0.0);
  CHECK(concurrence(werner(0.5)) == doctest::Approx(0.25).epsilon(1e-14));
  CHECK(eof(kClassical) == 0.0);
  CHECK(eof(kBellMinus) == doctest::Approx(1.0));
  // h2((1 + sqrt(1 - C^2))/2) at C = 0.25, evaluated separately
  CHECK(eof(werner(0.5)) == doctest::Approx(0.11761887377091781).epsilon(1e-12));
  CHECK(eof_from_concurrence(0.0) == 0.0);
  CHECK(eof_from_concurrence(1.0) == doctest::Approx(1.0));
}

TEST_CASE("correlation set") {
  const XState s{0.4, 0.1, 0.2, 0.3, 0.1, 0.05};
  const auto c = correlation_set(s);
  CHECK(c.discord == doctest::Approx(discord(s)));
  CHECK(c.eof == doctest::Approx(eof(s)));
  CHECK(c.concurrence == doctest::Approx(concurrence(s)));
  CHECK(c.mutual_info == doctest::Approx(mutual_information(s)));
  // <sz_A> = 0, <sz_B> = 0.2
  CHECK(c.sz == doctest::Approx(0.1));
  CHECK(c.sxx == doctest::Approx(2 * (0.1 + 0.05)));
  CHECK(c.syy == doctest::Approx(2 * (0.05 - 0.1)));
  CHECK(c.szz == doctest::Approx(0.4 - 0.1 - 0.2 + 0.3));
}
