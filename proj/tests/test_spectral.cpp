#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <random>

#include "tqd/error.hpp"
#include "tqd/spectral.hpp"

using namespace tqd;
using spectral::SymMatrix;

namespace {

SymMatrix random_symmetric(std::size_t n, std::mt19937_64& rng, double scale = 1.0) {
  std::normal_distribution<double> g(0.0, scale);
  SymMatrix a(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      const double v = g(rng);
      a(i, j) = v;
      a(j, i) = v;
    }
  return a;
}

double reconstruction_error(const SymMatrix& a, const spectral::EigenSystem& es) {
  const std::size_t n = a.dim();
  double err = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      double v = 0.0;
      for (std::size_t k = 0; k < n; ++k) v += es.vector(k)[i] * es.values[k] * es.vector(k)[j];
      err = std::max(err, std::abs(v - a(i, j)));
    }
  return err;
}

double orthonormality_error(const spectral::EigenSystem& es) {
  double err = 0.0;
  for (std::size_t p = 0; p < es.dim; ++p)
    for (std::size_t q = 0; q < es.dim; ++q) {
      double dot = 0.0;
      for (std::size_t i = 0; i < es.dim; ++i) dot += es.vector(p)[i] * es.vector(q)[i];
      err = std::max(err, std::abs(dot - (p == q ? 1.0 : 0.0)));
    }
  return err;
}

}  // namespace

TEST_CASE("identity and diagonal matrices") {
  SymMatrix id(4);
  for (int i = 0; i < 4; ++i) id(i, i) = 1.0;
  for (double v : spectral::eigh(id).values) CHECK(v == doctest::Approx(1.0).epsilon(1e-14));

  SymMatrix d(3);
  d(0, 0) = 3;
  d(1, 1) = 1;
  d(2, 2) = 2;
  const auto es = spectral::eigh(d);
  CHECK(es.values[0] == doctest::Approx(1.0));
  CHECK(es.values[1] == doctest::Approx(2.0));
  CHECK(es.values[2] == doctest::Approx(3.0));
  CHECK(orthonormality_error(es) < 1e-14);
}

TEST_CASE("random symmetric matrices: reconstruction, orthonormality, ordering, trace") {
  std::mt19937_64 rng(7);
  for (std::size_t n : {1u, 2u, 3u, 8u, 17u, 64u}) {
    for (int rep = 0; rep < 5; ++rep) {
      const auto a = random_symmetric(n, rng, rep + 1.0);
      const auto es = spectral::eigh(a);
      CHECK(std::is_sorted(es.values.begin(), es.values.end()));
      CHECK(reconstruction_error(a, es) <= 1e-9 * a.max_abs());
      CHECK(orthonormality_error(es) <= 1e-10);
      double tr = 0.0, sum = 0.0;
      for (std::size_t i = 0; i < n; ++i) tr += a(i, i);
      for (double v : es.values) sum += v;
      CHECK(std::abs(sum - tr) <= 1e-9 * n * a.max_abs());
      const auto vals = spectral::eigvalsh(a);
      for (std::size_t i = 0; i < n; ++i) CHECK(vals[i] == doctest::Approx(es.values[i]).epsilon(1e-12));
    }
  }
}

TEST_CASE("degenerate spectrum keeps an orthonormal basis") {
  // a rank-one update of the identity: eigenvalue 1 with multiplicity n-1
  const std::size_t n = 10;
  SymMatrix a(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a(i, j) = (i == j ? 1.0 : 0.0) + 0.5;
  const auto es = spectral::eigh(a);
  for (std::size_t i = 0; i + 1 < n; ++i) CHECK(es.values[i] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(es.values.back() == doctest::Approx(1.0 + 0.5 * n).epsilon(1e-12));
  CHECK(orthonormality_error(es) < 1e-12);
  CHECK(reconstruction_error(a, es) < 1e-12);
}

TEST_CASE("eigh is deterministic") {
  std::mt19937_64 rng(11);
  const auto a = random_symmetric(40, rng);
  const auto first = spectral::eigh(a);
  const auto second = spectral::eigh(a);
  CHECK(first.values == second.values);
  CHECK(first.vectors == second.vectors);
}

TEST_CASE("input validation") {
  SymMatrix a(2);
  a(0, 1) = 1.0;
  a(1, 0) = 1.0 + 1e-9;
  CHECK_THROWS_AS(spectral::eigh(a), Error);
  try {
    spectral::eigh(a);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotSymmetric);
  }
  try {
    spectral::eigh(SymMatrix(0));
    FAIL("expected DimensionZero");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DimensionZero);
  }
  const std::vector<double> v{0.0, 1.0};
  try {
    spectral::thermal_weights(v, 0.0);
    FAIL("expected NonPositiveBeta");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NonPositiveBeta);
  }
}

TEST_CASE("thermal weights") {
  const std::vector<double> flat{0.0, 0.0};
  auto w = spectral::thermal_weights(flat, 1.0);
  CHECK(w.weights[0] == doctest::Approx(0.5));
  CHECK(w.weights[1] == doctest::Approx(0.5));
  CHECK(w.log_z == doctest::Approx(std::log(2.0)));

  const std::vector<double> two{0.0, 1.0};
  w = spectral::thermal_weights(two, 1.0);
  const double e = std::exp(-1.0);
  CHECK(w.weights[0] == doctest::Approx(1.0 / (1.0 + e)).epsilon(1e-14));
  CHECK(w.weights[1] == doctest::Approx(e / (1.0 + e)).epsilon(1e-14));

  const std::vector<double> gap{0.0, 5.0};
  w = spectral::thermal_weights(gap, 1000.0);
  CHECK(w.weights[0] == 1.0);
  CHECK(w.weights[1] == 0.0);
  CHECK(std::isfinite(w.log_z));
}

TEST_CASE("thermal weights are invariant under a uniform shift") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-10.0, 10.0);
  for (int rep = 0; rep < 100; ++rep) {
    std::vector<double> v(12), shifted(12);
    const double shift = u(rng) * 100.0, beta = std::abs(u(rng)) + 0.01;
    for (std::size_t i = 0; i < v.size(); ++i) {
      v[i] = u(rng);
      shifted[i] = v[i] + shift;
    }
    const auto a = spectral::thermal_weights(v, beta);
    const auto b = spectral::thermal_weights(shifted, beta);
    for (std::size_t i = 0; i < v.size(); ++i) CHECK(std::abs(a.weights[i] - b.weights[i]) <= 1e-12);
    CHECK(b.log_z == doctest::Approx(a.log_z - beta * shift).epsilon(1e-12));
  }
}
