#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "tqd/critical.hpp"
#include "tqd/error.hpp"

using namespace tqd;
using namespace tqd::critical;

namespace {

std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> x(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) x[static_cast<std::size_t>(i)] = a + (b - a) * i / (n - 1);
  return x;
}

template <class F>
std::vector<double> sample(const std::vector<double>& x, F f) {
  std::vector<double> y;
  for (double v : x) y.push_back(f(v));
  return y;
}

template <class F>
ErrorCode code_of(F f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::ConvergenceFailure;  // sentinel: nothing thrown
}

}  // namespace

TEST_CASE("difference stencils") {
  const auto x = linspace(-1, 1, 41);
  for (double v : derivative(x, sample(x, [](double t) { return t * t; }), 2)) CHECK(v == doctest::Approx(2.0));
  for (double v : derivative(x, sample(x, [](double t) { return 3 * t - 1; }), 1)) CHECK(v == doctest::Approx(3.0));
  for (double v : derivative(x, sample(x, [](double) { return 7.0; }), 1)) CHECK(v == 0.0);

  const auto fine = linspace(0, 1, 1001);
  const auto d = derivative(fine, sample(fine, [](double t) { return std::sin(t); }), 1);
  REQUIRE(d.size() == fine.size() - 2);
  for (std::size_t i = 0; i < d.size(); ++i) CHECK(std::abs(d[i] - std::cos(fine[i + 1])) < 1e-6);

  CHECK(code_of([&] { derivative(x, x, 3); }) == ErrorCode::InvalidParameter);
  std::vector<double> bad{0.0, 0.1, 0.3, 0.4};
  CHECK(code_of([&] { derivative(bad, bad, 1); }) == ErrorCode::NonUniformGrid);
}

TEST_CASE("normalize") {
  const std::vector<double> v{2, -4, 1};
  const auto n = normalize(v);
  CHECK(n == std::vector<double>{0.5, -1.0, 0.25});
  const std::vector<double> z{0, 0, 0};
  CHECK(code_of([&] { normalize(z); }) == ErrorCode::AllZero);
}

TEST_CASE("kink location") {
  const auto x = linspace(-1, 1, 201);
  const auto f = sample(x, [](double t) { return std::abs(t - 0.3); });
  const auto e = estimate_extremum(x, f, 2);
  CHECK(std::abs(e.location - 0.3) <= 0.01 + 1e-12);
  CHECK(e.candidates.size() == 1);
  CHECK(e.nearest_candidate(0.0) == doctest::Approx(e.location));
  CHECK_FALSE(e.error().has_value());
}

TEST_CASE("smooth peak is refined past the grid spacing") {
  const auto x = linspace(0, 1, 51);
  // tanh step: |f'| peaks at 0.4137
  const auto f = sample(x, [](double t) { return std::tanh((t - 0.4137) / 0.1); });
  const auto e = estimate_extremum(x, f, 1);
  CHECK(std::abs(e.location - 0.4137) < 0.004);
  CHECK(e.extremum_value > 0);
}

TEST_CASE("boundary and all-zero failures") {
  const auto x = linspace(0, 1, 41);
  CHECK(code_of([&] { estimate_extremum(x, sample(x, [](double t) { return std::exp(3 * t); }), 1); }) ==
        ErrorCode::ExtremumOnBoundary);
  CHECK(code_of([&] { estimate_extremum(x, sample(x, [](double) { return 1.0; }), 1); }) == ErrorCode::AllZero);
}

TEST_CASE("sweep shape and validation") {
  ModelSpec m = default_spec(ModelKind::xxz);
  m.params["L"] = 6;
  m.params["h"] = 2.0;
  m.params["kt"] = 0.3;
  const auto s = sweep(m, "delta", -1.0, 3.0, 64, {Measure::discord, Measure::szz});
  CHECK(s.grid.size() == 64);
  CHECK(s.values.size() == 64);
  CHECK(s.grid.front() == -1.0);
  CHECK(s.grid.back() == 3.0);
  CHECK(s.param_name == "delta");
  CHECK_FALSE(s.has_holes());
  CHECK(s.column(Measure::szz).size() == 64);
  CHECK(s.measures.size() == 2);

  CHECK(code_of([&] { sweep(m, "delta", 0, 1, 15); }) == ErrorCode::InvalidParameter);
  CHECK(code_of([&] { sweep(m, "delta", 1, 1, 32); }) == ErrorCode::InvalidParameter);
  CHECK(code_of([&] { sweep(m, "lambda", 0, 1, 32); }) == ErrorCode::InvalidParameter);
}

TEST_CASE("sweep failures and holes") {
  ModelSpec m = default_spec(ModelKind::xy);
  m.params["gamma"] = 0.5;
  m.params["kt"] = 0.5;
  // lambda < 0 is rejected by the backend
  CHECK(code_of([&] { sweep(m, "lambda", -0.5, 0.5, 20); }) == ErrorCode::InvalidParameter);
  SweepOptions opts;
  opts.allow_holes = true;
  const auto s = sweep(m, "lambda", -0.5, 0.5, 20, {Measure::discord}, opts);
  CHECK(s.has_holes());
  CHECK_FALSE(s.values.back() == std::nullopt);
  CHECK(code_of([&] { (void)s.column(Measure::discord); }) == ErrorCode::HolesPresent);
}

TEST_CASE("sweeps are deterministic across thread counts") {
  ModelSpec m = default_spec(ModelKind::xyz2);
  m.params["jx"] = m.params["jy"] = 0.3;
  m.params["jz"] = -0.5;
  SweepOptions one, four;
  one.threads = 1;
  four.threads = 4;
  const auto a = sweep(m, "kt", 0.01, 2.0, 40, all_measures(), one);
  const auto b = sweep(m, "kt", 0.01, 2.0, 40, all_measures(), four);
  for (Measure x : all_measures()) CHECK(a.column(x) == b.column(x));
}

TEST_CASE("cp estimation on a model") {
  ModelSpec m = default_spec(ModelKind::xy);
  m.params["gamma"] = 1.0;
  m.params["kt"] = 0.01;
  const auto s = sweep(m, "lambda", 0.5, 1.5, 101, {Measure::discord});
  const auto est = estimate_cp(s, Measure::discord, CpRule::infinite_order);
  REQUIRE(est.size() == 1);
  CHECK(est[0].derivative_order == 2);
  REQUIRE(est[0].reference.has_value());
  CHECK(*est[0].reference == 1.0);
  CHECK(*est[0].error() < 0.05);

  const auto small = sweep(m, "lambda", 0.5, 1.5, 20, {Measure::discord});
  CHECK(code_of([&] { estimate_cp(small, Measure::discord, CpRule::first_order); }) == ErrorCode::InvalidParameter);
  CHECK(parse_rule("auto") == CpRule::both);
  CHECK(parse_rule(to_string(CpRule::first_order)) == CpRule::first_order);
  CHECK(code_of([] { parse_rule("third"); }) == ErrorCode::InvalidParameter);
}

TEST_CASE("estimator comparison shape") {
  ModelSpec m = default_spec(ModelKind::xy);
  m.params["gamma"] = 0.0;
  const auto rows = estimator_comparison(m, "lambda", 0.5, 1.5, 64, {0.1, 0.3},
                                         {Measure::discord, Measure::eof}, CpRule::both);
  CHECK(rows.size() == 2 * 2 * 2);
  for (const auto& r : rows) {
    CHECK((r.kt == 0.1 || r.kt == 0.3));
    CHECK((r.derivative_order == 1 || r.derivative_order == 2));
    if (r.status == "ok") {
      REQUIRE(r.location.has_value());
      REQUIRE(r.error.has_value());
      CHECK(*r.error == doctest::Approx(std::abs(*r.location - 1.0)));
    } else {
      CHECK_FALSE(r.location.has_value());
    }
  }
}
