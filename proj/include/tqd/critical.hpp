#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tqd/model.hpp"
#include "tqd/qcorr.hpp"

namespace tqd::critical {

/// A model evaluated on a uniform grid of one parameter. A missing value
/// marks a grid point where the model failed (only with allow_holes).
struct SweepSeries {
  std::string param_name;
  std::vector<double> grid;
  std::vector<std::optional<qcorr::CorrelationSet>> values;
  ModelSpec meta;
  std::vector<Measure> measures;

  bool has_holes() const;
  /// Measure values in grid order. Throws HolesPresent.
  std::vector<double> column(Measure m) const;
};

struct SweepOptions {
  bool allow_holes = false;
  /// 0: min(hardware threads, QCORR_THREADS if set).
  unsigned threads = 0;
};

/// Thread count used when SweepOptions::threads == 0.
unsigned default_threads();

/// Evaluates `model` at `steps` equally spaced values of `param` on
/// [from, to]. Requires steps >= 16 and from < to. Model failures are
/// rethrown with the offending grid value unless allow_holes is set.
SweepSeries sweep(const ModelSpec& model, const std::string& param, double from, double to,
                  int steps, const std::vector<Measure>& measures = all_measures(),
                  const SweepOptions& opts = {});

/// Central difference quotients of order 1 or 2 at the interior grid
/// points (length grid.size() - 2). Throws NonUniformGrid.
std::vector<double> derivative(std::span<const double> grid, std::span<const double> f, int order);
std::vector<double> derivative(const SweepSeries& series, Measure m, int order);

/// Divides by max |entry|. Throws AllZero.
std::vector<double> normalize(std::span<const double> values);

enum class CpRule { first_order, infinite_order, both };

std::string_view to_string(CpRule r) noexcept;
CpRule parse_rule(std::string_view name);

struct CpEstimate {
  Measure estimator = Measure::discord;
  int derivative_order = 1;
  /// Parabola-refined position of the largest |derivative|.
  double location = 0.0;
  std::optional<double> reference;
  /// Signed derivative at the discrete extremum.
  double extremum_value = 0.0;
  /// Refined positions of every interior local maximum of |derivative|
  /// reaching at least half the global one (includes `location`).
  std::vector<double> candidates;

  /// Candidate closest to `target`.
  double nearest_candidate(double target) const;
  /// |reference - nearest candidate|, or nullopt without a reference.
  std::optional<double> error() const;
};

/// Extremum of the order-`order` derivative of f on a uniform grid.
/// Throws ExtremumOnBoundary, AllZero, NonUniformGrid.
CpEstimate estimate_extremum(std::span<const double> grid, std::span<const double> f, int order);

/// Derivative-extremum estimate(s) for one measure of a hole-free series
/// with at least 32 points; `both` yields the order-1 then order-2 result.
std::vector<CpEstimate> estimate_cp(const SweepSeries& series, Measure estimator, CpRule rule);

struct ComparisonRow {
  double kt = 0.0;
  Measure estimator = Measure::discord;
  int derivative_order = 1;
  std::optional<double> location;
  std::optional<double> reference;
  std::optional<double> error;
  std::string status = "ok";
};

/// CP-estimation error per temperature and estimator: one sweep of
/// `param` over [from, to] per kt, then estimate_cp for each estimator.
/// Estimation failures become rows with status set to the error code.
std::vector<ComparisonRow> estimator_comparison(const ModelSpec& model, const std::string& param,
                                                double from, double to, int steps,
                                                const std::vector<double>& kt_list,
                                                const std::vector<Measure>& estimators,
                                                CpRule rule, const SweepOptions& opts = {});

}  // namespace tqd::critical
