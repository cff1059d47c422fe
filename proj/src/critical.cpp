#include "tqd/critical.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <limits>
#include <sstream>
#include <thread>

#include "tqd/error.hpp"

namespace tqd::critical {

namespace {

constexpr int kMinSweepSteps = 16;
constexpr std::size_t kMinEstimatePoints = 32;
constexpr double kUniformTolerance = 1e-12;
constexpr double kCandidateFraction = 0.5;

double grid_step(std::span<const double> grid) {
  if (grid.size() < 3) throw Error(ErrorCode::NonUniformGrid, "need at least 3 grid points");
  const double h = (grid.back() - grid.front()) / static_cast<double>(grid.size() - 1);
  if (!(h > 0.0)) throw Error(ErrorCode::NonUniformGrid, "grid must be strictly increasing");
  // relative spacing tolerance plus the rounding of from + i*h itself
  const double scale = std::max(std::abs(grid.front()), std::abs(grid.back()));
  const double tol = kUniformTolerance * h + 8.0 * std::numeric_limits<double>::epsilon() * scale;
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    if (std::abs((grid[i + 1] - grid[i]) - h) > tol) {
      throw Error(ErrorCode::NonUniformGrid, "grid spacing is not uniform");
    }
  }
  return h;
}

std::string format_value(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

// Vertex offset, in grid units, of the parabola through (-1, ym), (0, y0),
// (1, yp); zero unless the three points bracket a maximum.
double parabolic_offset(double ym, double y0, double yp) {
  const double curvature = ym - 2.0 * y0 + yp;
  if (!(curvature < 0.0)) return 0.0;
  return std::clamp(0.5 * (ym - yp) / curvature, -0.5, 0.5);
}

}  // namespace

bool SweepSeries::has_holes() const {
  return std::any_of(values.begin(), values.end(), [](const auto& v) { return !v.has_value(); });
}

std::vector<double> SweepSeries::column(Measure m) const {
  std::vector<double> out;
  out.reserve(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!values[i]) {
      throw Error(ErrorCode::HolesPresent,
                  "sweep has no value at " + param_name + "=" + format_value(grid[i]));
    }
    out.push_back(value_of(*values[i], m));
  }
  return out;
}

unsigned default_threads() {
  unsigned n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("QCORR_THREADS")) {
    const long cap = std::strtol(env, nullptr, 10);
    if (cap >= 1) n = std::min(n, static_cast<unsigned>(cap));
  }
  return n;
}

SweepSeries sweep(const ModelSpec& model, const std::string& param, double from, double to,
                  int steps, const std::vector<Measure>& measures, const SweepOptions& opts) {
  if (steps < kMinSweepSteps) {
    throw Error(ErrorCode::InvalidParameter, "sweep needs at least 16 steps");
  }
  if (!(from < to) || !std::isfinite(from) || !std::isfinite(to)) {
    throw Error(ErrorCode::InvalidParameter, "sweep requires finite from < to");
  }
  if (!accepts_parameter(model.kind, param)) {
    throw Error(ErrorCode::InvalidParameter, "model " + std::string(to_string(model.kind)) +
                                                 " cannot sweep '" + param + "'");
  }

  SweepSeries series;
  series.param_name = param;
  series.meta = model;
  series.measures = measures;
  const auto n = static_cast<std::size_t>(steps);
  series.grid.resize(n);
  const double h = (to - from) / static_cast<double>(steps - 1);
  for (std::size_t i = 0; i < n; ++i) series.grid[i] = from + static_cast<double>(i) * h;
  series.grid.back() = to;
  series.values.assign(n, std::nullopt);

  std::vector<std::exception_ptr> failures(n);
  auto work = [&](std::size_t first, std::size_t stride) {
    for (std::size_t i = first; i < n; i += stride) {
      try {
        series.values[i] = evaluate(model.with(param, series.grid[i]));
      } catch (...) {
        failures[i] = std::current_exception();
      }
    }
  };
  const unsigned threads = std::max(1u, opts.threads == 0 ? default_threads() : opts.threads);
  if (threads == 1) {
    work(0, 1);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t, threads);
  }

  if (!opts.allow_holes) {
    for (std::size_t i = 0; i < n; ++i) {
      if (!failures[i]) continue;
      const std::string where = " (at " + param + "=" + format_value(series.grid[i]) + ")";
      try {
        std::rethrow_exception(failures[i]);
      } catch (const Error& e) {
        throw Error(e.code(), e.detail() + where);
      } catch (const std::exception& e) {
        throw Error(ErrorCode::InvalidParameter, e.what() + where);
      }
    }
  }
  return series;
}

std::vector<double> derivative(std::span<const double> grid, std::span<const double> f, int order) {
  if (order != 1 && order != 2) throw Error(ErrorCode::InvalidParameter, "order must be 1 or 2");
  if (grid.size() != f.size()) throw Error(ErrorCode::InvalidParameter, "grid/value size mismatch");
  const double h = grid_step(grid);
  std::vector<double> d(f.size() - 2);
  for (std::size_t i = 1; i + 1 < f.size(); ++i) {
    d[i - 1] = order == 1 ? (f[i + 1] - f[i - 1]) / (2.0 * h)
                          : (f[i + 1] - 2.0 * f[i] + f[i - 1]) / (h * h);
  }
  return d;
}

std::vector<double> derivative(const SweepSeries& series, Measure m, int order) {
  const auto col = series.column(m);
  return derivative(series.grid, col, order);
}

std::vector<double> normalize(std::span<const double> values) {
  double peak = 0.0;
  for (double v : values) peak = std::max(peak, std::abs(v));
  if (values.empty() || peak == 0.0) throw Error(ErrorCode::AllZero, "nothing to normalize");
  std::vector<double> out(values.begin(), values.end());
  for (double& v : out) v /= peak;
  return out;
}

std::string_view to_string(CpRule r) noexcept {
  switch (r) {
    case CpRule::first_order: return "first-order";
    case CpRule::infinite_order: return "infinite-order";
    case CpRule::both: return "auto";
  }
  return "unknown";
}

CpRule parse_rule(std::string_view name) {
  if (name == "first-order") return CpRule::first_order;
  if (name == "infinite-order") return CpRule::infinite_order;
  if (name == "auto") return CpRule::both;
  throw Error(ErrorCode::InvalidParameter, "unknown rule '" + std::string(name) + "'");
}

double CpEstimate::nearest_candidate(double target) const {
  double best = location;
  for (double c : candidates) {
    if (std::abs(c - target) < std::abs(best - target)) best = c;
  }
  return best;
}

std::optional<double> CpEstimate::error() const {
  if (!reference) return std::nullopt;
  return std::abs(*reference - nearest_candidate(*reference));
}

CpEstimate estimate_extremum(std::span<const double> grid, std::span<const double> f, int order) {
  const auto d = derivative(grid, f, order);
  const double h = grid_step(grid);
  std::vector<double> mag(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) mag[i] = std::abs(d[i]);

  const auto peak_it = std::max_element(mag.begin(), mag.end());
  const double peak = *peak_it;
  if (!(peak > 0.0)) throw Error(ErrorCode::AllZero, "derivative vanishes on the whole grid");
  const auto peak_idx = static_cast<std::size_t>(peak_it - mag.begin());
  if (peak_idx == 0 || peak_idx + 1 == mag.size()) {
    throw Error(ErrorCode::ExtremumOnBoundary,
                "largest derivative at the window edge x=" + format_value(grid[peak_idx + 1]));
  }

  // derivative index i sits on grid point i + 1
  auto refined = [&](std::size_t i) {
    return grid[i + 1] + h * parabolic_offset(mag[i - 1], mag[i], mag[i + 1]);
  };

  CpEstimate est;
  est.derivative_order = order;
  est.location = refined(peak_idx);
  est.extremum_value = d[peak_idx];
  for (std::size_t i = 1; i + 1 < mag.size(); ++i) {
    if (mag[i] >= mag[i - 1] && mag[i] >= mag[i + 1] && mag[i] >= kCandidateFraction * peak) {
      // plateaus: keep the first point only
      if (i > 1 && mag[i] == mag[i - 1]) continue;
      est.candidates.push_back(refined(i));
    }
  }
  return est;
}

std::vector<CpEstimate> estimate_cp(const SweepSeries& series, Measure estimator, CpRule rule) {
  if (series.grid.size() < kMinEstimatePoints) {
    throw Error(ErrorCode::InvalidParameter, "CP estimation needs at least 32 grid points");
  }
  const auto f = series.column(estimator);
  std::vector<int> orders;
  if (rule == CpRule::first_order || rule == CpRule::both) orders.push_back(1);
  if (rule == CpRule::infinite_order || rule == CpRule::both) orders.push_back(2);

  std::vector<CpEstimate> out;
  for (int order : orders) {
    CpEstimate est = estimate_extremum(series.grid, f, order);
    est.estimator = estimator;
    est.reference = reference_cp(series.meta, series.param_name, order);
    out.push_back(std::move(est));
  }
  return out;
}

std::vector<ComparisonRow> estimator_comparison(const ModelSpec& model, const std::string& param,
                                                double from, double to, int steps,
                                                const std::vector<double>& kt_list,
                                                const std::vector<Measure>& estimators,
                                                CpRule rule, const SweepOptions& opts) {
  std::vector<ComparisonRow> rows;
  for (double kt : kt_list) {
    const auto series = sweep(model.with("kt", kt), param, from, to, steps, estimators, opts);
    for (Measure m : estimators) {
      std::vector<int> orders;
      if (rule == CpRule::first_order || rule == CpRule::both) orders.push_back(1);
      if (rule == CpRule::infinite_order || rule == CpRule::both) orders.push_back(2);
      for (int order : orders) {
        ComparisonRow row;
        row.kt = kt;
        row.estimator = m;
        row.derivative_order = order;
        row.reference = reference_cp(series.meta, param, order);
        try {
          const auto est = estimate_cp(series, m, order == 1 ? CpRule::first_order
                                                             : CpRule::infinite_order);
          const CpEstimate& e = est.front();
          row.location = row.reference ? e.nearest_candidate(*row.reference) : e.location;
          row.error = e.error();
        } catch (const Error& e) {
          row.status = std::string(tqd::to_string(e.code()));
        }
        rows.push_back(std::move(row));
      }
    }
  }
  return rows;
}

}  // namespace tqd::critical
