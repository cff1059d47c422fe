#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tqd/critical.hpp"
#include "tqd/model.hpp"

namespace tqd::cli {

/// Stand-in for the zero-temperature curves.
inline constexpr double kZeroTemperatureKt = 1e-3;

enum class CurveTransform { value, d1_normalized, d2_normalized };

/// One sweep; every (measure, transform) pair becomes one CSV named
/// `<id>_<measure-or-transform>_<tag>.csv`.
struct SweepCurve {
  std::string tag;
  ModelSpec model;
  std::string param;
  double from = 0.0;
  double to = 0.0;
  int steps = 200;
  std::vector<Measure> measures;
  std::vector<CurveTransform> transforms{CurveTransform::value};
};

/// One estimator-comparison block; all blocks of a figure share a CSV whose
/// leading column is `label` (e.g. h or gamma) with value `label_value`.
struct ComparisonBlock {
  std::string label;
  double label_value = 0.0;
  ModelSpec model;
  std::string param;
  double from = 0.0;
  double to = 0.0;
  int steps = 400;
  std::vector<double> kt_list;
  std::vector<Measure> estimators;
  critical::CpRule rule = critical::CpRule::first_order;
};

struct FigureSpec {
  std::string id;
  std::string description;
  std::vector<SweepCurve> curves;
  std::vector<ComparisonBlock> comparison;
};

const std::vector<FigureSpec>& figure_table();
/// Throws ConfigError for an unknown id.
const FigureSpec& find_figure(const std::string& id);

struct FigureOptions {
  std::optional<int> steps;   ///< overrides every sweep resolution
  std::optional<int> length;  ///< overrides the XXZ chain length
  critical::SweepOptions sweep;
};

/// Applies the overrides to a copy of the figure.
FigureSpec resolved(const FigureSpec& fig, const FigureOptions& opts);

/// Number of CSV files `run_figure` writes (manifest excluded).
std::size_t csv_count(const FigureSpec& fig);

/// Writes the CSVs and `<id>_manifest.json` into `outdir` (created if
/// needed); returns the file names written, manifest last.
std::vector<std::string> run_figure(const FigureSpec& fig, const std::string& outdir,
                                    const FigureOptions& opts = {});

}  // namespace tqd::cli
