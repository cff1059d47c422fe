#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tqd/critical.hpp"
#include "tqd/model.hpp"

namespace tqd::cli {

enum class OutputFormat { csv, json };

struct SweepSpec {
  std::string param;
  double from = 0.0;
  double to = 0.0;
  int steps = 400;
};

/// Everything one command needs; built from flags and validated before any
/// computation starts.
struct RunConfig {
  ModelSpec model;
  SweepSpec sweep;
  std::vector<double> kt_list;
  std::vector<Measure> measures;
  OutputFormat format = OutputFormat::csv;
  std::string output = "-";
};

/// Raised for invalid command lines and configurations (exit status 2).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr double kMinKt = 1e-3;
inline constexpr int kMinSteps = 16;

/// Parameters a model needs from the command line (the swept one counts).
std::vector<std::string> required_parameters(ModelKind kind);

/// Throws ConfigError naming the first violated rule.
void validate(const RunConfig& cfg);

std::vector<double> parse_number_list(const std::string& text);
std::vector<Measure> parse_measure_list(const std::string& text);
/// "lo,hi" with lo < hi.
std::pair<double, double> parse_window(const std::string& text);

OutputFormat parse_format(const std::string& text);

}  // namespace tqd::cli
