#include "cli/config.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "tqd/error.hpp"

namespace tqd::cli {

namespace {

double parse_number(const std::string& token) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(token, &used);
  } catch (const std::exception&) {
    throw ConfigError("not a number: '" + token + "'");
  }
  if (used != token.size() || !std::isfinite(v)) throw ConfigError("not a number: '" + token + "'");
  return v;
}

std::vector<std::string> split(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item.erase(0, item.find_first_not_of(" \t"));
    item.erase(item.find_last_not_of(" \t") + 1);
    if (item.empty()) throw ConfigError("empty entry in list '" + text + "'");
    out.push_back(item);
  }
  if (out.empty()) throw ConfigError("empty list");
  return out;
}

}  // namespace

std::vector<std::string> required_parameters(ModelKind kind) {
  switch (kind) {
    case ModelKind::xyz2: return {"b", "kt"};
    case ModelKind::xxz: return {"delta", "h", "kt"};
    case ModelKind::xy: return {"lambda", "gamma", "kt"};
  }
  return {};
}

void validate(const RunConfig& cfg) {
  const auto& params = cfg.model.params;
  auto present = [&](const std::string& name) {
    return params.contains(name) || cfg.sweep.param == name;
  };
  for (const auto& name : required_parameters(cfg.model.kind)) {
    if (name == "kt" && !cfg.kt_list.empty()) continue;
    if (!present(name)) {
      throw ConfigError("model " + std::string(to_string(cfg.model.kind)) + " requires --" + name);
    }
  }
  if (cfg.model.kind == ModelKind::xyz2 &&
      !(present("j") || present("jx") || present("jy") || present("jz"))) {
    throw ConfigError("model xyz2 requires a coupling (--j, --jx, --jy or --jz)");
  }
  if (cfg.model.xxx && cfg.model.kind != ModelKind::xyz2) {
    throw ConfigError("--xxx only applies to the xyz2 model");
  }
  if (!accepts_parameter(cfg.model.kind, cfg.sweep.param)) {
    throw ConfigError("model " + std::string(to_string(cfg.model.kind)) + " cannot sweep '" +
                      cfg.sweep.param + "'");
  }
  if (cfg.sweep.steps < kMinSteps) throw ConfigError("--steps must be >= 16");
  if (!(cfg.sweep.from < cfg.sweep.to)) throw ConfigError("sweep requires from < to");

  auto check_kt = [](double kt) {
    if (!(kt >= kMinKt)) throw ConfigError("kt must be >= 0.001");
  };
  if (cfg.sweep.param == "kt") {
    check_kt(cfg.sweep.from);
  } else if (auto it = params.find("kt"); it != params.end()) {
    check_kt(it->second);
  }
  for (double kt : cfg.kt_list) check_kt(kt);

  if (cfg.model.kind == ModelKind::xxz) {
    const double L = cfg.model.get("L");
    if (std::nearbyint(L) != L || L < 4 || static_cast<int>(L) % 2 != 0 || L > 16) {
      throw ConfigError("--L must be an even integer in [4, 16]");
    }
  }
  if (cfg.model.kind == ModelKind::xy) {
    const double k = cfg.model.get("k");
    if (std::nearbyint(k) != k || k < 1 || k > 4) throw ConfigError("--k must be an integer in [1, 4]");
    if (cfg.sweep.param != "gamma") {
      const double g = cfg.model.get("gamma");
      if (g < -1.0 || g > 1.0) throw ConfigError("--gamma must lie in [-1, 1]");
    }
  }
  if (cfg.measures.empty()) throw ConfigError("no measures selected");
}

std::vector<double> parse_number_list(const std::string& text) {
  std::vector<double> out;
  for (const auto& tok : split(text)) out.push_back(parse_number(tok));
  return out;
}

std::vector<Measure> parse_measure_list(const std::string& text) {
  std::vector<Measure> out;
  for (const auto& tok : split(text)) {
    try {
      out.push_back(parse_measure(tok));
    } catch (const Error& e) {
      throw ConfigError(e.what());
    }
  }
  return out;
}

std::pair<double, double> parse_window(const std::string& text) {
  const auto v = parse_number_list(text);
  if (v.size() != 2 || !(v[0] < v[1])) throw ConfigError("window must be 'lo,hi' with lo < hi");
  return {v[0], v[1]};
}

OutputFormat parse_format(const std::string& text) {
  if (text == "csv") return OutputFormat::csv;
  if (text == "json") return OutputFormat::json;
  throw ConfigError("unknown format '" + text + "'");
}

}  // namespace tqd::cli
