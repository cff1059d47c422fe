#include "cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"

#include "cli/config.hpp"
#include "cli/figures.hpp"
#include "cli/output.hpp"
#include "tqd/error.hpp"

namespace tqd::cli {

namespace {

// Flags shared by sweep / cp / compare. Values are read only when given.
struct ModelFlags {
  std::string model;
  bool xxx = false;
  std::map<std::string, double> values;
  std::map<std::string, CLI::Option*> options;

  void attach(CLI::App& app) {
    app.add_option("--model", model, "xyz2 | xxz | xy")->required();
    app.add_flag("--xxx", xxx, "xyz2: --j sets jx = jy = jz");
    const std::pair<const char*, const char*> flags[] = {
        {"jx", "xyz2 coupling"},        {"jy", "xyz2 coupling"},
        {"jz", "xyz2 coupling"},        {"j", "exchange (xyz2: jx = jy; xxz: J)"},
        {"b", "xyz2 field"},            {"delta", "xxz anisotropy"},
        {"h", "xxz field"},             {"L", "xxz chain length"},
        {"lambda", "xy inverse field"}, {"gamma", "xy anisotropy"},
        {"k", "xy neighbour distance"}, {"kt", "temperature (k_B = 1)"},
    };
    for (const auto& [name, help] : flags) {
      options[name] = app.add_option(std::string("--") + name, values[name], help);
    }
  }

  ModelSpec build() const {
    ModelSpec s;
    try {
      s.kind = parse_model(model);
    } catch (const Error& e) {
      throw ConfigError(e.what());
    }
    s.xxx = xxx;
    for (const auto& [name, opt] : options) {
      if (opt->count() == 0) continue;
      if (!accepts_parameter(s.kind, name)) {
        throw ConfigError("--" + name + " is not a parameter of model " + model);
      }
      s.params[name] = values.at(name);
    }
    return s;
  }
};

std::string default_param(ModelKind kind) {
  switch (kind) {
    case ModelKind::xyz2: return "j";
    case ModelKind::xxz: return "delta";
    case ModelKind::xy: return "lambda";
  }
  return "";
}

std::vector<Measure> default_estimators(ModelKind kind) {
  if (kind == ModelKind::xxz) return {Measure::discord, Measure::eof, Measure::sxx, Measure::szz};
  return {Measure::discord, Measure::eof};
}

critical::CpRule rule_from(const std::string& text) {
  try {
    return critical::parse_rule(text);
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }
}

Measure measure_from(const std::string& text) {
  try {
    return parse_measure(text);
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }
}

// Model parameters are completed from the backend defaults once the
// required ones have been checked.
ModelSpec completed(const ModelSpec& given) {
  ModelSpec s = default_spec(given.kind);
  s.xxx = given.xxx;
  for (const auto& [k, v] : given.params) s.params[k] = v;
  return s;
}


}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Thermal quantum discord and critical-point estimation for spin chains", "tqd"};
  app.set_help_flag("--help", "print help");
  app.require_subcommand(1);
  app.allow_extras(false);

  // sweep
  auto* sweep_cmd = app.add_subcommand("sweep", "evaluate measures on a parameter grid");
  ModelFlags sweep_model;
  sweep_model.attach(*sweep_cmd);
  std::string sweep_param, sweep_measures, sweep_format = "csv", sweep_output = "-";
  double sweep_from = 0.0, sweep_to = 0.0;
  int sweep_steps = 400;
  sweep_cmd->add_option("--param", sweep_param, "swept parameter")->required();
  sweep_cmd->add_option("--from", sweep_from, "first grid value")->required();
  sweep_cmd->add_option("--to", sweep_to, "last grid value")->required();
  sweep_cmd->add_option("--steps", sweep_steps, "grid points (>= 16)");
  sweep_cmd->add_option("--measures", sweep_measures, "comma-separated measures (default all)");
  sweep_cmd->add_option("--format", sweep_format, "csv | json");
  sweep_cmd->add_option("--output", sweep_output, "output file ('-' = stdout)");

  // cp
  auto* cp_cmd = app.add_subcommand("cp", "estimate a critical point from derivative extrema");
  ModelFlags cp_model;
  cp_model.attach(*cp_cmd);
  std::string cp_param, cp_window, cp_estimator = "discord", cp_rule = "auto", cp_output = "-";
  int cp_steps = 400;
  bool cp_json = false;
  cp_cmd->add_option("--param", cp_param, "swept parameter (default: delta, lambda or j)");
  cp_cmd->add_option("--window", cp_window, "sweep window lo,hi")->required();
  cp_cmd->add_option("--steps", cp_steps, "grid points (>= 32)");
  cp_cmd->add_option("--estimator", cp_estimator, "measure whose derivative is used");
  cp_cmd->add_option("--rule", cp_rule, "first-order | infinite-order | auto");
  cp_cmd->add_flag("--json", cp_json, "JSON report");
  cp_cmd->add_option("--output", cp_output, "output file ('-' = stdout)");

  // compare
  auto* cmp_cmd = app.add_subcommand("compare", "critical-point error per temperature and estimator");
  ModelFlags cmp_model;
  cmp_model.attach(*cmp_cmd);
  std::string cmp_param, cmp_window, cmp_kts, cmp_estimators, cmp_rule = "auto", cmp_output = "-";
  int cmp_steps = 400;
  cmp_cmd->add_option("--param", cmp_param, "swept parameter (default: delta, lambda or j)");
  cmp_cmd->add_option("--window", cmp_window, "sweep window lo,hi")->required();
  cmp_cmd->add_option("--kt-list", cmp_kts, "comma-separated temperatures")->required();
  cmp_cmd->add_option("--estimators", cmp_estimators, "comma-separated measures");
  cmp_cmd->add_option("--rule", cmp_rule, "first-order | infinite-order | auto");
  cmp_cmd->add_option("--steps", cmp_steps, "grid points per sweep");
  cmp_cmd->add_option("--output", cmp_output, "output file ('-' = stdout)");

  // figure
  auto* fig_cmd = app.add_subcommand("figure", "write the datasets of one figure");
  std::string fig_id, fig_outdir = ".";
  int fig_steps = 0, fig_length = 0;
  auto* fig_steps_opt = fig_cmd->add_option("--steps", fig_steps, "override every sweep resolution");
  auto* fig_length_opt = fig_cmd->add_option("--L", fig_length, "override the XXZ chain length");
  fig_cmd->add_option("--id", fig_id, "figure id")->required();
  fig_cmd->add_option("--outdir", fig_outdir, "output directory");

  for (auto* sub : {sweep_cmd, cp_cmd, cmp_cmd, fig_cmd}) sub->allow_extras(false);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitConfig;
  }

  // Phase 1 builds and validates the configuration (exit 2 on failure);
  // phase 2 computes (exit 3, or 4 for a boundary extremum).
  auto config_error = [&](const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  };
  auto numeric_error = [&](const std::exception& e) {
    err << "error: " << e.what() << '\n';
    if (auto* te = dynamic_cast<const Error*>(&e); te && te->code() == ErrorCode::ExtremumOnBoundary) {
      return kExitBoundary;
    }
    return kExitNumeric;
  };

  if (*sweep_cmd) {
    RunConfig cfg;
    try {
      cfg.model = sweep_model.build();
      cfg.sweep = {sweep_param, sweep_from, sweep_to, sweep_steps};
      cfg.measures = sweep_measures.empty() ? all_measures() : parse_measure_list(sweep_measures);
      cfg.format = parse_format(sweep_format);
      cfg.output = sweep_output;
      validate(cfg);
    } catch (const std::exception& e) {
      return config_error(e);
    }
    try {
      const auto series = critical::sweep(completed(cfg.model), cfg.sweep.param, cfg.sweep.from,
                                          cfg.sweep.to, cfg.sweep.steps, cfg.measures);
      std::ostringstream os;
      if (cfg.format == OutputFormat::csv) write_csv(os, series);
      else os << to_json(series).dump(2) << '\n';
      emit(cfg.output, os.str(), out);
    } catch (const std::exception& e) {
      return numeric_error(e);
    }
    return kExitOk;
  }

  if (*cp_cmd) {
    RunConfig cfg;
    critical::CpRule rule{};
    try {
      cfg.model = cp_model.build();
      const auto [lo, hi] = parse_window(cp_window);
      cfg.sweep = {cp_param.empty() ? default_param(cfg.model.kind) : cp_param, lo, hi, cp_steps};
      cfg.measures = {measure_from(cp_estimator)};
      cfg.output = cp_output;
      rule = rule_from(cp_rule);
      validate(cfg);
      if (cp_steps < 32) throw ConfigError("cp requires --steps >= 32");
    } catch (const std::exception& e) {
      return config_error(e);
    }
    try {
      const auto series = critical::sweep(completed(cfg.model), cfg.sweep.param, cfg.sweep.from,
                                          cfg.sweep.to, cfg.sweep.steps, cfg.measures);
      // auto runs both rules; a boundary extremum in one of them is reported
      // as that rule's status and only fails the command if both fail.
      std::vector<critical::CpRule> rules{rule};
      if (rule == critical::CpRule::both) {
        rules = {critical::CpRule::first_order, critical::CpRule::infinite_order};
      }
      std::ostringstream os;
      nlohmann::ordered_json report = nlohmann::ordered_json::array();
      std::optional<Error> boundary;
      for (std::size_t i = 0; i < rules.size(); ++i) {
        const int order = rules[i] == critical::CpRule::first_order ? 1 : 2;
        if (i) os << '\n';
        try {
          const auto e = critical::estimate_cp(series, cfg.measures.front(), rules[i]).front();
          report.push_back(to_json(e, cfg.sweep.param));
          write_text(os, e, cfg.sweep.param);
        } catch (const Error& e) {
          if (e.code() != ErrorCode::ExtremumOnBoundary || rules.size() == 1) throw;
          boundary = e;
          nlohmann::ordered_json j;
          j["param"] = cfg.sweep.param;
          j["estimator"] = std::string(to_string(cfg.measures.front()));
          j["rule"] = order == 1 ? "first-order" : "infinite-order";
          j["derivative_order"] = order;
          j["status"] = std::string(tqd::to_string(e.code()));
          j["message"] = e.detail();
          report.push_back(std::move(j));
          os << "param: " << cfg.sweep.param << "\nestimator: " << to_string(cfg.measures.front())
             << "\nrule: " << (order == 1 ? "first-order" : "infinite-order")
             << "\nstatus: " << e.what() << '\n';
        }
      }
      if (boundary && report.size() == rules.size() &&
          std::all_of(report.begin(), report.end(), [](const auto& j) { return j.contains("message"); })) {
        throw *boundary;
      }
      if (cp_json) {
        os.str("");
        os << (report.size() == 1 ? report.front() : report).dump(2) << '\n';
      }
      emit(cfg.output, os.str(), out);
    } catch (const std::exception& e) {
      return numeric_error(e);
    }
    return kExitOk;
  }

  if (*cmp_cmd) {
    RunConfig cfg;
    critical::CpRule rule{};
    try {
      cfg.model = cmp_model.build();
      const auto [lo, hi] = parse_window(cmp_window);
      cfg.sweep = {cmp_param.empty() ? default_param(cfg.model.kind) : cmp_param, lo, hi, cmp_steps};
      cfg.kt_list = parse_number_list(cmp_kts);
      cfg.measures = cmp_estimators.empty() ? default_estimators(cfg.model.kind)
                                            : parse_measure_list(cmp_estimators);
      cfg.output = cmp_output;
      rule = rule_from(cmp_rule);
      if (cfg.sweep.param == "kt") throw ConfigError("compare cannot sweep kt");
      validate(cfg);
      if (cmp_steps < 32) throw ConfigError("compare requires --steps >= 32");
    } catch (const std::exception& e) {
      return config_error(e);
    }
    try {
      const auto rows = critical::estimator_comparison(completed(cfg.model), cfg.sweep.param,
                                                       cfg.sweep.from, cfg.sweep.to, cfg.sweep.steps,
                                                       cfg.kt_list, cfg.measures, rule);
      std::ostringstream os;
      write_comparison_header(os);
      write_comparison_rows(os, rows);
      emit(cfg.output, os.str(), out);
    } catch (const std::exception& e) {
      return numeric_error(e);
    }
    return kExitOk;
  }

  if (*fig_cmd) {
    const FigureSpec* fig = nullptr;
    FigureOptions opts;
    try {
      fig = &find_figure(fig_id);
      if (fig_steps_opt->count()) {
        if (fig_steps < kMinSteps) throw ConfigError("--steps must be >= 16");
        opts.steps = fig_steps;
      }
      if (fig_length_opt->count()) {
        if (fig_length < 4 || fig_length > 16 || fig_length % 2 != 0) {
          throw ConfigError("--L must be an even integer in [4, 16]");
        }
        opts.length = fig_length;
      }
    } catch (const std::exception& e) {
      return config_error(e);
    }
    try {
      const auto files = run_figure(*fig, fig_outdir, opts);
      for (const auto& f : files) out << f << '\n';
    } catch (const std::exception& e) {
      return numeric_error(e);
    }
    return kExitOk;
  }
  return kExitConfig;
}

}  // namespace tqd::cli
