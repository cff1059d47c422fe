#include "cli/figures.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "cli/config.hpp"
#include "cli/output.hpp"

namespace tqd::cli {

namespace {

using critical::CpRule;

ModelSpec spec(ModelKind kind, std::map<std::string, double> params, bool xxx = false) {
  ModelSpec s;
  s.kind = kind;
  s.params = std::move(params);
  s.xxx = xxx;
  return s;
}

std::string tag(std::string_view name, double v) { return std::string(name) + format_number(v); }

constexpr int kXXZLength = 12;
constexpr double kT0 = kZeroTemperatureKt;

std::vector<FigureSpec> build_table() {
  std::vector<FigureSpec> t;

  {  // two-spin XXZ at b = 0, discord against temperature
    FigureSpec a{"fig1a", "two-spin, jx=jy=J in {0.1,0.2,0.3,0.4}, jz=-0.5, b=0; discord vs kt", {}, {}};
    for (double j : {0.1, 0.2, 0.3, 0.4}) {
      a.curves.push_back({tag("j", j), spec(ModelKind::xyz2, {{"jx", j}, {"jy", j}, {"jz", -0.5}, {"b", 0.0}, {"kt", 1.0}}),
                          "kt", kT0, 2.0, 200, {Measure::discord}});
    }
    t.push_back(std::move(a));
    FigureSpec b{"fig1b", "two-spin, jx=jy=0.4, jz in {-0.8,-0.7,-0.6,-0.5}, b=0; discord vs kt", {}, {}};
    for (double jz : {-0.8, -0.7, -0.6, -0.5}) {
      b.curves.push_back({tag("jz", jz), spec(ModelKind::xyz2, {{"jx", 0.4}, {"jy", 0.4}, {"jz", jz}, {"b", 0.0}, {"kt", 1.0}}),
                          "kt", kT0, 2.0, 200, {Measure::discord}});
    }
    t.push_back(std::move(b));
  }
  {
    FigureSpec f{"fig2", "two-spin XXX, b=0, kt in {0.05,0.1,0.5,1.0}; discord and eof vs J", {}, {}};
    for (double kt : {0.05, 0.1, 0.5, 1.0}) {
      f.curves.push_back({tag("kt", kt), spec(ModelKind::xyz2, {{"j", 1.0}, {"b", 0.0}, {"kt", kt}}, true),
                          "j", -2.0, 2.0, 200, {Measure::discord, Measure::eof}});
    }
    t.push_back(std::move(f));
  }
  {
    FigureSpec f{"fig3", "two-spin XY, jx=2.6, jy=1.4, jz=0, b in {1.1,2.0,2.5}; discord and eof vs kt", {}, {}};
    for (double b : {1.1, 2.0, 2.5}) {
      f.curves.push_back({tag("b", b), spec(ModelKind::xyz2, {{"jx", 2.6}, {"jy", 1.4}, {"jz", 0.0}, {"b", b}, {"kt", 1.0}}),
                          "kt", kT0, 3.0, 300, {Measure::discord, Measure::eof}});
    }
    t.push_back(std::move(f));
  }
  {
    struct Panel { const char* id; double h; Measure m; double from, to; };
    const Panel panels[] = {{"fig4a", 0.0, Measure::discord, -2.5, 2.5},
                            {"fig4b", 12.0, Measure::discord, 0.0, 7.0},
                            {"fig4c", 0.0, Measure::eof, -2.5, 2.5},
                            {"fig4d", 12.0, Measure::eof, 0.0, 7.0}};
    for (const auto& p : panels) {
      FigureSpec f{p.id, "XXZ chain, h=" + format_number(p.h) + ", kt in {0,0.1,0.5,1.0,2.0}; " +
                             std::string(to_string(p.m)) + " vs delta",
                   {}, {}};
      for (double kt : {kT0, 0.1, 0.5, 1.0, 2.0}) {
        f.curves.push_back({tag("kt", kt),
                            spec(ModelKind::xxz, {{"delta", 0.0}, {"h", p.h}, {"j", 1.0}, {"kt", kt}, {"L", kXXZLength}}),
                            "delta", p.from, p.to, 200, {p.m}});
      }
      t.push_back(std::move(f));
    }
  }
  {
    FigureSpec f{"fig5", "XXZ chain, h=12, kt in {0.02,0.1,0.5}; normalized first and second delta-derivatives of discord", {}, {}};
    for (double kt : {0.02, 0.1, 0.5}) {
      f.curves.push_back({tag("kt", kt),
                          spec(ModelKind::xxz, {{"delta", 0.0}, {"h", 12.0}, {"j", 1.0}, {"kt", kt}, {"L", kXXZLength}}),
                          "delta", 0.0, 6.0, 400, {Measure::discord},
                          {CurveTransform::d1_normalized, CurveTransform::d2_normalized}});
    }
    t.push_back(std::move(f));
  }
  {
    FigureSpec f{"fig6", "XXZ chain, h in {6,12}; |reference - estimate| for discord, eof, sxx, szz vs kt, both rules", {}, {}};
    const std::vector<double> kts{0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0};
    const std::vector<Measure> est{Measure::discord, Measure::eof, Measure::sxx, Measure::szz};
    f.comparison.push_back({"h", 6.0, spec(ModelKind::xxz, {{"delta", 0.0}, {"h", 6.0}, {"j", 1.0}, {"kt", 1.0}, {"L", kXXZLength}}),
                            "delta", -1.0, 5.0, 400, kts, est, CpRule::both});
    f.comparison.push_back({"h", 12.0, spec(ModelKind::xxz, {{"delta", 0.0}, {"h", 12.0}, {"j", 1.0}, {"kt", 1.0}, {"L", kXXZLength}}),
                            "delta", 0.0, 7.0, 400, kts, est, CpRule::both});
    t.push_back(std::move(f));
  }
  {
    FigureSpec f{"fig7", "XY chain, nearest neighbours, gamma in {0,0.5,1.0}, kt in {0.01,0.1,0.5}; discord and eof vs lambda", {}, {}};
    for (double g : {0.0, 0.5, 1.0}) {
      for (double kt : {0.01, 0.1, 0.5}) {
        f.curves.push_back({tag("gamma", g) + "_" + tag("kt", kt),
                            spec(ModelKind::xy, {{"lambda", 1.0}, {"gamma", g}, {"kt", kt}, {"k", 1.0}}),
                            "lambda", 0.0, 2.0, 200, {Measure::discord, Measure::eof}});
      }
    }
    t.push_back(std::move(f));
  }
  {
    FigureSpec f{"fig8", "XY chain, gamma in {0,0.5,1.0}; |1 - lambda_e| for discord and eof vs kt, both rules", {}, {}};
    for (double g : {0.0, 0.5, 1.0}) {
      f.comparison.push_back({"gamma", g, spec(ModelKind::xy, {{"lambda", 1.0}, {"gamma", g}, {"kt", 1.0}, {"k", 1.0}}),
                              "lambda", 0.5, 1.5, 400, {0.01, 0.05, 0.1, 0.2, 0.3, 0.4, 0.5},
                              {Measure::discord, Measure::eof}, CpRule::both});
    }
    t.push_back(std::move(f));
  }
  {
    FigureSpec f{"fig9", "XY chain, lambda=1.5, kt in {0,0.1,0.5,1.0,2.0}; discord and eof vs gamma", {}, {}};
    for (double kt : {kT0, 0.1, 0.5, 1.0, 2.0}) {
      f.curves.push_back({tag("kt", kt), spec(ModelKind::xy, {{"lambda", 1.5}, {"gamma", 0.0}, {"kt", kt}, {"k", 1.0}}),
                          "gamma", -1.0, 1.0, 201, {Measure::discord, Measure::eof}});
    }
    t.push_back(std::move(f));
  }
  return t;
}

std::string transform_prefix(CurveTransform t) {
  switch (t) {
    case CurveTransform::value: return "";
    case CurveTransform::d1_normalized: return "d1_";
    case CurveTransform::d2_normalized: return "d2_";
  }
  return "";
}

std::string csv_name(const FigureSpec& fig, const SweepCurve& c, Measure m, CurveTransform t) {
  return fig.id + "_" + transform_prefix(t) + std::string(to_string(m)) + "_" + c.tag + ".csv";
}

nlohmann::ordered_json params_json(const ModelSpec& s, const std::string& swept) {
  nlohmann::ordered_json j = nlohmann::ordered_json::object();
  for (const auto& [k, v] : s.params) {
    if (k != swept) j[k] = v;
  }
  return j;
}

bool uses_zero_temperature(const FigureSpec& fig) {
  for (const auto& c : fig.curves) {
    if (c.param == "kt" ? c.from == kT0 : c.model.get("kt") == kT0) return true;
  }
  return false;
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  f << text;
  if (!f) throw std::runtime_error("write failed for '" + path.string() + "'");
}

}  // namespace

const std::vector<FigureSpec>& figure_table() {
  static const std::vector<FigureSpec> table = build_table();
  return table;
}

const FigureSpec& find_figure(const std::string& id) {
  for (const auto& f : figure_table()) {
    if (f.id == id) return f;
  }
  std::string known;
  for (const auto& f : figure_table()) known += (known.empty() ? "" : ", ") + f.id;
  throw ConfigError("unknown figure id '" + id + "' (known: " + known + ")");
}

FigureSpec resolved(const FigureSpec& fig, const FigureOptions& opts) {
  FigureSpec out = fig;
  auto patch_model = [&](ModelSpec& m) {
    if (opts.length && m.kind == ModelKind::xxz) m.params["L"] = *opts.length;
  };
  for (auto& c : out.curves) {
    if (opts.steps) c.steps = *opts.steps;
    patch_model(c.model);
  }
  for (auto& b : out.comparison) {
    if (opts.steps) b.steps = *opts.steps;
    patch_model(b.model);
  }
  return out;
}

std::size_t csv_count(const FigureSpec& fig) {
  std::size_t n = fig.comparison.empty() ? 0 : 1;
  for (const auto& c : fig.curves) n += c.measures.size() * c.transforms.size();
  return n;
}

std::vector<std::string> run_figure(const FigureSpec& base, const std::string& outdir,
                                    const FigureOptions& opts) {
  const FigureSpec fig = resolved(base, opts);
  namespace fs = std::filesystem;
  const fs::path dir(outdir);
  fs::create_directories(dir);

  std::vector<std::pair<std::string, std::string>> files;  // computed first, written last
  nlohmann::ordered_json manifest;
  manifest["id"] = fig.id;
  manifest["description"] = fig.description;
  nlohmann::ordered_json notes = nlohmann::ordered_json::array();
  if (uses_zero_temperature(fig)) {
    notes.push_back("zero-temperature curves are evaluated at kt=" + format_number(kT0));
  }
  std::optional<double> length;
  for (const auto& c : fig.curves) {
    if (c.model.kind == ModelKind::xxz) length = c.model.get("L");
  }
  for (const auto& b : fig.comparison) {
    if (b.model.kind == ModelKind::xxz) length = b.model.get("L");
  }
  if (length) {
    notes.push_back("XXZ results use a periodic chain of L=" + format_number(*length) + " sites");
    manifest["L"] = static_cast<int>(*length);
  }
  manifest["notes"] = notes;

  nlohmann::ordered_json entries = nlohmann::ordered_json::array();
  for (const auto& c : fig.curves) {
    const auto series = critical::sweep(c.model, c.param, c.from, c.to, c.steps, c.measures, opts.sweep);
    for (Measure m : c.measures) {
      for (CurveTransform t : c.transforms) {
        const std::string name = csv_name(fig, c, m, t);
        std::ostringstream os;
        const std::string column = transform_prefix(t) + std::string(to_string(m));
        os << "param,kt," << column << '\n';
        std::vector<double> grid = series.grid;
        std::vector<double> values = series.column(m);
        if (t != CurveTransform::value) {
          values = critical::normalize(
              critical::derivative(series, m, t == CurveTransform::d1_normalized ? 1 : 2));
          grid.assign(series.grid.begin() + 1, series.grid.end() - 1);
        }
        for (std::size_t i = 0; i < grid.size(); ++i) {
          const double kt = c.param == "kt" ? grid[i] : c.model.get("kt");
          os << format_number(grid[i]) << ',' << format_number(kt) << ',' << format_number(values[i]) << '\n';
        }
        files.emplace_back(name, os.str());

        nlohmann::ordered_json e;
        e["file"] = name;
        e["model"] = std::string(to_string(c.model.kind));
        if (c.model.kind == ModelKind::xyz2) e["xxx"] = c.model.xxx;
        e["param"] = c.param;
        e["from"] = c.from;
        e["to"] = c.to;
        e["steps"] = c.steps;
        e["fixed"] = params_json(c.model, c.param);
        e["measure"] = std::string(to_string(m));
        e["transform"] = t == CurveTransform::value ? "value"
                         : t == CurveTransform::d1_normalized ? "normalized first derivative"
                                                              : "normalized second derivative";
        entries.push_back(std::move(e));
      }
    }
  }

  if (!fig.comparison.empty()) {
    const std::string name = fig.id + "_comparison.csv";
    std::ostringstream os;
    write_comparison_header(os, {fig.comparison.front().label});
    nlohmann::ordered_json blocks = nlohmann::ordered_json::array();
    for (const auto& b : fig.comparison) {
      const auto rows = critical::estimator_comparison(b.model, b.param, b.from, b.to, b.steps,
                                                       b.kt_list, b.estimators, b.rule, opts.sweep);
      write_comparison_rows(os, rows, {b.label_value});
      nlohmann::ordered_json e;
      e[b.label] = b.label_value;
      e["model"] = std::string(to_string(b.model.kind));
      e["param"] = b.param;
      e["from"] = b.from;
      e["to"] = b.to;
      e["steps"] = b.steps;
      e["fixed"] = params_json(b.model, b.param);
      e["kt_list"] = b.kt_list;
      nlohmann::ordered_json est = nlohmann::ordered_json::array();
      for (Measure m : b.estimators) est.push_back(std::string(to_string(m)));
      e["estimators"] = est;
      e["rule"] = std::string(critical::to_string(b.rule));
      blocks.push_back(std::move(e));
    }
    files.emplace_back(name, os.str());
    nlohmann::ordered_json e;
    e["file"] = name;
    e["comparison"] = blocks;
    entries.push_back(std::move(e));
  }
  manifest["files"] = entries;

  std::vector<std::string> written;
  for (const auto& [name, text] : files) {
    write_file(dir / name, text);
    written.push_back(name);
  }
  const std::string manifest_name = fig.id + "_manifest.json";
  write_file(dir / manifest_name, manifest.dump(2) + "\n");
  written.push_back(manifest_name);
  return written;
}

}  // namespace tqd::cli
