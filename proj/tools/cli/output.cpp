#include "cli/output.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>
#include <stdexcept>

namespace tqd::cli {

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

namespace {

// JSON carries the same decimal strings as the CSV so that re-parsing either
// gives identical doubles.
double rounded(double v) { return std::stod(format_number(v)); }

double kt_of(const critical::SweepSeries& s, double grid_value) {
  return s.param_name == "kt" ? grid_value : s.meta.get("kt");
}

}  // namespace

void write_csv(std::ostream& os, const critical::SweepSeries& series) {
  os << "param,kt";
  for (Measure m : series.measures) os << ',' << to_string(m);
  os << '\n';
  for (std::size_t i = 0; i < series.grid.size(); ++i) {
    os << format_number(series.grid[i]) << ',' << format_number(kt_of(series, series.grid[i]));
    for (Measure m : series.measures) {
      os << ',';
      if (series.values[i]) os << format_number(value_of(*series.values[i], m));
      else os << "nan";
    }
    os << '\n';
  }
}

nlohmann::ordered_json to_json(const critical::SweepSeries& series) {
  nlohmann::ordered_json meta;
  meta["model"] = std::string(to_string(series.meta.kind));
  meta["param"] = series.param_name;
  nlohmann::ordered_json fixed = nlohmann::ordered_json::object();
  for (const auto& [name, value] : series.meta.params) {
    if (name != series.param_name) fixed[name] = rounded(value);
  }
  meta["fixed"] = fixed;
  if (series.meta.kind == ModelKind::xyz2) meta["xxx"] = series.meta.xxx;
  meta["steps"] = series.grid.size();

  nlohmann::ordered_json cols = nlohmann::ordered_json::array({"param", "kt"});
  for (Measure m : series.measures) cols.push_back(std::string(to_string(m)));

  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < series.grid.size(); ++i) {
    nlohmann::ordered_json row;
    row["param"] = rounded(series.grid[i]);
    row["kt"] = rounded(kt_of(series, series.grid[i]));
    for (Measure m : series.measures) {
      if (series.values[i]) row[std::string(to_string(m))] = rounded(value_of(*series.values[i], m));
      else row[std::string(to_string(m))] = nullptr;
    }
    rows.push_back(std::move(row));
  }
  nlohmann::ordered_json out;
  out["meta"] = meta;
  out["columns"] = cols;
  out["rows"] = rows;
  return out;
}

nlohmann::ordered_json to_json(const critical::CpEstimate& e, std::string_view param) {
  nlohmann::ordered_json j;
  j["param"] = std::string(param);
  j["estimator"] = std::string(to_string(e.estimator));
  j["rule"] = e.derivative_order == 1 ? "first-order" : "infinite-order";
  j["derivative_order"] = e.derivative_order;
  j["location"] = rounded(e.location);
  j["extremum_value"] = rounded(e.extremum_value);
  if (e.reference) {
    j["reference"] = rounded(*e.reference);
    j["nearest_candidate"] = rounded(e.nearest_candidate(*e.reference));
    j["error"] = rounded(*e.error());
  } else {
    j["reference"] = nullptr;
    j["error"] = nullptr;
  }
  nlohmann::ordered_json c = nlohmann::ordered_json::array();
  for (double x : e.candidates) c.push_back(rounded(x));
  j["candidates"] = c;
  j["status"] = "ok";
  return j;
}

void write_text(std::ostream& os, const critical::CpEstimate& e, std::string_view param) {
  os << "param: " << param << '\n';
  os << "estimator: " << to_string(e.estimator) << '\n';
  os << "rule: " << (e.derivative_order == 1 ? "first-order" : "infinite-order") << '\n';
  os << "location: " << format_number(e.location) << '\n';
  if (e.reference) {
    os << "reference: " << format_number(*e.reference) << '\n';
    os << "nearest_candidate: " << format_number(e.nearest_candidate(*e.reference)) << '\n';
    os << "error: " << format_number(*e.error()) << '\n';
  } else {
    os << "reference: none\n";
  }
  os << "candidates:";
  for (double x : e.candidates) os << ' ' << format_number(x);
  os << '\n';
}

void write_comparison_header(std::ostream& os, const std::vector<std::string>& leading) {
  for (const auto& name : leading) os << name << ',';
  os << "kt,estimator,order,location,reference,error,status\n";
}

void write_comparison_rows(std::ostream& os, const std::vector<critical::ComparisonRow>& rows,
                           const std::vector<double>& leading) {
  auto opt = [](const std::optional<double>& v) { return v ? format_number(*v) : std::string(); };
  for (const auto& r : rows) {
    for (double v : leading) os << format_number(v) << ',';
    os << format_number(r.kt) << ',' << to_string(r.estimator) << ',' << r.derivative_order << ','
       << opt(r.location) << ',' << opt(r.reference) << ',' << opt(r.error) << ',' << r.status
       << '\n';
  }
}

void emit(const std::string& path, const std::string& text, std::ostream& stdout_stream) {
  if (path == "-") {
    stdout_stream << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open '" + path + "' for writing");
  f << text;
  if (!f) throw std::runtime_error("write failed for '" + path + "'");
}

}  // namespace tqd::cli
