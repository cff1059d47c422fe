#include "tqd/model.hpp"

#include <algorithm>
#include <cmath>

#include "tqd/error.hpp"
#include "tqd/xxz.hpp"
#include "tqd/xy.hpp"
#include "tqd/xyz2.hpp"

namespace tqd {

std::string_view to_string(ModelKind kind) noexcept {
  switch (kind) {
    case ModelKind::xyz2: return "xyz2";
    case ModelKind::xxz: return "xxz";
    case ModelKind::xy: return "xy";
  }
  return "unknown";
}

ModelKind parse_model(std::string_view name) {
  if (name == "xyz2") return ModelKind::xyz2;
  if (name == "xxz") return ModelKind::xxz;
  if (name == "xy") return ModelKind::xy;
  throw Error(ErrorCode::InvalidParameter, "unknown model '" + std::string(name) + "'");
}

std::vector<std::string> parameter_names(ModelKind kind) {
  switch (kind) {
    case ModelKind::xyz2: return {"jx", "jy", "jz", "j", "b", "kt"};
    case ModelKind::xxz: return {"delta", "h", "j", "kt", "L"};
    case ModelKind::xy: return {"lambda", "gamma", "kt", "k"};
  }
  return {};
}

bool accepts_parameter(ModelKind kind, std::string_view name) {
  const auto names = parameter_names(kind);
  return std::find(names.begin(), names.end(), name) != names.end();
}

ModelSpec default_spec(ModelKind kind) {
  ModelSpec s;
  s.kind = kind;
  switch (kind) {
    case ModelKind::xyz2: s.params = {{"jx", 0.0}, {"jy", 0.0}, {"jz", 0.0}, {"b", 0.0}, {"kt", 1.0}}; break;
    case ModelKind::xxz: s.params = {{"delta", 0.0}, {"h", 0.0}, {"j", 1.0}, {"kt", 1.0}, {"L", 12.0}}; break;
    case ModelKind::xy: s.params = {{"lambda", 0.0}, {"gamma", 0.0}, {"kt", 1.0}, {"k", 1.0}}; break;
  }
  return s;
}

double ModelSpec::get(const std::string& name) const {
  if (auto it = params.find(name); it != params.end()) return it->second;
  const auto d = default_spec(kind);
  if (auto it = d.params.find(name); it != d.params.end()) return it->second;
  throw Error(ErrorCode::InvalidParameter,
              "model " + std::string(to_string(kind)) + " has no parameter '" + name + "'");
}

ModelSpec ModelSpec::with(const std::string& name, double value) const {
  if (!accepts_parameter(kind, name)) {
    throw Error(ErrorCode::InvalidParameter,
                "model " + std::string(to_string(kind)) + " has no parameter '" + name + "'");
  }
  ModelSpec out = *this;
  if (kind == ModelKind::xyz2 && name == "j") {
    out.params["jx"] = value;
    out.params["jy"] = value;
    if (xxx) out.params["jz"] = value;
  }
  out.params[name] = value;
  return out;
}

namespace {

int as_int(double v, const char* name) {
  if (!std::isfinite(v) || std::nearbyint(v) != v) {
    throw Error(ErrorCode::InvalidParameter, std::string(name) + " must be an integer");
  }
  return static_cast<int>(v);
}

}  // namespace

qcorr::CorrelationSet evaluate(const ModelSpec& spec) {
  switch (spec.kind) {
    case ModelKind::xyz2: {
      xyz2::TwoSpinXYZParams p;
      p.jx = spec.get("jx");
      p.jy = spec.get("jy");
      p.jz = spec.get("jz");
      if (auto it = spec.params.find("j"); it != spec.params.end()) {
        p.jx = p.jy = it->second;
        if (spec.xxx) p.jz = it->second;
      }
      p.b = spec.get("b");
      p.kt = spec.get("kt");
      return xyz2::correlations(p);
    }
    case ModelKind::xxz: {
      xxz::XXZParams p;
      p.delta = spec.get("delta");
      p.h = spec.get("h");
      p.j = spec.get("j");
      p.kt = spec.get("kt");
      p.length = as_int(spec.get("L"), "L");
      return xxz::correlations(p);
    }
    case ModelKind::xy: {
      xy::XYParams p;
      p.lambda = spec.get("lambda");
      p.gamma = spec.get("gamma");
      p.kt = spec.get("kt");
      p.k = as_int(spec.get("k"), "k");
      return xy::correlations(p);
    }
  }
  throw Error(ErrorCode::InvalidParameter, "unknown model");
}

std::string_view to_string(Measure m) noexcept {
  switch (m) {
    case Measure::discord: return "discord";
    case Measure::eof: return "eof";
    case Measure::concurrence: return "concurrence";
    case Measure::mutual_info: return "mutual_info";
    case Measure::sz: return "sz";
    case Measure::sxx: return "sxx";
    case Measure::syy: return "syy";
    case Measure::szz: return "szz";
  }
  return "unknown";
}

const std::vector<Measure>& all_measures() {
  static const std::vector<Measure> all = {Measure::discord, Measure::eof, Measure::concurrence,
                                           Measure::mutual_info, Measure::sz, Measure::sxx,
                                           Measure::syy, Measure::szz};
  return all;
}

Measure parse_measure(std::string_view name) {
  for (Measure m : all_measures()) {
    if (to_string(m) == name) return m;
  }
  throw Error(ErrorCode::InvalidParameter, "unknown measure '" + std::string(name) + "'");
}

double value_of(const qcorr::CorrelationSet& c, Measure m) {
  switch (m) {
    case Measure::discord: return c.discord;
    case Measure::eof: return c.eof;
    case Measure::concurrence: return c.concurrence;
    case Measure::mutual_info: return c.mutual_info;
    case Measure::sz: return c.sz;
    case Measure::sxx: return c.sxx;
    case Measure::syy: return c.syy;
    case Measure::szz: return c.szz;
  }
  return 0.0;
}

std::optional<double> reference_cp(const ModelSpec& spec, std::string_view param, int order) {
  if (spec.kind == ModelKind::xxz && param == "delta") {
    const double h = std::abs(spec.get("h"));
    const double j = spec.get("j");
    try {
      return order == 1 ? xxz::cp_first_order(h, j) : xxz::cp_infinite_order(h, j);
    } catch (const Error&) {
      return std::nullopt;
    }
  }
  if (spec.kind == ModelKind::xy) {
    if (param == "lambda") return 1.0;
    if (param == "gamma") return 0.0;
  }
  return std::nullopt;
}

}  // namespace tqd
