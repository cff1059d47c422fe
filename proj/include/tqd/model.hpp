#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tqd/qcorr.hpp"

namespace tqd {

enum class ModelKind { xyz2, xxz, xy };

std::string_view to_string(ModelKind kind) noexcept;
/// Throws InvalidParameter for an unknown name.
ModelKind parse_model(std::string_view name);

/// A model backend plus its fixed parameters by name:
///   xyz2: jx, jy, jz, b, kt (and the alias j, see `xxx`)
///   xxz:  delta, h, j, kt, L
///   xy:   lambda, gamma, kt, k
struct ModelSpec {
  ModelKind kind = ModelKind::xyz2;
  std::map<std::string, double> params;
  /// xyz2 only: the parameter j drives jx = jy = jz (otherwise jx = jy).
  bool xxx = false;

  double get(const std::string& name) const;
  ModelSpec with(const std::string& name, double value) const;
};

/// Parameter names accepted by a backend (sweepable or fixed).
std::vector<std::string> parameter_names(ModelKind kind);
bool accepts_parameter(ModelKind kind, std::string_view name);

/// Full-parameter defaults: missing names take these values.
ModelSpec default_spec(ModelKind kind);

qcorr::CorrelationSet evaluate(const ModelSpec& spec);

enum class Measure { discord, eof, concurrence, mutual_info, sz, sxx, syy, szz };

std::string_view to_string(Measure m) noexcept;
Measure parse_measure(std::string_view name);
const std::vector<Measure>& all_measures();
double value_of(const qcorr::CorrelationSet& c, Measure m);

/// Known critical point of the backend along `param` for the derivative
/// order used to detect it (1: first-order rule, 2: infinite-order rule).
std::optional<double> reference_cp(const ModelSpec& spec, std::string_view param, int order);

}  // namespace tqd
