#pragma once

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include <sijc/algebra.hpp>
#include <sijc/inversion.hpp>
#include <sijc/spectrum.hpp>
#include <sijc/types.hpp>

namespace sijc {

using json = nlohmann::ordered_json;

/// Initial-state description as it appears in a run configuration. The
/// concrete vector is assembled later against a bundle, because dressed
/// states need the operator data.
struct InitialStateSpec {
  enum class Kind { ground, bare, dressed, amplitudes };
  Kind kind = Kind::ground;
  Index m = 0;
  char sector = 'g';           // bare states: 'e' or 'g'
  Branch branch = Branch::plus;  // dressed states
  std::vector<Complex> amps;   // explicit amplitudes, length 2N
};

struct RunConfig {
  ShapeInvariantModel model;
  Index N = 0;
  JCParams params;
  std::vector<double> times;
  Backend backend = Backend::series;
  bool all_backends = false;
  int series_order = 60;
  double quadrature_tol = 1e-10;
  InitialStateSpec initial;
  std::string out_format = "csv";
  std::string out_path;
};

namespace detail {

inline void reject_unknown_keys(const json& obj, const char* context,
                                const std::set<std::string>& known) {
  for (const auto& item : obj.items())
    if (known.find(item.key()) == known.end())
      throw error(errc::unknown_key,
                  std::string(context) + " has unknown key '" + item.key() +
                      "'");
}

inline const json& require_key(const json& obj, const char* context,
                               const char* key) {
  auto it = obj.find(key);
  if (it == obj.end())
    throw error(errc::parse_error, std::string(context) + " is missing '" +
                                       key + "'");
  return *it;
}

inline double as_double(const json& v, const char* what) {
  if (!v.is_number())
    throw error(errc::parse_error, std::string(what) + " must be a number");
  return v.get<double>();
}

inline Index as_index(const json& v, const char* what) {
  if (!v.is_number_integer())
    throw error(errc::parse_error, std::string(what) + " must be an integer");
  return v.get<Index>();
}

inline std::string as_string(const json& v, const char* what) {
  if (!v.is_string())
    throw error(errc::parse_error, std::string(what) + " must be a string");
  return v.get<std::string>();
}

inline ShapeInvariantModel parse_model(const json& j, double hbar) {
  if (!j.is_object())
    throw error(errc::parse_error, "model must be an object");
  const std::string kind = as_string(require_key(j, "model", "kind"),
                                     "model.kind");
  if (kind == "harmonic") {
    reject_unknown_keys(j, "model", {"kind", "omega"});
    return ShapeInvariantModel::harmonic(
        as_double(require_key(j, "model", "omega"), "model.omega"), hbar);
  }
  if (kind == "self_similar") {
    reject_unknown_keys(j, "model", {"kind", "r1", "q"});
    return ShapeInvariantModel::self_similar(
        as_double(require_key(j, "model", "r1"), "model.r1"),
        as_double(require_key(j, "model", "q"), "model.q"));
  }
  if (kind == "explicit") {
    reject_unknown_keys(j, "model", {"kind", "remainders"});
    const json& arr = require_key(j, "model", "remainders");
    if (!arr.is_array() || arr.empty())
      throw error(errc::parse_error,
                  "model.remainders must be a nonempty array");
    std::vector<double> rs;
    rs.reserve(arr.size());
    for (const auto& v : arr) rs.push_back(as_double(v, "model.remainders[]"));
    return ShapeInvariantModel::explicit_remainders(std::move(rs));
  }
  throw error(errc::validation_error, "model.kind '" + kind +
                                          "' is not one of harmonic, "
                                          "self_similar, explicit");
}

inline std::vector<double> parse_times(const json& j) {
  if (!j.is_object())
    throw error(errc::parse_error, "times must be an object");
  if (j.contains("list")) {
    reject_unknown_keys(j, "times", {"list"});
    const json& arr = *j.find("list");
    if (!arr.is_array() || arr.empty())
      throw error(errc::parse_error, "times.list must be a nonempty array");
    std::vector<double> ts;
    ts.reserve(arr.size());
    for (const auto& v : arr) ts.push_back(as_double(v, "times.list[]"));
    return ts;
  }
  reject_unknown_keys(j, "times", {"start", "stop", "count"});
  const double start = as_double(require_key(j, "times", "start"),
                                 "times.start");
  const double stop = as_double(require_key(j, "times", "stop"),
                                "times.stop");
  const Index count = as_index(require_key(j, "times", "count"),
                               "times.count");
  if (count < 1)
    throw error(errc::validation_error, "times.count must be at least 1");
  std::vector<double> ts(static_cast<std::size_t>(count));
  for (Index i = 0; i < count; ++i)
    ts[static_cast<std::size_t>(i)] =
        count == 1 ? start
                   : start + (stop - start) * static_cast<double>(i) /
                         static_cast<double>(count - 1);
  return ts;
}

inline InitialStateSpec parse_initial_state(const json& j) {
  InitialStateSpec s;
  if (j.is_string()) {
    const std::string v = j.get<std::string>();
    if (v != "ground")
      throw error(errc::validation_error,
                  "initial_state string must be 'ground'");
    s.kind = InitialStateSpec::Kind::ground;
    return s;
  }
  if (!j.is_object())
    throw error(errc::parse_error,
                "initial_state must be 'ground' or an object");
  reject_unknown_keys(j, "initial_state", {"bare", "dressed", "amplitudes"});
  if (j.size() != 1)
    throw error(errc::parse_error,
                "initial_state needs exactly one of bare, dressed, "
                "amplitudes");
  if (j.contains("bare")) {
    const json& b = *j.find("bare");
    reject_unknown_keys(b, "initial_state.bare", {"m", "sector"});
    s.kind = InitialStateSpec::Kind::bare;
    s.m = as_index(require_key(b, "initial_state.bare", "m"),
                   "initial_state.bare.m");
    const std::string sec = as_string(
        require_key(b, "initial_state.bare", "sector"),
        "initial_state.bare.sector");
    if (sec != "e" && sec != "g")
      throw error(errc::validation_error,
                  "initial_state.bare.sector must be 'e' or 'g'");
    s.sector = sec[0];
    return s;
  }
  if (j.contains("dressed")) {
    const json& d = *j.find("dressed");
    reject_unknown_keys(d, "initial_state.dressed", {"m", "branch"});
    s.kind = InitialStateSpec::Kind::dressed;
    s.m = as_index(require_key(d, "initial_state.dressed", "m"),
                   "initial_state.dressed.m");
    const std::string br = as_string(
        require_key(d, "initial_state.dressed", "branch"),
        "initial_state.dressed.branch");
    if (br == "plus")
      s.branch = Branch::plus;
    else if (br == "minus")
      s.branch = Branch::minus;
    else
      throw error(errc::validation_error,
                  "initial_state.dressed.branch must be 'plus' or 'minus'");
    return s;
  }
  const json& arr = *j.find("amplitudes");
  if (!arr.is_array() || arr.empty())
    throw error(errc::parse_error,
                "initial_state.amplitudes must be a nonempty array");
  s.kind = InitialStateSpec::Kind::amplitudes;
  for (const auto& v : arr) {
    if (!v.is_array() || v.size() != 2)
      throw error(errc::parse_error,
                  "initial_state.amplitudes entries must be [re, im]");
    s.amps.emplace_back(as_double(v[0], "amplitude re"),
                        as_double(v[1], "amplitude im"));
  }
  return s;
}

inline Backend parse_backend(const std::string& v, bool& all) {
  all = false;
  if (v == "series") return Backend::series;
  if (v == "quadrature") return Backend::quadrature;
  if (v == "ho_closed_form") return Backend::ho_closed_form;
  if (v == "all") {
    all = true;
    return Backend::series;
  }
  throw error(errc::validation_error,
              "backend must be series, quadrature, ho_closed_form or all");
}

}  // namespace detail

inline RunConfig parse_config(const json& j) {
  if (!j.is_object())
    throw error(errc::parse_error, "configuration root must be an object");
  detail::reject_unknown_keys(
      j, "config",
      {"model", "N", "alpha", "delta", "hbar", "times", "backend",
       "series_order", "quadrature_tol", "initial_state", "output"});

  RunConfig cfg;
  const double hbar = j.contains("hbar")
                          ? detail::as_double(*j.find("hbar"), "hbar")
                          : 1.0;
  if (!(hbar > 0.0))
    throw error(errc::validation_error, "hbar must be positive");
  cfg.model = detail::parse_model(detail::require_key(j, "config", "model"),
                                  hbar);
  cfg.N = detail::as_index(detail::require_key(j, "config", "N"), "N");
  if (cfg.N < 2)
    throw error(errc::validation_error, "N must be at least 2");
  const double alpha = detail::as_double(
      detail::require_key(j, "config", "alpha"), "alpha");
  const double delta = detail::as_double(
      detail::require_key(j, "config", "delta"), "delta");
  if (!(alpha > 0.0))
    throw error(errc::validation_error, "alpha must be positive");
  cfg.params = JCParams(alpha, delta, hbar);
  cfg.times = detail::parse_times(detail::require_key(j, "config", "times"));

  if (j.contains("backend"))
    cfg.backend = detail::parse_backend(
        detail::as_string(*j.find("backend"), "backend"), cfg.all_backends);
  if (j.contains("series_order")) {
    cfg.series_order = static_cast<int>(
        detail::as_index(*j.find("series_order"), "series_order"));
    if (cfg.series_order < 8)
      throw error(errc::validation_error, "series_order must be at least 8");
  }
  if (j.contains("quadrature_tol")) {
    cfg.quadrature_tol = detail::as_double(*j.find("quadrature_tol"),
                                           "quadrature_tol");
    if (!(cfg.quadrature_tol > 0.0))
      throw error(errc::validation_error, "quadrature_tol must be positive");
  }
  if (j.contains("initial_state"))
    cfg.initial = detail::parse_initial_state(*j.find("initial_state"));
  if (j.contains("output")) {
    const json& o = *j.find("output");
    if (!o.is_object())
      throw error(errc::parse_error, "output must be an object");
    detail::reject_unknown_keys(o, "output", {"format", "path"});
    if (o.contains("format")) {
      cfg.out_format = detail::as_string(*o.find("format"), "output.format");
      if (cfg.out_format != "csv" && cfg.out_format != "json")
        throw error(errc::validation_error,
                    "output.format must be csv or json");
    }
    if (o.contains("path"))
      cfg.out_path = detail::as_string(*o.find("path"), "output.path");
  }
  return cfg;
}

inline RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    throw error(errc::parse_error, "cannot open config file '" + path + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw error(errc::parse_error, std::string("config is not valid JSON: ") +
                                       e.what());
  }
  return parse_config(j);
}

/// Concrete state vector for a bundle. Explicit amplitude lists must be
/// close to unit norm and are then normalized exactly.
inline Vector build_initial_state(const InitialStateSpec& s,
                                  const OperatorBundle& b) {
  Vector v = Vector::Zero(2 * b.N);
  switch (s.kind) {
    case InitialStateSpec::Kind::ground:
      v(b.g(0)) = 1.0;
      return v;
    case InitialStateSpec::Kind::bare: {
      if (s.m < 0 || s.m >= b.N)
        throw error(errc::validation_error,
                    "bare level index outside the ladder",
                    static_cast<long>(s.m));
      v(s.sector == 'e' ? b.e(s.m) : b.g(s.m)) = 1.0;
      return v;
    }
    case InitialStateSpec::Kind::dressed:
      return dressed_state(b, s.m, s.branch);
    case InitialStateSpec::Kind::amplitudes: {
      if (static_cast<Index>(s.amps.size()) != 2 * b.N)
        throw error(errc::shape_mismatch,
                    "amplitude list must have 2N entries");
      for (Index i = 0; i < 2 * b.N; ++i)
        v(i) = s.amps[static_cast<std::size_t>(i)];
      const double norm = v.norm();
      if (std::abs(norm - 1.0) > 1e-6)
        throw error(errc::non_normalized_state,
                    "amplitude list is not close to unit norm");
      return v / norm;
    }
  }
  throw error(errc::validation_error, "corrupt initial state kind");
}

}  // namespace sijc
