#pragma once

// Scenario configuration and the JSON forms of StationaryData and
// expression-defined graphs.

#include <array>
#include <cstdint>
#include <fstream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "stationary/graph_geometry.hpp"
#include "stationary/holo_expr.hpp"
#include "stationary/lab/report.hpp"
#include "stationary/representation.hpp"

namespace stationary::lab {

struct OutputSpec {
  std::string kind;  // csv | obj | json
  std::string path;
  std::array<int, 3> coords{0, 1, 2};  // obj only: indices into (x1, x2, f...)
};

struct ScenarioConfig {
  std::string name;
  json data;  // StationaryData object, or {"graph": [...]} for graph surfaces
  std::optional<double> L;
  std::optional<int> n;
  std::optional<double> fd_step;
  std::map<std::string, double> tolerances;
  std::vector<OutputSpec> outputs;
  json params = json::object();
  std::uint64_t seed = 1;
  int threads = 1;

  double tol(const std::string& key, double fallback) const {
    const auto it = tolerances.find(key);
    return it == tolerances.end() ? fallback : it->second;
  }
  template <class T>
  T param(const std::string& key, T fallback) const {
    if (!params.contains(key)) return fallback;
    try {
      return params.at(key).get<T>();
    } catch (const json::exception& e) {
      throw Error(ErrorKind::config, "params." + key + ": " + e.what());
    }
  }
};

namespace detail {

template <class T>
T field(const json& j, const char* key, const std::string& where) {
  if (!j.contains(key)) throw Error(ErrorKind::config, where + ": missing \"" + key + "\"");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw Error(ErrorKind::config, where + "." + key + ": " + e.what());
  }
}

}  // namespace detail

inline void validate(const ScenarioConfig& c) {
  if (c.L && !(*c.L > 0.0)) throw Error(ErrorKind::config, "grid.L must be positive");
  if (c.n && *c.n < 2) throw Error(ErrorKind::config, "grid.n must be at least 2");
  if (c.fd_step && !(*c.fd_step > 0.0)) throw Error(ErrorKind::config, "fd_step must be positive");
  if (c.threads < 1) throw Error(ErrorKind::config, "threads must be at least 1");
  for (const auto& o : c.outputs) {
    if (o.kind != "csv" && o.kind != "obj" && o.kind != "json")
      throw Error(ErrorKind::config, "output kind must be csv, obj or json: " + o.kind);
    if (o.path.empty()) throw Error(ErrorKind::config, "output path is empty");
  }
}

inline ScenarioConfig parse_config(const json& j) {
  if (!j.is_object()) throw Error(ErrorKind::config, "config must be a JSON object");
  ScenarioConfig c;
  if (j.contains("name")) c.name = detail::field<std::string>(j, "name", "config");
  if (j.contains("data")) c.data = j.at("data");
  if (j.contains("grid")) {
    const json& g = j.at("grid");
    if (g.contains("L")) c.L = detail::field<double>(g, "L", "grid");
    if (g.contains("n")) c.n = detail::field<int>(g, "n", "grid");
  }
  if (j.contains("fd_step")) c.fd_step = detail::field<double>(j, "fd_step", "config");
  if (j.contains("tolerances"))
    for (const auto& [k, v] : j.at("tolerances").items()) {
      if (!v.is_number()) throw Error(ErrorKind::config, "tolerances." + k + " must be a number");
      c.tolerances[k] = v.get<double>();
    }
  if (j.contains("outputs"))
    for (const auto& o : j.at("outputs")) {
      OutputSpec s;
      s.kind = detail::field<std::string>(o, "kind", "outputs");
      s.path = detail::field<std::string>(o, "path", "outputs");
      if (o.contains("coords")) {
        const auto v = detail::field<std::vector<int>>(o, "coords", "outputs");
        if (v.size() != 3) throw Error(ErrorKind::config, "outputs.coords needs 3 indices");
        s.coords = {v[0], v[1], v[2]};
      }
      c.outputs.push_back(std::move(s));
    }
  if (j.contains("params")) c.params = j.at("params");
  if (j.contains("seed")) c.seed = detail::field<std::uint64_t>(j, "seed", "config");
  if (j.contains("threads")) c.threads = detail::field<int>(j, "threads", "config");
  validate(c);
  return c;
}

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::io, "cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::config, path + ": " + e.what());
  }
}

/// {a, b, consts[], beta, m}. With a = 0, b = 1 and no constants (c = -i)
/// the lightlike family is built; "sign" selects the direction (1, +-1).
inline StationaryData data_from_json(const json& j) {
  if (!j.is_object()) throw Error(ErrorKind::config, "data must be a JSON object");
  const double a = j.contains("a") ? detail::field<double>(j, "a", "data") : 0.0;
  const double b = j.contains("b") ? detail::field<double>(j, "b", "data") : 1.0;
  const int m = j.contains("m") ? detail::field<int>(j, "m", "data") : 2;
  auto consts = j.contains("consts") ? detail::field<std::vector<double>>(j, "consts", "data") : std::vector<double>{};
  const auto beta_text = j.contains("beta") ? detail::field<std::string>(j, "beta", "data") : std::string("z");
  const HoloExpr beta = parse(beta_text);
  if (a == 0.0 && b == 1.0 && consts.empty() && m == 2) {
    const int sign = j.contains("sign") ? detail::field<int>(j, "sign", "data") : 1;
    if (sign != 1 && sign != -1) throw Error(ErrorKind::config, "data.sign must be 1 or -1");
    return make_lightlike(beta, sign);
  }
  return make_canonical(a, b, std::move(consts), beta, m);
}

inline json data_to_json(const StationaryData& d) {
  json j;
  j["a"] = d.a();
  j["b"] = d.b();
  j["consts"] = d.consts();
  j["beta"] = d.beta().source();
  j["m"] = d.m();
  if (d.lightlike()) j["sign"] = d.lightlike_sign();
  return j;
}

/// Graph whose components are the real parts of expressions in x1, x2;
/// gradients are taken symbolically.
inline GraphSurface graph_from_expressions(const std::vector<std::string>& components, double fd_step = 1e-5) {
  if (components.empty()) throw Error(ErrorKind::config, "graph needs at least one component");
  std::vector<ScalarField> fields;
  for (const auto& text : components) {
    const Expr e = Expr::parse(text, {"x1", "x2"});
    const Expr d1 = e.derive(0), d2 = e.derive(1);
    auto at = [](const Expr& ex, Point2 x) {
      const std::array<Complex, 2> v{Complex(x.x1), Complex(x.x2)};
      return ex.eval(v).real();
    };
    fields.push_back({[=](Point2 x) { return at(e, x); },
                      [=](Point2 x) { return std::array<double, 2>{at(d1, x), at(d2, x)}; }});
  }
  return GraphSurface::from_fields(std::move(fields), fd_step);
}

inline std::vector<std::string> graph_components(const json& data) {
  return detail::field<std::vector<std::string>>(data, "graph", "data");
}

inline bool is_graph_spec(const json& data) { return data.is_object() && data.contains("graph"); }

}  // namespace stationary::lab
