// stationary-lab: scenario runner and exporters for entire stationary graphs.
//
// Exit status: 0 all checks pass, 1 a check failed, 2 usage or config error,
// 3 numeric failure.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "stationary/curvature.hpp"
#include "stationary/lab/config.hpp"
#include "stationary/lab/export.hpp"
#include "stationary/lab/report.hpp"
#include "stationary/lab/scenarios.hpp"
#include "stationary/representation.hpp"

namespace {

using namespace stationary;
using namespace stationary::lab;

enum Exit { ok = 0, check_failed = 1, usage = 2, numeric = 3 };

struct DataFlags {
  std::string config;
  std::optional<double> a, b;
  std::optional<std::string> beta;
  std::optional<std::string> consts;
  std::optional<int> m, sign;
  std::vector<std::string> graph;
  std::optional<double> L;
  std::optional<int> n;
  std::optional<double> fd_step;

  void attach(CLI::App* app) {
    app->add_option("--config", config, "JSON config file");
    app->add_option("--a", a, "chart coefficient a");
    app->add_option("--b", b, "chart coefficient b > 0");
    app->add_option("--beta", beta, "holomorphic beta(z)");
    app->add_option("--consts", consts, "comma-separated constants d_k");
    app->add_option("--m", m, "codimension");
    app->add_option("--sign", sign, "lightlike direction sign for c = -i");
    app->add_option("--graph", graph, "graph component in x1, x2 (repeatable)");
    app->add_option("--L", L, "grid half-width");
    app->add_option("--n", n, "grid points per side");
    app->add_option("--fd-step", fd_step, "finite-difference step");
  }

  ScenarioConfig resolve(std::uint64_t seed, int threads) const {
    ScenarioConfig c = config.empty() ? ScenarioConfig{} : parse_config(read_json_file(config));
    if (!graph.empty()) {
      c.data = json{{"graph", graph}};
    } else if (a || b || beta || consts || m || sign) {
      json d = c.data.is_object() && !is_graph_spec(c.data) ? c.data : json::object();
      if (a) d["a"] = *a;
      if (b) d["b"] = *b;
      if (beta) d["beta"] = *beta;
      if (m) d["m"] = *m;
      if (sign) d["sign"] = *sign;
      if (consts) {
        std::vector<double> v;
        std::stringstream ss(*consts);
        for (std::string item; std::getline(ss, item, ',');) {
          try {
            v.push_back(std::stod(item));
          } catch (const std::exception&) {
            throw Error(ErrorKind::config, "--consts: not a number: " + item);
          }
        }
        d["consts"] = v;
      }
      c.data = d;
    }
    if (L) c.L = L;
    if (n) c.n = n;
    if (fd_step) c.fd_step = fd_step;
    c.seed = seed;
    c.threads = threads;
    validate(c);
    return c;
  }
};

StationaryData require_data(const ScenarioConfig& c) {
  if (c.data.is_null()) throw Error(ErrorKind::config, "no surface data: use --config or --a/--b/--beta");
  if (is_graph_spec(c.data)) throw Error(ErrorKind::config, "this command needs canonical data, not a graph");
  return data_from_json(c.data);
}

void print(const json& j) { write_json(std::cout, j); }

json classification_json(const StationaryData& d) {
  const Classification cl = classify(d);
  json j{{"case", to_string(cl.kind)}, {"trichotomy", cl.trichotomy}};
  if (cl.kind == SurfaceCase::oscillating) {
    j["r1"] = cl.r1;
    j["r2"] = cl.r2;
    j["r1r2"] = cl.r1 * cl.r2;
  } else {
    j["w"] = cl.w_constant;
  }
  if (cl.y0) j["y0"] = std::vector<double>(cl.y0->coords().begin(), cl.y0->coords().end());
  j["data"] = data_to_json(d);
  return j;
}

int run(int argc, char** argv) {
  CLI::App app{"Entire stationary graphs in Lorentz-Minkowski space: scenarios, checks and exports"};
  app.require_subcommand(1);
  std::uint64_t seed = 1;
  int threads = 1;
  app.add_option("--seed", seed, "seed for randomized sample sets")->capture_default_str();
  app.add_option("--threads", threads, "worker threads")->capture_default_str()->check(CLI::PositiveNumber);

  std::string scenario_name;
  std::string out_path;
  DataFlags sflags;
  auto* scenario = app.add_subcommand("scenario", "run one catalog scenario and print its report");
  scenario->add_option("name", scenario_name, "scenario name")->required();
  scenario->add_option("--out", out_path, "also write the report to this file");
  sflags.attach(scenario);

  app.add_subcommand("list", "list catalog scenarios");

  DataFlags cflags;
  auto* classify_cmd = app.add_subcommand("classify", "classify data into cases I, II, III");
  cflags.attach(classify_cmd);

  DataFlags wflags;
  auto* wstats = app.add_subcommand("w-stats", "W statistics over a base-plane grid");
  wflags.attach(wstats);

  auto* verify = app.add_subcommand("verify", "run every catalog scenario with default settings");

  DataFlags kflags;
  double u1 = 0.0, u2 = 0.0, fd_h = 1e-3;
  auto* curvature = app.add_subcommand("curvature", "K, K_perp and e^{2w} at z = u1 + i u2");
  kflags.attach(curvature);
  curvature->add_option("--u1", u1, "real part of z");
  curvature->add_option("--u2", u2, "imaginary part of z");
  curvature->add_option("--oracle-step", fd_h, "finite-difference oracle step")->capture_default_str();

  DataFlags tflags;
  std::vector<double> radii{2, 4, 8, 16, 32};
  double rel_tol = 1e-6;
  auto* total = app.add_subcommand("total-curvature", "integral of |K| dA over [-R, R]^2 in the parameter plane");
  tflags.attach(total);
  total->add_option("--R", radii, "comma-separated radii")->delimiter(',')->capture_default_str();
  total->add_option("--rel-tol", rel_tol, "relative tolerance")->capture_default_str();

  DataFlags eflags;
  std::string kind = "csv", export_path;
  std::vector<int> coords{0, 1, 2};
  auto* exp = app.add_subcommand("export", "sample a surface on a grid and write CSV or OBJ");
  eflags.attach(exp);
  exp->add_option("--kind", kind, "csv or obj")->check(CLI::IsMember({"csv", "obj"}))->capture_default_str();
  exp->add_option("--out", export_path, "output path")->required();
  exp->add_option("--coords", coords, "three coordinate indices for OBJ")->expected(3)->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? ok : usage;
  }

  if (app.got_subcommand("list")) {
    for (const auto& e : catalog()) std::cout << e.name << "  " << e.summary << '\n';
    return ok;
  }

  if (*scenario) {
    ScenarioConfig c = sflags.resolve(seed, threads);
    c.name = scenario_name;
    const ScenarioResult res = run_scenario(c);
    const json j = res.report.to_json();
    print(j);
    if (!out_path.empty()) {
      std::ofstream os(out_path, std::ios::binary);
      if (!os) throw Error(ErrorKind::io, "cannot write " + out_path);
      write_json(os, j);
    }
    return res.report.passed() ? ok : check_failed;
  }

  if (*verify) {
    bool all = true;
    for (const auto& e : catalog()) {
      ScenarioConfig c;
      c.name = e.name;
      c.seed = seed;
      c.threads = threads;
      const ScenarioResult res = run_scenario(c);
      int failed = 0;
      for (const auto& ch : res.report.checks) failed += !ch.pass && !ch.informational;
      std::cout << (res.report.passed() ? "PASS " : "FAIL ") << e.name << "  (" << res.report.checks.size()
                << " checks, " << failed << " failed)\n";
      all = all && res.report.passed();
    }
    return all ? ok : check_failed;
  }

  if (*classify_cmd) {
    print(classification_json(require_data(cflags.resolve(seed, threads))));
    return ok;
  }

  if (*wstats) {
    const ScenarioConfig c = wflags.resolve(seed, threads);
    const StationaryData d = require_data(c);
    const Grid grid = Grid::square(c.L.value_or(20.0), c.n.value_or(401));
    const WStats ws = w_stats(d, grid);
    print(json{{"min", ws.min},
               {"max", ws.max},
               {"product", ws.min * ws.max},
               {"spread", ws.max - ws.min},
               {"argmin", {ws.argmin.x1, ws.argmin.x2}},
               {"argmax", {ws.argmax.x1, ws.argmax.x2}},
               {"grid", {{"L", grid.hi1}, {"n", grid.n1}}},
               {"classification", classification_json(d)}});
    return ok;
  }

  if (*curvature) {
    const StationaryData d = require_data(kflags.resolve(seed, threads));
    const Complex z(u1, u2);
    const CurvatureSample s = curvatures(d, z);
    json j{{"z", {u1, u2}}, {"e2omega", s.e2omega}, {"K", s.K}, {"Kperp", s.Kperp}, {"abs_K_e2omega", s.density}};
    if (s.flat_by_classification) j["flat_by_classification"] = true;
    if (!d.lightlike()) {
      const auto [k, kp] = curvature_fd_oracle(d, z, fd_h);
      j["oracle"] = {{"K", k}, {"Kperp", kp}, {"step", fd_h}};
      j["density_closed_form"] = abs_k_density(d, z);
    }
    print(j);
    return ok;
  }

  if (*total) {
    const ScenarioConfig c = tflags.resolve(seed, threads);
    const StationaryData d = require_data(c);
    TotalCurvatureOptions opt;
    opt.rel_tol = rel_tol;
    std::vector<TotalCurvature> v(radii.size());
    parallel_for(radii.size(), threads, [&](std::size_t i) { v[i] = total_curvature(d, radii[i], opt); });
    json rows = json::array();
    for (std::size_t i = 0; i < radii.size(); ++i)
      rows.push_back({{"R", radii[i]}, {"total_curvature", v[i].value}, {"evaluations", v[i].evaluations}});
    print(json{{"rel_tol", rel_tol}, {"rows", rows}, {"data", data_to_json(d)}});
    return ok;
  }

  if (*exp) {
    const ScenarioConfig c = eflags.resolve(seed, threads);
    const Grid grid = Grid::square(c.L.value_or(1.0), c.n.value_or(11));
    SampleSet s;
    if (is_graph_spec(c.data))
      s = sample_graph(graph_from_expressions(graph_components(c.data)), grid, threads);
    else
      s = sample_data(require_data(c), grid, threads);
    std::ofstream os(export_path, std::ios::binary);
    if (!os) throw Error(ErrorKind::io, "cannot write " + export_path);
    if (kind == "csv")
      write_csv(os, s);
    else
      write_obj(os, s, {coords[0], coords[1], coords[2]});
    if (!os) throw Error(ErrorKind::io, "write failed: " + export_path);
    return ok;
  }
  return usage;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const stationary::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.is_numeric() ? numeric : usage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return numeric;
  }
}
