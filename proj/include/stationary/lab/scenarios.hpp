#pragma once

// Scenario catalog. Each scenario measures one claim about entire
// stationary graphs and records pass/fail checks in a Report.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <numbers>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "stationary/curvature.hpp"
#include "stationary/graph_geometry.hpp"
#include "stationary/lab/config.hpp"
#include "stationary/lab/export.hpp"
#include "stationary/lab/parallel.hpp"
#include "stationary/lab/report.hpp"
#include "stationary/lewy.hpp"
#include "stationary/representation.hpp"

namespace stationary::lab {

struct ScenarioResult {
  Report report;
  std::optional<StationaryData> data;  // surface used by csv/obj outputs
  std::optional<GraphSurface> graph;
};

namespace detail {

inline Grid grid_of(const ScenarioConfig& c, double L, int n) { return Grid::square(c.L.value_or(L), c.n.value_or(n)); }

inline json grid_json(const Grid& g) { return json{{"L", g.hi1}, {"n", g.n1}}; }

inline std::string lt(double t) { return "< " + format_double(t); }

/// max over the grid of |g_ij - delta_ij|.
inline double identity_deviation(const GraphSurface& f, const Grid& grid, int threads) {
  std::vector<double> dev(grid.size());
  parallel_for(grid.size(), threads, [&](std::size_t k) {
    const MetricSample g = metric_at(f, grid.at(k));
    dev[k] = std::max({std::abs(g.g11 - 1.0), std::abs(g.g12), std::abs(g.g22 - 1.0)});
  });
  return *std::max_element(dev.begin(), dev.end());
}

inline double max_residual(const GraphSurface& f, const Grid& grid, double h, int threads) {
  std::vector<double> res(grid.size());
  parallel_for(grid.size(), threads,
               [&](std::size_t k) { res[k] = max_abs(stationarity_residual(f, grid.at(k), h)); });
  return *std::max_element(res.begin(), res.end());
}

inline double max_w_deviation(const StationaryData& d, const Grid& grid, double target) {
  double dev = 0.0;
  for (std::size_t k = 0; k < grid.size(); ++k) dev = std::max(dev, std::abs(w_of(d, chart_z(d, grid.at(k))) - target));
  return dev;
}

inline double max_abs_k(const StationaryData& d, const Grid& grid, int threads) {
  std::vector<double> v(grid.size());
  parallel_for(grid.size(), threads, [&](std::size_t k) {
    const Point2 u = grid.at(k);
    const CurvatureSample s = curvatures(d, {u.x1, u.x2});
    v[k] = std::max(std::abs(s.K), std::abs(s.Kperp));
  });
  return *std::max_element(v.begin(), v.end());
}

inline StationaryData data_or(const ScenarioConfig& c, const json& fallback) {
  return data_from_json(c.data.is_null() ? fallback : c.data);
}

}  // namespace detail

/// Entire graph over R^2 with last component h(r), h' = sin(arctan r^3):
/// spacelike everywhere but with finite-length radial lines. The first
/// m - 1 components vanish.
inline GraphSurface incomplete_example_graph(int m = 2) {
  if (m < 1) throw Error(ErrorKind::precondition, "m must be at least 1");
  std::vector<ScalarField> fields;
  for (int k = 0; k + 1 < m; ++k)
    fields.push_back({[](Point2) { return 0.0; }, [](Point2) { return std::array<double, 2>{0.0, 0.0}; }});
  auto h = [](Point2 x) {
    const double r = std::hypot(x.x1, x.x2);
    return quad::integrate([](double t) { return t * t * t / std::sqrt(1.0 + std::pow(t, 6)); }, 0.0, r, 1e-13)
        .value;
  };
  auto grad = [](Point2 x) {
    const double r2 = x.x1 * x.x1 + x.x2 * x.x2;
    const double s = r2 / std::sqrt(1.0 + r2 * r2 * r2);
    return std::array<double, 2>{x.x1 * s, x.x2 * s};
  };
  fields.push_back({h, grad});
  return GraphSurface::from_fields(std::move(fields));
}

/// Bound on \int_T^\infty (1 + t^6)^{-1/2} dt from
/// (1 + s)^{-1/2} <= 1 - s/2 + 3 s^2/8, s = t^{-6}.
inline double sextic_tail_bound(double T) {
  return 1.0 / (2.0 * T * T) - 1.0 / (16.0 * std::pow(T, 8)) + 3.0 / (112.0 * std::pow(T, 14));
}

inline ScenarioResult scenario_flat_plane(const ScenarioConfig& c) {
  ScenarioResult out;
  Report& r = out.report;
  const StationaryData d = detail::data_or(c, json{{"a", 0.5}, {"b", 1.5}, {"consts", json::array()}, {"beta", "0.7"}, {"m", 2}});
  const Grid grid = detail::grid_of(c, 5.0, 21);
  const Classification cl = classify(d);
  r.add("classification", "constant beta gives an affine plane (case I)", to_string(cl.kind), "I",
        cl.kind == SurfaceCase::affine);
  const WStats ws = w_stats(d, grid);
  const double spread = ws.max - ws.min, tw = c.tol("w_spread", 1e-12);
  r.add("w_constant", "W is constant on an affine plane", json{{"min", ws.min}, {"max", ws.max}, {"spread", spread}},
        detail::lt(tw) + " relative", spread <= tw * ws.max);
  if (d.m() == 2) {
    const double k = detail::max_abs_k(d, grid, c.threads), tk = c.tol("curvature", 1e-10);
    r.add("flat", "affine planes are flat", k, detail::lt(tk), k < tk);
    const double tc = total_curvature(d, grid.hi1).value;
    r.add("total_curvature", "affine planes have zero total curvature", tc, "== 0", tc == 0.0);
  }
  const GraphSurface f = graph_surface(d);
  const double h = c.fd_step.value_or(1e-3), tr = c.tol("residual", 1e-8);
  const double res = detail::max_residual(f, Grid::square(1.0, 5), h, c.threads);
  r.add("stationarity", "the graph solves the stationarity system", res, detail::lt(tr), res < tr);
  r.environment = {{"grid", detail::grid_json(grid)}, {"fd_step", h}, {"data", data_to_json(d)}};
  out.data = d;
  return out;
}

inline ScenarioResult scenario_lightlike_graph(const ScenarioConfig& c) {
  ScenarioResult out;
  Report& r = out.report;
  const Grid grid = detail::grid_of(c, 3.0, 21);
  const auto y0 = c.param<std::vector<double>>("y0", {1.0, 1.0});
  if (y0.empty()) throw Error(ErrorKind::config, "params.y0 is empty");
  const MinkVector y(y0);
  const double yy = mink_inner(y, y);
  r.add("y0_lightlike", "the direction y0 is lightlike", yy, "== 0", yy == 0.0);

  std::vector<std::string> hs{c.param<std::string>("h", "x1^2 - x2^2")};
  std::mt19937_64 rng(c.seed);
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  const int extra = c.param<int>("random", 3);
  for (int i = 0; i < extra; ++i) {
    double k[7];
    for (double& v : k) v = coef(rng);
    char buf[256];
    std::snprintf(buf, sizeof buf,
                  "(%.3f+%.3f*i)*(x1+i*x2)^3 + (%.3f+%.3f*i)*(x1+i*x2)^2 + (%.3f+%.3f*i)*exp(%.3f*(x1+i*x2))", k[0],
                  k[1], k[2], k[3], k[4], k[5], 0.2 * k[6]);
    hs.emplace_back(buf);
  }
  const double h = c.fd_step.value_or(1e-3);
  const double tg = c.tol("metric", 1e-12), tr = c.tol("residual", 1e-8);
  json table = json::array();
  for (std::size_t i = 0; i < hs.size(); ++i) {
    std::vector<std::string> comps;
    for (double v : y0) comps.push_back(format_double(v) + "*(" + hs[i] + ")");
    const GraphSurface f = graph_from_expressions(comps);
    const double dev = detail::identity_deviation(f, grid, c.threads);
    double wdev = 0.0;
    for (std::size_t k = 0; k < grid.size(); ++k) wdev = std::max(wdev, std::abs(metric_at(f, grid.at(k)).W - 1.0));
    const double res = detail::max_residual(f, grid, h, c.threads);
    const std::string tag = "[" + std::to_string(i) + "]";
    r.add("metric_identity" + tag, "graphs in a lightlike direction are isometric to the plane", dev, detail::lt(tg),
          dev < tg);
    r.add("w_one" + tag, "W = 1 for lightlike-direction graphs", wdev, detail::lt(tg), wdev < tg);
    r.add("stationarity" + tag, "h y0 is stationary when h is harmonic", res, detail::lt(tr), res < tr);
    table.push_back({{"h", hs[i]}, {"metric_dev", dev}, {"residual", res}});
    if (i == 0) out.graph = f;
  }
  r.tables["functions"] = table;
  r.environment = {{"grid", detail::grid_json(grid)}, {"fd_step", h}, {"seed", c.seed}, {"y0", y0}};
  return out;
}

inline ScenarioResult scenario_incomplete_graph(const ScenarioConfig& c) {
  ScenarioResult out;
  Report& r = out.report;
  const int m = c.param<int>("m", 2);
  const double T = c.param<double>("T", 50.0);
  const double target = c.param<double>("length", 2.8042);
  const GraphSurface f = incomplete_example_graph(m);
  const Grid grid = detail::grid_of(c, 3.0, 21);

  double min_det = INFINITY;
  for (std::size_t k = 0; k < grid.size(); ++k) min_det = std::min(min_det, metric_at(f, grid.at(k)).det());
  const int line_samples = 2001;
  for (int i = 0; i < line_samples; ++i) {
    const double t = -T + 2.0 * T * i / (line_samples - 1);
    min_det = std::min(min_det, metric_at(f, {t, 0.0}).det());
  }
  r.add("spacelike", "the graph is spacelike everywhere", min_det, "> 0", min_det > 0.0);

  const PlanarPath gamma{[](double t) { return Point2{t, 0.0}; }, [](double) { return Point2{1.0, 0.0}; }};
  const ImproperLength len = curve_length_improper(f, gamma, T, sextic_tail_bound, c.tol("quadrature", 1e-8));
  const double tl = c.tol("length", 1e-3), tt = c.tol("tail", 2e-4);
  r.add("length", "the radial line has finite induced length", len.value,
        format_double(target) + " +- " + format_double(tl), std::abs(len.value - target) <= tl);
  r.add("tail_bound", "tail beyond T is analytically bounded", len.tail_bound, detail::lt(tt), len.tail_bound < tt);
  r.note("length_interval", "finite length over the whole line",
         json{{"lower", len.value}, {"upper", len.value + 2.0 * len.tail_bound}});
  r.note("euclidean_length", "projection to the base plane does not shorten curves here", 2.0 * T);
  r.environment = {{"grid", detail::grid_json(grid)}, {"T", T}, {"m", m}, {"line_samples", line_samples}};
  out.graph = f;
  return out;
}

inline ScenarioResult scenario_mww_audit(const ScenarioConfig& c) {
  ScenarioResult out;
  Report& r = out.report;
  const std::vector<std::string> comps =
      is_graph_spec(c.data)
          ? graph_components(c.data)
          : std::vector<std::string>{"2*sinh(x1)*cos(-0.70710678118654757*x2)", "2*cosh(x1)*cos(-0.70710678118654757*x2)"};
  const GraphSurface f = graph_from_expressions(comps);
  const Grid grid = detail::grid_of(c, 3.0, 61);
  const double h = c.fd_step.value_or(1e-3);
  std::size_t spacelike = 0, residual_points = 0;
  double strip = INFINITY, max_res = 0.0, wmin = INFINITY, wmax = 0.0, min_g22 = INFINITY;
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const Point2 x = grid.at(k);
    const MetricSample g = metric_at(f, x);
    min_g22 = std::min(min_g22, g.g22);
    if (!g.spacelike) {
      strip = std::min(strip, std::abs(x.x2));
      continue;
    }
    ++spacelike;
    wmin = std::min(wmin, g.W);
    wmax = std::max(wmax, g.W);
    try {
      max_res = std::max(max_res, max_abs(stationarity_residual(f, x, h)));
      ++residual_points;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::not_spacelike) throw;
    }
  }
  r.note("spacelike_fraction", "entire example with bounded W", static_cast<double>(spacelike) / grid.size());
  r.note("non_spacelike_min_abs_x2", "entire example with bounded W", strip);
  r.note("min_g22", "entire example with bounded W", min_g22);
  r.note("w_range_on_spacelike_samples", "entire example with bounded W", json{{"min", wmin}, {"max", wmax}});
  r.note("max_residual_on_spacelike_samples", "entire example with bounded W",
         json{{"value", max_res}, {"points", residual_points}});
  r.environment = {{"grid", detail::grid_json(grid)}, {"fd_step", h}, {"components", comps}};
  out.graph = f;
  return out;
}

inline ScenarioResult scenario_case_ii(const ScenarioConfig& c) {
  ScenarioResult out;
  Report& r = out.report;
  const StationaryData d = detail::data_or(c, json{{"a", 0.0}, {"b", 1.0}, {"beta", "z^2"}, {"m", 2}});
  const Grid grid = detail::grid_of(c, 5.0, 41);
  const Classification cl = classify(d);
  r.add("classification", "c = -i gives a graph in a lightlike direction (case II)", to_string(cl.kind), "II",
        cl.kind == SurfaceCase::lightlike);
  const double tw = c.tol("w", 1e-12), tk = c.tol("curvature", 1e-10);
  const double wdev = detail::max_w_deviation(d, grid, 1.0);
  r.add("w_one", "W = 1 in case II", wdev, detail::lt(tw), wdev < tw);
  double edev = 0.0;
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const Point2 u = grid.at(k);
    edev = std::max(edev, std::abs(conformal_factor(d, {u.x1, u.x2}) - 1.0));
  }
  r.add("conformal_factor_one", "the induced metric is |dz|^2 in case II", edev, detail::lt(tw), edev < tw);
  const GraphSurface f = graph_surface(d);
  const double gdev = detail::identity_deviation(f, grid, c.threads);
  r.add("metric_identity", "case II graphs are flat (g = identity)", gdev, detail::lt(tw), gdev < tw);
  if (d.m() == 2) {
    const double k = detail::max_abs_k(d, grid, c.threads);
    r.add("flat", "case II graphs are flat", k, detail::lt(tk), k < tk);
  }
  const double h = c.fd_step.value_or(1e-3), tr = c.tol("residual", 1e-6);
  const double res = detail::max_residual(f, Grid::square(1.0, 5), h, c.threads);
  r.add("stationarity", "the graph solves the stationarity system", res, detail::lt(tr), res < tr);
  r.environment = {{"grid", detail::grid_json(grid)}, {"fd_step", h}, {"data", data_to_json(d)}};
  out.data = d;
  return out;
}

inline ScenarioResult scenario_case_iii(const ScenarioConfig& c) {
  ScenarioResult out;
  Report& r = out.report;
  const StationaryData d = detail::data_or(c, json{{"a", 1.0}, {"b", 1.0}, {"beta", "z"}, {"m", 2}});
  const Grid grid = detail::grid_of(c, 20.0, 401);
  const Classification cl = classify(d);
  r.add("classification", "nonconstant beta with c != -i gives case III", to_string(cl.kind), "III",
        cl.kind == SurfaceCase::oscillating);
  const double S = d.sum_d2();
  const double prod = cl.r1 * cl.r2;
  r.add("closed_form_product", "r1 r2 = 1 + sum d^2 for the W range", json{{"r1", cl.r1}, {"r2", cl.r2}, {"product", prod}},
        "|r1 r2 - (1 + S)| < 1e-12", std::abs(prod - (1.0 + S)) < c.tol("product_exact", 1e-12));
  const WStats ws = w_stats(d, grid);
  const double emp = ws.min * ws.max, tp = c.tol("product", 1e-3);
  r.add("empirical_product", "inf W sup W over the plane equals r1 r2", json{{"min", ws.min}, {"max", ws.max}, {"product", emp}},
        "within " + format_double(tp) + " of 1 + S (relative)", std::abs(emp / (1.0 + S) - 1.0) <= tp);

  const double delta = c.param<double>("delta", 0.05);
  const int need = c.param<int>("min_crossings", 10);
  const int levels = c.param<int>("levels", 41);
  if (levels < 2) throw Error(ErrorKind::config, "params.levels must be at least 2");
  int fewest = -1;
  double worst_level = NAN;
  json table = json::array();
  if (cl.r2 - cl.r1 > 2.0 * delta) {
    for (int i = 0; i < levels; ++i) {
      const double level = cl.r1 + delta + (cl.r2 - cl.r1 - 2.0 * delta) * i / (levels - 1);
      const int n = count_crossings(ws.values, grid.n1, grid.n2, level);
      table.push_back({{"level", level}, {"crossings", n}});
      if (fewest < 0 || n < fewest) fewest = n, worst_level = level;
    }
  }
  r.add("attainment", "every value in (r1, r2) is attained infinitely often",
        json{{"fewest_crossings", fewest}, {"at_level", worst_level}, {"levels", levels}},
        ">= " + std::to_string(need) + " crossings per level", fewest >= need);
  r.tables["crossings"] = table;
  r.environment = {{"grid", detail::grid_json(grid)}, {"delta", delta}, {"data", data_to_json(d)}};
  out.data = d;
  return out;
}

inline ScenarioResult scenario_ber1(const ScenarioConfig& c) {
  ScenarioResult out;
  Report& r = out.report;
  std::vector<json> sets;
  if (!c.data.is_null()) {
    sets.push_back(c.data);
  } else {
    sets = {json{{"a", 0.5}, {"b", 1.5}, {"beta", "0.7"}},
            json{{"a", 0.0}, {"b", 1.0}, {"beta", "z^2"}},
            json{{"a", 1.0}, {"b", 1.0}, {"beta", "z"}},
            json{{"a", 0.0}, {"b", 2.0}, {"beta", "z^2"}},
            json{{"a", -0.5}, {"b", 0.7}, {"beta", "sinh(z)"}}};
  }
  const Grid grid = detail::grid_of(c, 10.0, 201);
  const double tau = c.tol("strict", 1e-9);
  for (std::size_t i = 0; i < sets.size(); ++i) {
    const StationaryData d = data_from_json(sets[i]);
    const WStats ws = w_stats(d, grid);
    const bool above = ws.max > 1.0 + tau, below = ws.min < 1.0 - tau;
    const bool case3 = classify(d).kind == SurfaceCase::oscillating;
    r.add("coexistence[" + std::to_string(i) + "]", "W > 1 and W < 1 both occur only in case III",
          json{{"case", to_string(classify(d).kind)}, {"min", ws.min}, {"max", ws.max}, {"beta", d.beta().source()}},
          "both sides iff case III", (above && below) == case3);
  }
  r.environment = {{"grid", detail::grid_json(grid)}, {"strict_margin", tau}};
  return out;
}

inline ScenarioResult scenario_ber3(const ScenarioConfig& c) {
  ScenarioResult out;
  Report& r = out.report;
  const double C = c.param<double>("C", 4.0), eps = c.param<double>("eps", 0.1);
  const int m = c.param<int>("m", 3);
  const StationaryData d = construct_ber3(C, eps, m);
  const Grid grid = detail::grid_of(c, 20.0, 401);
  const WStats ws = w_stats(d, grid);
  const double prod = ws.min * ws.max, spread = ws.max - ws.min, tp = c.tol("product", 1e-3);
  r.add("product", "inf W sup W = C", json{{"min", ws.min}, {"max", ws.max}, {"product", prod}},
        "within " + format_double(tp) + " of C (relative)", std::abs(prod / C - 1.0) <= tp);
  r.add("spread", "sup W - inf W < eps", spread, detail::lt(eps), spread < eps);
  r.add("nonconstant", "W is not constant", spread, "> 0", spread > 0.0);
  const Classification cl = classify(d);
  r.note("closed_form", "inf W sup W = C", json{{"r1", cl.r1}, {"r2", cl.r2}, {"product", cl.r1 * cl.r2}});
  r.environment = {{"grid", detail::grid_json(grid)}, {"C", C}, {"eps", eps}, {"data", data_to_json(d)}};
  out.data = d;
  return out;
}

inline ScenarioResult scenario_ftc_divergence(const ScenarioConfig& c) {
  ScenarioResult out;
  Report& r = out.report;
  const StationaryData d = detail::data_or(c, json{{"a", 0.0}, {"b", 2.0}, {"beta", "z"}, {"m", 2}});
  const auto Rs = c.param<std::vector<double>>("R", {2.0, 4.0, 8.0, 16.0, 32.0});
  if (Rs.size() < 2) throw Error(ErrorKind::config, "params.R needs at least two radii");
  TotalCurvatureOptions opt;
  opt.rel_tol = c.tol("quadrature", 1e-6);
  std::vector<double> totals(Rs.size()), normals(Rs.size());
  parallel_for(Rs.size(), c.threads, [&](std::size_t i) {
    totals[i] = total_curvature(d, Rs[i], opt).value;
    normals[i] = total_normal_curvature(d, Rs[i], opt).value;
  });
  json table = json::array();
  bool increasing = true;
  for (std::size_t i = 0; i < Rs.size(); ++i) {
    json row{{"R", Rs[i]}, {"total_curvature", totals[i]}, {"total_normal_curvature", normals[i]}};
    if (i > 0) {
      row["ratio"] = totals[i] / totals[i - 1];
      increasing = increasing && totals[i] > totals[i - 1];
    }
    table.push_back(std::move(row));
  }
  r.tables["growth"] = table;
  const double ratio = totals.back() / totals.front(), need = c.param<double>("min_ratio", 10.0);
  r.add("increasing", "finite total curvature forces flatness", totals, "strictly increasing", increasing);
  r.add("unbounded", "finite total curvature forces flatness", ratio, "> " + format_double(need), ratio > need);

  if (!d.lightlike() && d.gauss()) {
    const Complex z0 = 0.0;
    const double r0 = d.gauss()->r, v2 = d.beta().eval(z0).imag();
    const double w = std::abs(r0 * std::polar(1.0, -v2) + std::polar(1.0, v2) / r0);
    const double density4 = abs_k_density(d, z0);
    r.note("density_at_origin", "curvature density |K| e^{2w}",
           json{{"denominator_w4", density4}, {"denominator_w2", density4 * w * w}, {"K_e2w", curvatures(d, z0).density}});
  }

  if (c.param<bool>("controls", true)) {
    const double Rmax = Rs.back(), tf = c.tol("flat_total", 1e-8);
    const StationaryData flat1 = make_canonical(0.5, 1.5, {}, "0.7", 2);
    const StationaryData flat2 = make_lightlike(parse("z^2"), 1);
    const double t1 = total_curvature(flat1, Rmax, opt).value, t2 = total_curvature(flat2, Rmax, opt).value;
    r.add("case_i_flat", "case I surfaces are flat", t1, detail::lt(tf), t1 < tf);
    r.add("case_ii_flat", "case II surfaces are flat", t2, detail::lt(tf), t2 < tf);
  }
  r.environment = {{"R", Rs}, {"rel_tol", opt.rel_tol}, {"data", data_to_json(d)}};
  out.data = d;
  return out;
}

inline ScenarioResult scenario_lewy_conformal(const ScenarioConfig& c) {
  ScenarioResult out;
  Report& r = out.report;
  std::vector<json> sets;
  if (!c.data.is_null())
    sets.push_back(c.data);
  else
    sets = {json{{"a", 0.0}, {"b", 2.0}, {"beta", "z"}}, json{{"a", 1.0}, {"b", 1.0}, {"beta", "z"}},
            json{{"a", 0.5}, {"b", 1.5}, {"beta", "0.5*z^2"}, {"consts", {0.3}}, {"m", 3}}};
  const Grid grid = detail::grid_of(c, 1.0, 5);
  ConformalOptions co;
  co.fd_step = c.fd_step.value_or(1e-4);
  const double tc = c.tol("closedness", 1e-6), tdev = c.tol("conformal", 1e-4), tcr = c.tol("holomorphy", 1e-4);
  for (std::size_t i = 0; i < sets.size(); ++i) {
    const std::string tag = "[" + std::to_string(i) + "]";
    std::optional<StationaryData> d;
    const GraphSurface f = is_graph_spec(sets[i]) ? graph_from_expressions(graph_components(sets[i]))
                                                  : graph_surface(*(d = data_from_json(sets[i])));
    const ConformalReport rep = conformal_check(f, grid, co);
    r.add("closedness" + tag, "the stationarity 1-forms are closed", rep.max_closedness, detail::lt(tc),
          rep.max_closedness < tc);
    r.add("jl_eigenvalue" + tag, "the Lewy map is expanding", rep.min_jl_eigenvalue, "> 1",
          rep.min_jl_eigenvalue > 1.0);
    const double dev = std::max({rep.max_anisotropy, rep.max_shear, rep.max_factor_dev});
    r.add("conformal" + tag, "Lewy coordinates are isothermal with factor (1/l1 + 1/l2)^-2",
          json{{"anisotropy", rep.max_anisotropy}, {"shear", rep.max_shear}, {"factor", rep.max_factor_dev}},
          detail::lt(tdev), dev < tdev);
    const HolomorphyReport hol = beta_holomorphy_check(f, grid);
    r.add("holomorphy" + tag, "dx/dzeta is holomorphic in the Lewy chart",
          json{{"cr_residual", hol.max_cr_residual}, {"min_inverse_jacobian", hol.min_inverse_jacobian}},
          detail::lt(tcr) + " and jacobian > 0", hol.max_cr_residual < tcr && hol.inverse_jacobian_positive);
    if (d) {
      const double bound = hermitian_lower_bound(*d);
      const Complex cc = d->c();
      const double weak = (1.0 + std::norm(cc) - std::abs(1.0 + cc * cc + d->sum_d2())) / 2.0;
      double slack = INFINITY;
      for (std::size_t k = 0; k < grid.size(); ++k) {
        const Point2 u = grid.at(k);
        const double e2w = 2.0 * alpha_hermitian(alpha(*d, {u.x1, u.x2}));
        slack = std::min({slack, e2w - 2.0 * bound, e2w - weak});
      }
      r.add("metric_lower_bound" + tag, "2<alpha, conj alpha> is bounded below, so the metric is complete", slack,
            ">= 0", slack >= -1e-12);
    }
    if (i == 0) out.graph = f;
  }
  r.environment = {{"grid", detail::grid_json(grid)}, {"fd_step", co.fd_step}};
  return out;
}

struct ScenarioEntry {
  const char* name;
  const char* summary;
  ScenarioResult (*run)(const ScenarioConfig&);
};

inline const std::vector<ScenarioEntry>& catalog() {
  static const std::vector<ScenarioEntry> entries{
      {"flat-plane", "constant beta: affine plane, W constant, K = 0", scenario_flat_plane},
      {"lightlike-graph", "f = h y0 with y0 lightlike and h harmonic", scenario_lightlike_graph},
      {"incomplete-graph", "spacelike entire graph with a finite-length line", scenario_incomplete_graph},
      {"mww-audit", "audit of an entire example with bounded W (informational)", scenario_mww_audit},
      {"t1-case-ii", "c = -i: W = 1 and flat", scenario_case_ii},
      {"t1-case-iii", "W oscillates in [r1, r2] with r1 r2 = 1", scenario_case_iii},
      {"ber1-check", "W above and below 1 only in case III", scenario_ber1},
      {"ber3", "codimension >= 3 data with inf W sup W = C", scenario_ber3},
      {"ftc-divergence", "growth of total curvature with R", scenario_ftc_divergence},
      {"lewy-conformal", "Lewy coordinates are isothermal", scenario_lewy_conformal},
  };
  return entries;
}

inline const ScenarioEntry& find_scenario(const std::string& name) {
  for (const auto& e : catalog())
    if (name == e.name) return e;
  throw Error(ErrorKind::config, "unknown scenario: " + name);
}

inline void write_outputs(const ScenarioConfig& c, const ScenarioResult& res) {
  for (const auto& o : c.outputs) {
    std::ofstream os(o.path, std::ios::binary);
    if (!os) throw Error(ErrorKind::io, "cannot write " + o.path);
    if (o.kind == "json") {
      write_json(os, res.report.to_json());
    } else {
      const Grid grid = Grid::square(c.L.value_or(1.0), c.n.value_or(11));
      SampleSet s;
      if (res.data)
        s = sample_data(*res.data, grid, c.threads);
      else if (res.graph)
        s = sample_graph(*res.graph, grid, c.threads);
      else
        throw Error(ErrorKind::config, "scenario " + c.name + " has no surface to export");
      if (o.kind == "csv")
        write_csv(os, s);
      else
        write_obj(os, s, o.coords);
    }
    if (!os) throw Error(ErrorKind::io, "write failed: " + o.path);
  }
}

inline ScenarioResult run_scenario(const ScenarioConfig& c) {
  validate(c);
  const ScenarioEntry& e = find_scenario(c.name);
  ScenarioResult res = e.run(c);
  res.report.scenario = e.name;
  res.report.environment["threads"] = c.threads;
  write_outputs(c, res);
  return res;
}

}  // namespace stationary::lab
