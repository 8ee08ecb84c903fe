#pragma once

// Grid samplers and CSV / OBJ writers.

#include <cmath>
#include <ostream>
#include <string>
#include <vector>

#include "stationary/curvature.hpp"
#include "stationary/graph_geometry.hpp"
#include "stationary/lab/parallel.hpp"
#include "stationary/lab/report.hpp"
#include "stationary/representation.hpp"

namespace stationary::lab {

struct SampleRow {
  double u1 = 0.0, u2 = 0.0;
  std::vector<double> x;  // x1, x2, f1..fm
  double W = NAN, e2omega = NAN, K = NAN, Kperp = NAN;
};

struct SampleSet {
  int m = 0;
  int n1 = 0, n2 = 0;
  std::vector<SampleRow> rows;  // row-major, u1 fastest
};

/// Samples canonical data over a grid in the parameter plane z = u1 + i u2.
inline SampleSet sample_data(const StationaryData& d, const Grid& grid, int threads = 1) {
  SampleSet s{d.m(), grid.n1, grid.n2, std::vector<SampleRow>(grid.size())};
  parallel_for(grid.size(), threads, [&](std::size_t k) {
    const Point2 u = grid.at(k);
    const Complex z(u.x1, u.x2);
    SampleRow& r = s.rows[k];
    r.u1 = u.x1;
    r.u2 = u.x2;
    const MinkVector x = synthesize_point(d, z);
    r.x.assign(x.coords().begin(), x.coords().end());
    r.W = w_of(d, z);
    r.e2omega = conformal_factor(d, z);
    if (d.m() == 2) {
      try {
        const CurvatureSample cs = curvatures(d, z);
        r.K = cs.K;
        r.Kperp = cs.Kperp;
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::gauss_map_collision) throw;
      }
    }
  });
  return s;
}

/// Samples a graph over a grid in the base plane; u = x there and the
/// curvature columns are left undefined.
inline SampleSet sample_graph(const GraphSurface& f, const Grid& grid, int threads = 1) {
  SampleSet s{f.codim(), grid.n1, grid.n2, std::vector<SampleRow>(grid.size())};
  parallel_for(grid.size(), threads, [&](std::size_t k) {
    const Point2 x = grid.at(k);
    SampleRow& r = s.rows[k];
    r.u1 = x.x1;
    r.u2 = x.x2;
    r.x = {x.x1, x.x2};
    for (double v : f.value(x)) r.x.push_back(v);
    const MetricSample g = metric_at(f, x);
    if (g.spacelike) r.W = g.W;
  });
  return s;
}

inline void write_csv(std::ostream& os, const SampleSet& s) {
  os << "u1,u2,x1,x2";
  for (int k = 1; k <= s.m; ++k) os << ",f" << k;
  os << ",W,e2omega,K,Kperp\n";
  for (const auto& r : s.rows) {
    os << format_double(r.u1) << ',' << format_double(r.u2);
    for (double v : r.x) os << ',' << format_double(v);
    os << ',' << format_double(r.W) << ',' << format_double(r.e2omega) << ',' << format_double(r.K) << ','
       << format_double(r.Kperp) << '\n';
  }
}

/// Triangulated grid using three of the coordinates (x1, x2, f1..fm).
/// Each cell (v00, v10, v11, v01) becomes (v00, v10, v11) and (v00, v11, v01),
/// counterclockwise in (u1, u2).
inline void write_obj(std::ostream& os, const SampleSet& s, std::array<int, 3> coords) {
  const int dim = s.m + 2;
  for (int c : coords)
    if (c < 0 || c >= dim)
      throw Error(ErrorKind::config, "coordinate index " + std::to_string(c) + " outside [0, " +
                                         std::to_string(dim) + ")");
  for (const auto& r : s.rows)
    os << "v " << format_double(r.x[coords[0]]) << ' ' << format_double(r.x[coords[1]]) << ' '
       << format_double(r.x[coords[2]]) << '\n';
  auto id = [&](int i, int j) { return static_cast<long long>(j) * s.n1 + i + 1; };
  for (int j = 0; j + 1 < s.n2; ++j)
    for (int i = 0; i + 1 < s.n1; ++i) {
      os << "f " << id(i, j) << ' ' << id(i + 1, j) << ' ' << id(i + 1, j + 1) << '\n';
      os << "f " << id(i, j) << ' ' << id(i + 1, j + 1) << ' ' << id(i, j + 1) << '\n';
    }
}

}  // namespace stationary::lab
