#pragma once

// Entire graphs f: R^2 -> R_1^m, their induced metric, the W-function, the
// divergence-form stationarity system and curve lengths.

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "stationary/error.hpp"
#include "stationary/mink.hpp"
#include "stationary/quadrature.hpp"

namespace stationary {

struct Point2 {
  double x1 = 0.0;
  double x2 = 0.0;
};

/// p = df/dx1 and q = df/dx2, both in R_1^m.
struct Tangents {
  MinkVector p;
  MinkVector q;
};

/// A scalar component of f. Without a gradient it is differentiated by
/// central differences.
struct ScalarField {
  std::function<double(Point2)> value;
  std::function<std::array<double, 2>(Point2)> gradient;
};

class GraphSurface {
 public:
  using ValueFn = std::function<std::vector<double>(Point2)>;
  /// Tangent evaluator; the step is used only by components that fall back
  /// to finite differences.
  using TangentFn = std::function<Tangents(Point2, double)>;

  GraphSurface(int m, ValueFn value, TangentFn tangents = {}, double fd_step = 1e-5)
      : m_(m), value_(std::move(value)), tangents_(std::move(tangents)), fd_step_(fd_step) {
    if (m_ < 1) throw Error(ErrorKind::precondition, "graph codimension must be at least 1");
    if (!value_) throw Error(ErrorKind::precondition, "graph needs a value function");
    if (!(fd_step_ > 0.0)) throw Error(ErrorKind::precondition, "finite-difference step must be positive");
    analytic_ = static_cast<bool>(tangents_);
    if (!tangents_) {
      tangents_ = [v = value_, m](Point2 x, double h) {
        const auto a = v({x.x1 + h, x.x2}), b = v({x.x1 - h, x.x2});
        const auto c = v({x.x1, x.x2 + h}), d = v({x.x1, x.x2 - h});
        std::vector<double> p(m), q(m);
        for (int k = 0; k < m; ++k) {
          p[k] = (a[k] - b[k]) / (2.0 * h);
          q[k] = (c[k] - d[k]) / (2.0 * h);
        }
        return Tangents{MinkVector(std::move(p)), MinkVector(std::move(q))};
      };
    }
  }

  static GraphSurface from_fields(std::vector<ScalarField> fields, double fd_step = 1e-5) {
    const int m = static_cast<int>(fields.size());
    auto shared = std::make_shared<const std::vector<ScalarField>>(std::move(fields));
    auto value = [shared](Point2 x) {
      std::vector<double> out;
      out.reserve(shared->size());
      for (const auto& f : *shared) out.push_back(f.value(x));
      return out;
    };
    auto tangents = [shared](Point2 x, double h) {
      std::vector<double> p, q;
      for (const auto& f : *shared) {
        if (f.gradient) {
          const auto g = f.gradient(x);
          p.push_back(g[0]);
          q.push_back(g[1]);
        } else {
          p.push_back((f.value({x.x1 + h, x.x2}) - f.value({x.x1 - h, x.x2})) / (2.0 * h));
          q.push_back((f.value({x.x1, x.x2 + h}) - f.value({x.x1, x.x2 - h})) / (2.0 * h));
        }
      }
      return Tangents{MinkVector(std::move(p)), MinkVector(std::move(q))};
    };
    return GraphSurface(m, value, tangents, fd_step);
  }

  int codim() const noexcept { return m_; }
  double fd_step() const noexcept { return fd_step_; }
  bool has_analytic_tangents() const noexcept { return analytic_; }

  std::vector<double> value(Point2 x) const {
    auto v = value_(x);
    if (static_cast<int>(v.size()) != m_) throw Error(ErrorKind::dimension, "graph component count");
    for (double c : v)
      if (!std::isfinite(c)) throw Error(ErrorKind::evaluation, "non-finite graph value");
    return v;
  }

  Tangents tangents(Point2 x, double step) const {
    Tangents t = tangents_(x, step);
    if (static_cast<int>(t.p.size()) != m_ || static_cast<int>(t.q.size()) != m_)
      throw Error(ErrorKind::dimension, "tangent component count");
    for (int k = 0; k < m_; ++k)
      if (!std::isfinite(t.p[k]) || !std::isfinite(t.q[k]))
        throw Error(ErrorKind::evaluation, "non-finite derivative");
    return t;
  }

 private:
  int m_;
  ValueFn value_;
  TangentFn tangents_;
  double fd_step_;
  bool analytic_ = false;
};

inline Tangents jacobian(const GraphSurface& f, Point2 x) { return f.tangents(x, f.fd_step()); }

using Mat2 = std::array<std::array<double, 2>, 2>;

struct MetricSample {
  double g11 = 1.0, g12 = 0.0, g22 = 1.0;
  double W = 0.0;  // sqrt(det g), only when spacelike
  Mat2 ginv{};     // only when spacelike
  bool spacelike = false;

  double det() const { return g11 * g22 - g12 * g12; }
};

inline MetricSample metric_from_components(double g11, double g12, double g22) {
  MetricSample s;
  s.g11 = g11;
  s.g12 = g12;
  s.g22 = g22;
  const double det = s.det();
  s.spacelike = g11 > 0.0 && det > 0.0;
  if (s.spacelike) {
    s.W = std::sqrt(det);
    s.ginv = {{{g22 / det, -g12 / det}, {-g12 / det, g11 / det}}};
  }
  return s;
}

inline MetricSample metric_from_tangents(const Tangents& t) {
  return metric_from_components(1.0 + mink_inner(t.p, t.p), mink_inner(t.p, t.q), 1.0 + mink_inner(t.q, t.q));
}

inline MetricSample metric_at(const GraphSurface& f, Point2 x) { return metric_from_tangents(jacobian(f, x)); }

/// 1e-3 * (1 + |x|).
inline double default_fd_step(Point2 x) { return 1e-3 * (1.0 + std::hypot(x.x1, x.x2)); }

/// Residual of
///   sum_i d_i(W g^{ij}) = 0                 (j = 1, 2)
///   sum_{i,j} d_i(W g^{ij} d_j f_a) = 0     (a = 1..m)
/// by central differences of step h; inner derivatives are analytic when the
/// surface supplies them, otherwise central differences of the same step.
inline std::vector<double> stationarity_residual(const GraphSurface& f, Point2 x, double h) {
  if (!(h > 0.0)) throw Error(ErrorKind::precondition, "step must be positive");
  const int m = f.codim();

  struct Flux {
    Mat2 a;                                   // W g^{ij}
    std::vector<std::array<double, 2>> comp;  // sum_j W g^{ij} d_j f_a
  };
  auto flux = [&](Point2 y) {
    const Tangents t = f.tangents(y, h);
    const MetricSample g = metric_from_tangents(t);
    if (!g.spacelike)
      throw Error(ErrorKind::not_spacelike,
                  "stencil point (" + std::to_string(y.x1) + ", " + std::to_string(y.x2) + ")");
    Flux out;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) out.a[i][j] = g.W * g.ginv[i][j];
    out.comp.resize(m);
    for (int k = 0; k < m; ++k) {
      const double d1 = t.p[k], d2 = t.q[k];
      out.comp[k] = {out.a[0][0] * d1 + out.a[0][1] * d2, out.a[1][0] * d1 + out.a[1][1] * d2};
    }
    return out;
  };

  if (!metric_from_tangents(f.tangents(x, h)).spacelike) throw Error(ErrorKind::not_spacelike, "center point");
  const Flux e1p = flux({x.x1 + h, x.x2}), e1m = flux({x.x1 - h, x.x2});
  const Flux e2p = flux({x.x1, x.x2 + h}), e2m = flux({x.x1, x.x2 - h});
  const double inv = 1.0 / (2.0 * h);

  std::vector<double> r(2 + m);
  for (int j = 0; j < 2; ++j) r[j] = (e1p.a[0][j] - e1m.a[0][j]) * inv + (e2p.a[1][j] - e2m.a[1][j]) * inv;
  for (int k = 0; k < m; ++k)
    r[2 + k] = (e1p.comp[k][0] - e1m.comp[k][0]) * inv + (e2p.comp[k][1] - e2m.comp[k][1]) * inv;
  return r;
}

inline double max_abs(const std::vector<double>& v) {
  double s = 0.0;
  for (double c : v) s = std::max(s, std::abs(c));
  return s;
}

/// A C^1 parametrized curve t -> (x1(t), x2(t)) in the base plane.
struct PlanarPath {
  std::function<Point2(double)> position;
  std::function<Point2(double)> velocity;

  static PlanarPath segment(Point2 a, Point2 b) {
    return {[=](double t) { return Point2{a.x1 + t * (b.x1 - a.x1), a.x2 + t * (b.x2 - a.x2)}; },
            [=](double) { return Point2{b.x1 - a.x1, b.x2 - a.x2}; }};
  }
};

/// Induced length of the lifted curve, integral of sqrt(g_ij x'_i x'_j).
inline double curve_length(const GraphSurface& f, const PlanarPath& path, double t0, double t1, double tol = 1e-10) {
  auto speed = [&](double t) {
    const Point2 x = path.position(t);
    const Point2 v = path.velocity(t);
    const MetricSample g = metric_at(f, x);
    if (!g.spacelike) throw Error(ErrorKind::not_spacelike, "along path at t=" + std::to_string(t));
    const double q = g.g11 * v.x1 * v.x1 + 2.0 * g.g12 * v.x1 * v.x2 + g.g22 * v.x2 * v.x2;
    return std::sqrt(std::max(q, 0.0));
  };
  return quad::integrate(speed, t0, t1, tol).value;
}

struct ImproperLength {
  double value = 0.0;       // length over [-T, T]
  double T = 0.0;
  double tail_bound = 0.0;  // analytic bound on the length beyond T, one side
};

/// Length over the whole real line, reported as the value on [-T, T] plus a
/// caller-supplied analytic bound for one tail beyond T.
inline ImproperLength curve_length_improper(const GraphSurface& f, const PlanarPath& path, double T,
                                            const std::function<double(double)>& tail_bound,
                                            double tol = 1e-10) {
  if (!(T > 0.0)) throw Error(ErrorKind::precondition, "T must be positive");
  return {curve_length(f, path, -T, T, tol), T, tail_bound ? tail_bound(T) : INFINITY};
}

/// Uniform tensor grid over a rectangle, row-major with x1 varying fastest.
struct Grid {
  double lo1 = -1.0, hi1 = 1.0, lo2 = -1.0, hi2 = 1.0;
  int n1 = 5, n2 = 5;

  static Grid square(double L, int n) { return {-L, L, -L, L, n, n}; }

  std::size_t size() const { return static_cast<std::size_t>(n1) * static_cast<std::size_t>(n2); }
  Point2 at(int i, int j) const {
    const double t1 = n1 > 1 ? static_cast<double>(i) / (n1 - 1) : 0.5;
    const double t2 = n2 > 1 ? static_cast<double>(j) / (n2 - 1) : 0.5;
    return {lo1 + t1 * (hi1 - lo1), lo2 + t2 * (hi2 - lo2)};
  }
  Point2 at(std::size_t k) const { return at(static_cast<int>(k % n1), static_cast<int>(k / n1)); }
};

}  // namespace stationary
