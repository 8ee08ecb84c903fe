#pragma once

// Lewy transformation of a stationary graph and checks that its image
// coordinates (eta1, eta2) are isothermal.

#include <algorithm>
#include <cmath>
#include <complex>
#include <optional>
#include <string>

#include "stationary/error.hpp"
#include "stationary/graph_geometry.hpp"
#include "stationary/quadrature.hpp"

namespace stationary {

/// Closedness defect of the potential 1-forms
///   w1 = (g11/W) dx1 + (g12/W) dx2,   w2 = (g12/W) dx1 + (g22/W) dx2
/// at x by central differences of step h. These are exactly the harmonicity
/// equations of the base coordinates, so the defect is O(h^2) on stationary
/// graphs.
inline double closedness_residual(const GraphSurface& f, Point2 x, double h = 1e-4) {
  auto forms = [&](Point2 y) {
    const MetricSample g = metric_at(f, y);
    if (!g.spacelike) throw Error(ErrorKind::not_spacelike, "closedness stencil");
    return std::array<double, 3>{g.g11 / g.W, g.g12 / g.W, g.g22 / g.W};
  };
  const auto e1p = forms({x.x1 + h, x.x2}), e1m = forms({x.x1 - h, x.x2});
  const auto e2p = forms({x.x1, x.x2 + h}), e2m = forms({x.x1, x.x2 - h});
  const double inv = 1.0 / (2.0 * h);
  const double w1 = (e2p[0] - e2m[0]) * inv - (e1p[1] - e1m[1]) * inv;
  const double w2 = (e2p[1] - e2m[1]) * inv - (e1p[2] - e1m[2]) * inv;
  return std::max(std::abs(w1), std::abs(w2));
}

enum class LPath { horizontal_first, vertical_first };

struct XiResult {
  double xi1 = 0.0;
  double xi2 = 0.0;
  double closedness = 0.0;
  std::optional<std::string> warning;
};

struct XiOptions {
  double tol = 1e-12;
  LPath path = LPath::horizontal_first;
  double closedness_step = 1e-4;
  double closedness_threshold = 1e-6;
};

/// Potentials xi with d(xi_i) = w_i, normalized to vanish at `base`, by line
/// integration along an axis-parallel L-shaped path.
inline XiResult xi_potentials(const GraphSurface& f, Point2 x, Point2 base, const XiOptions& opt = {}) {
  // Both forms packed into one complex value so one adaptive run serves both.
  auto row = [&](Point2 y, int dir) {
    const MetricSample g = metric_at(f, y);
    if (!g.spacelike)
      throw Error(ErrorKind::not_spacelike,
                  "on potential path at (" + std::to_string(y.x1) + ", " + std::to_string(y.x2) + ")");
    return dir == 1 ? Complex(g.g11 / g.W, g.g12 / g.W) : Complex(g.g12 / g.W, g.g22 / g.W);
  };
  auto along_x1 = [&](double x2, double from, double to) {
    return quad::integrate([&](double t) { return row({t, x2}, 1); }, from, to, opt.tol).value;
  };
  auto along_x2 = [&](double x1, double from, double to) {
    return quad::integrate([&](double t) { return row({x1, t}, 2); }, from, to, opt.tol).value;
  };

  Complex xi;
  if (opt.path == LPath::horizontal_first)
    xi = along_x1(base.x2, base.x1, x.x1) + along_x2(x.x1, base.x2, x.x2);
  else
    xi = along_x2(base.x1, base.x2, x.x2) + along_x1(x.x2, base.x1, x.x1);

  XiResult out{xi.real(), xi.imag(), closedness_residual(f, x, opt.closedness_step), std::nullopt};
  if (out.closedness > opt.closedness_threshold)
    out.warning = "potential forms not closed at this point (defect " + std::to_string(out.closedness) + ")";
  return out;
}

inline Point2 lewy_map(const GraphSurface& f, Point2 x, Point2 base = {}, const XiOptions& opt = {}) {
  const XiResult xi = xi_potentials(f, x, base, opt);
  return {x.x1 + xi.xi1, x.x2 + xi.xi2};
}

struct LewyJacobian {
  Mat2 JL{};                        // I + g / W
  double lambda1 = 1.0, lambda2 = 1.0;  // sqrt of eigenvalues of g, lambda1 >= lambda2
  double eig_min = 2.0, eig_max = 2.0;  // eigenvalues of JL
  double conformal = 0.25;          // (1/lambda1 + 1/lambda2)^(-2)

  double det() const { return JL[0][0] * JL[1][1] - JL[0][1] * JL[1][0]; }
};

/// Eigenvalues (larger first) of a symmetric 2x2 matrix.
inline std::array<double, 2> symmetric_eigenvalues(double a11, double a12, double a22) {
  const double mean = 0.5 * (a11 + a22);
  const double rad = std::hypot(0.5 * (a11 - a22), a12);
  return {mean + rad, mean - rad};
}

inline LewyJacobian lewy_jacobian(const MetricSample& g) {
  if (!g.spacelike) throw Error(ErrorKind::not_spacelike, "Lewy Jacobian needs a spacelike sample");
  LewyJacobian out;
  out.JL = {{{1.0 + g.g11 / g.W, g.g12 / g.W}, {g.g12 / g.W, 1.0 + g.g22 / g.W}}};
  const auto ev = symmetric_eigenvalues(g.g11, g.g12, g.g22);
  out.lambda1 = std::sqrt(ev[0]);
  // det g / largest eigenvalue avoids cancellation in the smaller one.
  out.lambda2 = std::sqrt(g.det() / ev[0]);
  out.eig_max = 1.0 + out.lambda1 / out.lambda2;
  out.eig_min = 1.0 + out.lambda2 / out.lambda1;
  const double s = 1.0 / out.lambda1 + 1.0 / out.lambda2;
  out.conformal = 1.0 / (s * s);
  return out;
}

inline LewyJacobian lewy_jacobian(const GraphSurface& f, Point2 x) { return lewy_jacobian(metric_at(f, x)); }

struct LewySample {
  double xi1 = 0.0, xi2 = 0.0;
  double eta1 = 0.0, eta2 = 0.0;
  Mat2 JL{};
  double lambda1 = 1.0, lambda2 = 1.0;
  double conf = 0.25;
};

inline LewySample lewy_sample(const GraphSurface& f, Point2 x, Point2 base = {}, const XiOptions& opt = {}) {
  const XiResult xi = xi_potentials(f, x, base, opt);
  const LewyJacobian j = lewy_jacobian(f, x);
  return {xi.xi1, xi.xi2, x.x1 + xi.xi1, x.x2 + xi.xi2, j.JL, j.lambda1, j.lambda2, j.conformal};
}

inline Mat2 inverse(const Mat2& m) {
  const double det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
  if (det == 0.0) throw Error(ErrorKind::evaluation, "singular 2x2 matrix");
  return {{{m[1][1] / det, -m[0][1] / det}, {-m[1][0] / det, m[0][0] / det}}};
}

struct ConformalReport {
  double max_anisotropy = 0.0;  // |G11 - G22| / G11
  double max_shear = 0.0;       // |G12| / G11
  double max_factor_dev = 0.0;  // |G11 - (1/l1 + 1/l2)^(-2)| / G11
  double max_closedness = 0.0;
  double min_jl_eigenvalue = INFINITY;
  std::size_t points = 0;
};

struct ConformalOptions {
  Point2 base{};
  double tol = 1e-12;
  double fd_step = 1e-4;
  double closedness_step = 1e-4;
};

/// Pulls the graph metric back to the Lewy chart: with D the (finite
/// difference) Jacobian of L, G = D^{-T} g D^{-1} must be a multiple of the
/// identity with factor (1/l1 + 1/l2)^(-2).
inline ConformalReport conformal_check(const GraphSurface& f, const Grid& grid, const ConformalOptions& opt = {}) {
  ConformalReport rep;
  XiOptions xo;
  xo.tol = opt.tol;
  xo.closedness_step = opt.closedness_step;
  const double h = opt.fd_step;
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const Point2 x = grid.at(k);
    const Point2 a = lewy_map(f, {x.x1 + h, x.x2}, opt.base, xo), b = lewy_map(f, {x.x1 - h, x.x2}, opt.base, xo);
    const Point2 c = lewy_map(f, {x.x1, x.x2 + h}, opt.base, xo), d = lewy_map(f, {x.x1, x.x2 - h}, opt.base, xo);
    const Mat2 D = {{{(a.x1 - b.x1) / (2 * h), (c.x1 - d.x1) / (2 * h)},
                     {(a.x2 - b.x2) / (2 * h), (c.x2 - d.x2) / (2 * h)}}};
    const Mat2 Di = inverse(D);
    const MetricSample g = metric_at(f, x);
    const LewyJacobian lj = lewy_jacobian(g);
    const Mat2 gm = {{{g.g11, g.g12}, {g.g12, g.g22}}};
    Mat2 G{};
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        for (int p = 0; p < 2; ++p)
          for (int q = 0; q < 2; ++q) G[i][j] += Di[p][i] * gm[p][q] * Di[q][j];
    rep.max_anisotropy = std::max(rep.max_anisotropy, std::abs(G[0][0] - G[1][1]) / G[0][0]);
    rep.max_shear = std::max(rep.max_shear, std::abs(G[0][1]) / G[0][0]);
    rep.max_factor_dev = std::max(rep.max_factor_dev, std::abs(G[0][0] - lj.conformal) / G[0][0]);
    rep.max_closedness = std::max(rep.max_closedness, closedness_residual(f, x, opt.closedness_step));
    rep.min_jl_eigenvalue = std::min(rep.min_jl_eigenvalue, lj.eig_min);
    ++rep.points;
  }
  return rep;
}

struct HolomorphyReport {
  double max_cr_residual = 0.0;       // max_l |d beta_l / d conj(zeta)|
  double min_inverse_jacobian = INFINITY;  // min of -4 Im(conj(beta1) beta2)
  bool inverse_jacobian_positive = true;
  Complex ratio{};                     // beta2 / beta1 at the first grid point
  double max_ratio_dev = 0.0;          // spread of beta2 / beta1 over the grid
  std::size_t points = 0;
};

/// beta_l = d x_l / d zeta for every ambient coordinate (the two base
/// coordinates followed by the graph components), over the Lewy chart.
inline std::vector<Complex> lewy_betas(const GraphSurface& f, Point2 x) {
  const Tangents t = jacobian(f, x);
  const MetricSample g = metric_from_tangents(t);
  const Mat2 Di = inverse(lewy_jacobian(g).JL);
  auto beta = [&](double d1, double d2) {
    const double e1 = d1 * Di[0][0] + d2 * Di[1][0];
    const double e2 = d1 * Di[0][1] + d2 * Di[1][1];
    return Complex(0.5 * e1, -0.5 * e2);
  };
  std::vector<Complex> out;
  out.push_back(beta(1.0, 0.0));
  out.push_back(beta(0.0, 1.0));
  for (std::size_t k = 0; k < t.p.size(); ++k) out.push_back(beta(t.p[k], t.q[k]));
  return out;
}

/// Cauchy-Riemann defect of the beta_l in the Lewy chart. The Jacobian of L
/// is taken in closed form (I + g/W); the derivative of beta is a central
/// difference of step h mapped through D^{-1}.
inline HolomorphyReport beta_holomorphy_check(const GraphSurface& f, const Grid& grid, double h = 1e-4) {
  HolomorphyReport rep;
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const Point2 x = grid.at(k);
    const auto b0 = lewy_betas(f, x);
    const auto b1p = lewy_betas(f, {x.x1 + h, x.x2}), b1m = lewy_betas(f, {x.x1 - h, x.x2});
    const auto b2p = lewy_betas(f, {x.x1, x.x2 + h}), b2m = lewy_betas(f, {x.x1, x.x2 - h});
    const Mat2 Di = inverse(lewy_jacobian(f, x).JL);
    for (std::size_t l = 0; l < b0.size(); ++l) {
      const Complex dx1 = (b1p[l] - b1m[l]) / (2 * h);
      const Complex dx2 = (b2p[l] - b2m[l]) / (2 * h);
      const Complex de1 = dx1 * Di[0][0] + dx2 * Di[1][0];
      const Complex de2 = dx1 * Di[0][1] + dx2 * Di[1][1];
      const Complex dbar = 0.5 * (de1 + Complex(0.0, 1.0) * de2);
      rep.max_cr_residual = std::max(rep.max_cr_residual, std::abs(dbar));
    }
    const double jac = -4.0 * (std::conj(b0[0]) * b0[1]).imag();
    rep.min_inverse_jacobian = std::min(rep.min_inverse_jacobian, jac);
    if (!(jac > 0.0)) rep.inverse_jacobian_positive = false;
    const Complex ratio = b0[1] / b0[0];
    if (k == 0) rep.ratio = ratio;
    rep.max_ratio_dev = std::max(rep.max_ratio_dev, std::abs(ratio - rep.ratio));
    ++rep.points;
  }
  return rep;
}

}  // namespace stationary
