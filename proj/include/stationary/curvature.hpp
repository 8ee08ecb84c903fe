#pragma once

// Gauss and normal curvature of canonical stationary surfaces in R_1^4.
//
// With induced metric e^{2w} |dz|^2 and Gauss maps phi, psi:
//   -K + i K_perp = Laplace ln(phi - conj(psi))
//                 = 4 e^{-2w} phi_z conj(psi)_zbar / (phi - conj(psi))^2.

#include <cmath>
#include <complex>
#include <numbers>

#include "stationary/error.hpp"
#include "stationary/quadrature.hpp"
#include "stationary/representation.hpp"

namespace stationary {

/// e^{2w} = 2 <alpha, conj(alpha)> = b W. Evaluated as
/// (1 + |c|^2 + S + |1 + c^2 + S| cos(2 Im beta)) / 2, which avoids the
/// cancellation between |alpha_k|^2 terms when |Re beta| is large.
inline double conformal_factor(const StationaryData& d, Complex z) {
  const double e2w = d.b() * w_closed_form(d, z);
  if (!(e2w > 0.0)) throw Error(ErrorKind::not_spacelike, "conformal factor is not positive");
  return e2w;
}

struct CurvatureSample {
  double e2omega = 1.0;
  double K = 0.0;
  double Kperp = 0.0;
  double density = 0.0;  // |K| e^{2w}
  bool flat_by_classification = false;
};

namespace detail {

inline void require_r14(const StationaryData& d) {
  if (d.m() != 2) throw Error(ErrorKind::codimension, "curvature formulas are specific to R_1^4 (m = 2)");
}

}  // namespace detail

inline CurvatureSample curvatures(const StationaryData& d, Complex z) {
  detail::require_r14(d);
  CurvatureSample s;
  s.e2omega = conformal_factor(d, z);
  if (d.lightlike()) {
    s.flat_by_classification = true;
    return s;
  }
  const GaussData& g = *d.gauss();
  const Complex den = g.phi.eval(z) - std::conj(g.psi.eval(z));
  if (std::abs(den) == 0.0) throw Error(ErrorKind::gauss_map_collision, "phi = conj(psi)");
  const Complex v = 4.0 / s.e2omega * g.dphi.eval(z) * std::conj(g.dpsi.eval(z)) / (den * den);
  s.K = -v.real();
  s.Kperp = v.imag();
  s.density = std::abs(s.K) * s.e2omega;
  return s;
}

/// Independent check of `curvatures`: five-point Laplacian of
/// ln(phi - conj(psi)) with the logarithm's phase unwrapped to within pi of
/// the stencil centre.
inline std::pair<double, double> curvature_fd_oracle(const StationaryData& d, Complex z, double h = 1e-3) {
  detail::require_r14(d);
  if (!(h > 0.0)) throw Error(ErrorKind::precondition, "step must be positive");
  if (d.lightlike()) return {0.0, 0.0};
  const GaussData& g = *d.gauss();
  auto w = [&](Complex p) {
    const Complex v = g.phi.eval(p) - std::conj(g.psi.eval(p));
    if (std::abs(v) == 0.0) throw Error(ErrorKind::branch_tracking, "stencil touches a zero of phi - conj(psi)");
    return v;
  };
  const Complex center = w(z);
  const double arg0 = std::arg(center);
  auto log_near = [&](Complex v) {
    double a = std::arg(v);
    const double two_pi = 2.0 * std::numbers::pi;
    a += two_pi * std::round((arg0 - a) / two_pi);
    if (std::abs(a - arg0) > 0.5 * std::numbers::pi)
      throw Error(ErrorKind::branch_tracking, "phase jump across stencil; reduce h");
    return Complex(std::log(std::abs(v)), a);
  };
  const Complex I(0.0, 1.0);
  const Complex lap = (log_near(w(z + h)) + log_near(w(z - h)) + log_near(w(z + I * h)) + log_near(w(z - I * h)) -
                       4.0 * Complex(std::log(std::abs(center)), arg0)) /
                      (h * h);
  const Complex v = lap / conformal_factor(d, z);
  return {-v.real(), v.imag()};
}

namespace detail {

// |r e^{-i v2} + r^{-1} e^{i v2}|^4
inline double w4(double r, double v2) {
  const Complex w = r * std::polar(1.0, -v2) + std::polar(1.0, v2) / r;
  const double n = std::norm(w);
  return n * n;
}

}  // namespace detail

/// |K| e^{2w} = 4 |2 + (r^2 + r^-2) cos 2v2| |beta'|^2 / |r e^{-i v2} + r^-1 e^{i v2}|^4,
/// v2 = Im beta.
inline double abs_k_density(const StationaryData& d, Complex z) {
  detail::require_r14(d);
  if (d.lightlike()) return 0.0;
  const double r = d.gauss()->r;
  const double v2 = d.beta().eval(z).imag();
  const double db2 = std::norm(d.beta_prime().eval(z));
  return 4.0 * std::abs(2.0 + (r * r + 1.0 / (r * r)) * std::cos(2.0 * v2)) * db2 / detail::w4(r, v2);
}

/// |K_perp| e^{2w} = 4 |(r^2 - r^-2) sin 2v2| |beta'|^2 / |r e^{-i v2} + r^-1 e^{i v2}|^4.
inline double abs_kperp_density(const StationaryData& d, Complex z) {
  detail::require_r14(d);
  if (d.lightlike()) return 0.0;
  const double r = d.gauss()->r;
  const double v2 = d.beta().eval(z).imag();
  const double db2 = std::norm(d.beta_prime().eval(z));
  return 4.0 * std::abs((r * r - 1.0 / (r * r)) * std::sin(2.0 * v2)) * db2 / detail::w4(r, v2);
}

struct TotalCurvatureOptions {
  double rel_tol = 1e-6;
  long long max_evaluations = 400'000'000;
  double panel_width = 0.25;
};

struct TotalCurvature {
  double value = 0.0;
  long long evaluations = 0;
};

/// Integral of a nonnegative density over [-R, R]^2 in the parameter plane,
/// by iterated adaptive Simpson (an adaptive rule in u1 nested inside one in u2).
template <class Density>
TotalCurvature integrate_density(Density&& density, double R, const TotalCurvatureOptions& opt = {}) {
  if (!(R > 0.0)) throw Error(ErrorKind::precondition, "R must be positive");
  if (!(opt.rel_tol > 0.0)) throw Error(ErrorKind::precondition, "tolerance must be positive");
  const int panels = std::max(8, static_cast<int>(std::ceil(2.0 * R / opt.panel_width)));
  quad::Budget budget{opt.max_evaluations, 0};

  auto scout_line = [&](double u2) {
    return quad::composite_simpson([&](double u1) { return density(Complex(u1, u2)); }, -R, R, panels);
  };
  const double scale = std::abs(quad::composite_simpson(scout_line, -R, R, panels));
  budget.spend(static_cast<long long>(2 * panels + 1) * (2 * panels + 1));
  if (scale == 0.0) return {0.0, budget.used};

  const double line_tol = 0.1 * opt.rel_tol * scale / (2.0 * R);
  auto line = [&](double u2) {
    return quad::adaptive_simpson([&](double u1) { return density(Complex(u1, u2)); }, -R, R, line_tol, panels,
                                  budget);
  };
  const double value = quad::adaptive_simpson(line, -R, R, opt.rel_tol * scale, panels, budget);
  return {value, budget.used};
}

inline TotalCurvature total_curvature(const StationaryData& d, double R, const TotalCurvatureOptions& opt = {}) {
  detail::require_r14(d);
  if (d.lightlike() || beta_is_constant(d.beta())) return {0.0, 0};
  return integrate_density([&](Complex z) { return abs_k_density(d, z); }, R, opt);
}

inline TotalCurvature total_normal_curvature(const StationaryData& d, double R, const TotalCurvatureOptions& opt = {}) {
  detail::require_r14(d);
  if (d.lightlike() || beta_is_constant(d.beta())) return {0.0, 0};
  return integrate_density([&](Complex z) { return abs_kperp_density(d, z); }, R, opt);
}

}  // namespace stationary
