#pragma once

// Exact stationary graphs from holomorphic data.
//
// A spacelike stationary graph in R_1^{2+m} in isothermal parameters
// z = u1 + i u2 is x = 2 Re \int_0^z alpha dz with alpha = dx/dz isotropic,
// <alpha, alpha> = 0. The canonical family used here is
//
//   alpha = (1/2, c/2, d_3/2, ..., d_m/2, mu cosh(beta), mu sinh(beta)),
//   c = a - b i (b > 0),  mu^2 = -(1 + c^2 + sum d_k^2) / 4,
//
// and the base coordinates are x1 = u1, x2 = a u1 + b u2. The lightlike
// family (c = -i, m = 2) instead has alpha_3 = beta'/2, alpha_4 = s beta'/2
// with s = +-1, i.e. f = Re(beta) (1, s).

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <memory>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "stationary/error.hpp"
#include "stationary/graph_geometry.hpp"
#include "stationary/holo_expr.hpp"
#include "stationary/mink.hpp"

namespace stationary {

/// Weierstrass data for R_1^4:
///   alpha = (phi + psi, -i (phi - psi), 1 - phi psi, 1 + phi psi) h'.
struct GaussData {
  HoloExpr phi, psi, hprime;
  HoloExpr dphi, dpsi;
  Complex phi_coeff{}, psi_coeff{};  // phi = phi_coeff e^{-beta}, psi = psi_coeff e^{-beta}
  double r = 1.0;                    // |phi_coeff| > 1
  double theta = 0.0;                // arg phi_coeff
};

inline std::array<Complex, 4> weierstrass_to_alpha(const HoloExpr& phi, const HoloExpr& psi, const HoloExpr& hprime,
                                                   Complex z) {
  const Complex p = phi.eval(z), s = psi.eval(z), h = hprime.eval(z);
  const Complex I(0.0, 1.0);
  return {(p + s) * h, -I * (p - s) * h, (1.0 - p * s) * h, (1.0 + p * s) * h};
}

inline std::array<Complex, 4> weierstrass_to_alpha(const GaussData& g, Complex z) {
  return weierstrass_to_alpha(g.phi, g.psi, g.hprime, z);
}

class StationaryData {
 public:
  int m() const noexcept { return m_; }
  int dim() const noexcept { return m_ + 2; }
  double a() const noexcept { return a_; }
  double b() const noexcept { return b_; }
  Complex c() const noexcept { return {a_, -b_}; }
  const std::vector<double>& consts() const noexcept { return consts_; }
  Complex mu() const noexcept { return mu_; }
  const HoloExpr& beta() const noexcept { return beta_; }
  const HoloExpr& beta_prime() const noexcept { return beta_prime_; }
  /// +-1 for the lightlike family, 0 for the canonical family.
  int lightlike_sign() const noexcept { return lightlike_sign_; }
  bool lightlike() const noexcept { return lightlike_sign_ != 0; }
  double sum_d2() const {
    double s = 0.0;
    for (double d : consts_) s += d * d;
    return s;
  }
  /// alpha components as expressions in z, in ambient order.
  const std::vector<HoloExpr>& alpha_exprs() const noexcept { return alpha_exprs_; }
  const std::optional<GaussData>& gauss() const noexcept { return gauss_; }

  friend StationaryData make_canonical(double a, double b, std::vector<double> consts, const HoloExpr& beta, int m);
  friend StationaryData make_lightlike(const HoloExpr& beta, int sign);

 private:
  StationaryData() = default;
  void finish();

  int m_ = 2;
  double a_ = 0.0, b_ = 1.0;
  std::vector<double> consts_;
  Complex mu_{};
  HoloExpr beta_, beta_prime_;
  int lightlike_sign_ = 0;
  std::vector<HoloExpr> alpha_exprs_;
  std::optional<GaussData> gauss_;
};

/// Principal square root normalized to Im >= 0, and Re > 0 on the real axis.
inline Complex principal_mu(Complex mu2) {
  Complex s = std::sqrt(mu2);
  if (s.imag() < 0.0 || (s.imag() == 0.0 && s.real() < 0.0)) s = -s;
  return s;
}

inline StationaryData make_canonical(double a, double b, std::vector<double> consts, const HoloExpr& beta, int m) {
  if (!(b > 0.0)) throw Error(ErrorKind::precondition, "b must be positive");
  if (!std::isfinite(a) || !std::isfinite(b)) throw Error(ErrorKind::precondition, "a and b must be finite");
  if (m < 2) throw Error(ErrorKind::codimension, "canonical data needs m >= 2");
  if (static_cast<int>(consts.size()) != m - 2)
    throw Error(ErrorKind::dimension, "expected " + std::to_string(m - 2) + " constant components");
  for (double d : consts)
    if (!std::isfinite(d)) throw Error(ErrorKind::precondition, "constant components must be finite");
  if (beta.variables().size() != 1) throw Error(ErrorKind::precondition, "beta must be an expression in z");
  StationaryData d;
  d.m_ = m;
  d.a_ = a;
  d.b_ = b;
  d.consts_ = std::move(consts);
  d.beta_ = beta;
  const Complex c = d.c();
  const Complex s = 1.0 + c * c + d.sum_d2();
  if (std::abs(s) <= 1e-12)
    throw Error(ErrorKind::degenerate, "mu = 0 for this (c, consts); use the lightlike constructor");
  d.mu_ = principal_mu(-s / 4.0);
  d.finish();
  return d;
}

inline StationaryData make_canonical(double a, double b, std::vector<double> consts, std::string_view beta, int m) {
  return make_canonical(a, b, std::move(consts), parse(beta), m);
}

/// Degenerate family c = -i in R_1^4: f = Re(beta) (1, sign), W = 1.
inline StationaryData make_lightlike(const HoloExpr& beta, int sign = 1) {
  if (sign != 1 && sign != -1) throw Error(ErrorKind::precondition, "sign must be +1 or -1");
  StationaryData d;
  d.m_ = 2;
  d.a_ = 0.0;
  d.b_ = 1.0;
  d.beta_ = beta;
  d.lightlike_sign_ = sign;
  d.finish();
  return d;
}

inline void StationaryData::finish() {
  beta_prime_ = beta_.derive();
  alpha_exprs_.clear();
  alpha_exprs_.push_back(HoloExpr::constant(0.5));
  alpha_exprs_.push_back(HoloExpr::constant(0.5 * c()));
  if (lightlike_sign_ != 0) {
    alpha_exprs_.push_back(Complex(0.5) * beta_prime_);
    alpha_exprs_.push_back(Complex(0.5 * lightlike_sign_) * beta_prime_);
    return;
  }
  for (double d : consts_) alpha_exprs_.push_back(HoloExpr::constant(0.5 * d));
  alpha_exprs_.push_back(mu_ * cosh(beta_));
  alpha_exprs_.push_back(mu_ * sinh(beta_));
  if (m_ == 2) {
    const Complex I(0.0, 1.0);
    GaussData g;
    g.phi_coeff = (1.0 + I * c()) / (2.0 * mu_);
    g.psi_coeff = (1.0 - I * c()) / (2.0 * mu_);
    g.hprime = (0.5 * mu_) * exp(beta_);
    g.phi = g.phi_coeff * exp(-beta_);
    g.psi = g.psi_coeff * exp(-beta_);
    g.dphi = g.phi.derive();
    g.dpsi = g.psi.derive();
    g.r = std::abs(g.phi_coeff);
    g.theta = std::arg(g.phi_coeff);
    gauss_ = std::move(g);
  }
}

inline std::vector<Complex> alpha(const StationaryData& d, Complex z) {
  std::vector<Complex> out;
  out.reserve(d.alpha_exprs().size());
  for (const auto& e : d.alpha_exprs()) out.push_back(e.eval(z));
  return out;
}

/// <alpha, alpha> (complex bilinear Minkowski form).
inline Complex alpha_isotropy(std::span<const Complex> al) {
  Complex s = 0.0;
  for (std::size_t k = 0; k + 1 < al.size(); ++k) s += al[k] * al[k];
  return s - al.back() * al.back();
}

/// <alpha, conj(alpha)>, real.
inline double alpha_hermitian(std::span<const Complex> al) {
  double s = 0.0;
  for (std::size_t k = 0; k + 1 < al.size(); ++k) s += std::norm(al[k]);
  return s - std::norm(al.back());
}

/// Pointwise lower bound (1 + |c|^2 - |1 + c^2 + sum d^2|) / 4 for <alpha, conj(alpha)>.
inline double hermitian_lower_bound(const StationaryData& d) {
  const Complex c = d.c();
  return (1.0 + std::norm(c) + d.sum_d2() - std::abs(1.0 + c * c + d.sum_d2())) / 4.0;
}

inline GaussData alpha_to_gauss(const StationaryData& d) {
  if (d.m() != 2) throw Error(ErrorKind::codimension, "Gauss data exist only for m = 2");
  if (d.lightlike() || !d.gauss()) throw Error(ErrorKind::degenerate, "mu = 0");
  return *d.gauss();
}

inline bool beta_is_constant(const HoloExpr& beta) {
  if (!beta.mentions_variable()) return true;
  const HoloExpr db = beta.derive();
  if (!db.mentions_variable()) return db.eval(0.0) == 0.0;
  int probed = 0;
  for (int k = 0; k < 8; ++k) {
    const double rad = k < 4 ? 0.75 : 1.5;
    const Complex z = std::polar(rad, (2 * k + 1) * std::numbers::pi / 8);
    try {
      if (std::abs(db.eval(z)) > 1e-12 * (1.0 + std::abs(beta.eval(z)))) return false;
      ++probed;
    } catch (const Error&) {
    }
  }
  return probed > 0;
}

/// Base coordinates <-> isothermal parameter.
inline Complex chart_z(const StationaryData& d, Point2 x) { return {x.x1, (x.x2 - d.a() * x.x1) / d.b()}; }
inline Point2 chart_x(const StationaryData& d, Complex z) {
  return {z.real(), d.a() * z.real() + d.b() * z.imag()};
}

namespace detail {

// \int_0^z of cosh(beta) and sinh(beta); closed form when beta' is constant.
inline std::array<Complex, 2> hyperbolic_primitives(const StationaryData& d, Complex z, double tol) {
  const HoloExpr& beta = d.beta();
  const HoloExpr& db = d.beta_prime();
  if (!db.mentions_variable()) {
    const Complex k = db.eval(0.0);
    const Complex b0 = beta.eval(0.0), bz = beta.eval(z);
    if (k == 0.0) return {std::cosh(b0) * z, std::sinh(b0) * z};
    return {(std::sinh(bz) - std::sinh(b0)) / k, (std::cosh(bz) - std::cosh(b0)) / k};
  }
  return {integrate_segment(cosh(beta), 0.0, z, tol), integrate_segment(sinh(beta), 0.0, z, tol)};
}

}  // namespace detail

/// x(z) = 2 Re \int_0^z alpha dz, base point x(0) = 0.
inline MinkVector synthesize_point(const StationaryData& d, Complex z, double tol = 1e-12) {
  if (!is_finite(z)) throw Error(ErrorKind::precondition, "non-finite parameter");
  std::vector<double> x;
  x.reserve(d.dim());
  x.push_back(z.real());
  x.push_back(d.a() * z.real() + d.b() * z.imag());
  if (d.lightlike()) {
    const double h = (d.beta().eval(z) - d.beta().eval(0.0)).real();
    x.push_back(h);
    x.push_back(d.lightlike_sign() * h);
    return MinkVector(std::move(x));
  }
  for (double c : d.consts()) x.push_back(c * z.real());
  const auto prim = detail::hyperbolic_primitives(d, z, tol);
  x.push_back(2.0 * (d.mu() * prim[0]).real());
  x.push_back(2.0 * (d.mu() * prim[1]).real());
  return MinkVector(std::move(x));
}

/// Same point computed only by path quadrature of each alpha component.
inline MinkVector synthesize_point_quadrature(const StationaryData& d, Complex z, double tol = 1e-12) {
  std::vector<double> x;
  for (const auto& e : d.alpha_exprs()) x.push_back(2.0 * integrate_segment(e, 0.0, z, tol).real());
  return MinkVector(std::move(x));
}

/// f(x1, x2): the graph components of the synthesized surface.
inline std::vector<double> graph_eval(const StationaryData& d, double x1, double x2, double tol = 1e-12) {
  const MinkVector x = synthesize_point(d, chart_z(d, {x1, x2}), tol);
  return {x.coords().begin() + 2, x.coords().end()};
}

enum class DerivativeMode { analytic, finite_difference };

/// The graph as a GraphSurface. Analytic tangents come from
/// dx/du1 = 2 Re alpha, dx/du2 = -2 Im alpha and the linear chart.
inline GraphSurface graph_surface(const StationaryData& d, DerivativeMode mode = DerivativeMode::analytic,
                                  double fd_step = 1e-5) {
  auto data = std::make_shared<const StationaryData>(d);
  auto value = [data](Point2 x) { return graph_eval(*data, x.x1, x.x2); };
  if (mode == DerivativeMode::finite_difference) return GraphSurface(d.m(), value, {}, fd_step);
  auto tangents = [data](Point2 x, double) {
    const auto al = alpha(*data, chart_z(*data, x));
    const double ab = data->a() / data->b();
    std::vector<double> p, q;
    for (std::size_t k = 2; k < al.size(); ++k) {
      const double du1 = 2.0 * al[k].real();
      const double du2 = -2.0 * al[k].imag();
      p.push_back(du1 - ab * du2);
      q.push_back(du2 / data->b());
    }
    return Tangents{MinkVector(std::move(p)), MinkVector(std::move(q))};
  };
  return GraphSurface(d.m(), value, tangents, fd_step);
}

/// W = (1 + |c|^2 + 4 (|alpha_3|^2 + ... + |alpha_{m+1}|^2 - |alpha_{m+2}|^2)) / (2b).
inline double w_of(const StationaryData& d, Complex z) {
  const auto al = alpha(d, z);
  double s = 0.0;
  for (std::size_t k = 2; k + 1 < al.size(); ++k) s += std::norm(al[k]);
  s -= std::norm(al.back());
  return (1.0 + std::norm(d.c()) + 4.0 * s) / (2.0 * d.b());
}

/// Closed form for the canonical family:
///   W = (1 + |c|^2 + S + |1 + c^2 + S| cos(2 Im beta)) / (2b),  S = sum d^2.
inline double w_closed_form(const StationaryData& d, Complex z) {
  if (d.lightlike()) return 1.0;
  const Complex c = d.c();
  const double S = d.sum_d2();
  return (1.0 + std::norm(c) + S + std::abs(1.0 + c * c + S) * std::cos(2.0 * d.beta().eval(z).imag())) /
         (2.0 * d.b());
}

enum class SurfaceCase { affine, lightlike, oscillating };

inline const char* to_string(SurfaceCase c) {
  switch (c) {
    case SurfaceCase::affine: return "I";
    case SurfaceCase::lightlike: return "II";
    case SurfaceCase::oscillating: return "III";
  }
  return "?";
}

struct Classification {
  SurfaceCase kind = SurfaceCase::affine;
  std::optional<MinkVector> y0;  // lightlike direction, case II
  double w_constant = 0.0;       // case I and II
  double r1 = 0.0, r2 = 0.0;     // inf W and sup W, case III
  bool trichotomy = true;        // exact three-case statement holds (m = 2)
};

inline constexpr double case_tolerance = 1e-12;

inline Classification classify(const StationaryData& d) {
  Classification out;
  out.trichotomy = d.m() == 2;
  if (beta_is_constant(d.beta())) {
    out.kind = SurfaceCase::affine;
    out.w_constant = w_of(d, 0.0);
    out.r1 = out.r2 = out.w_constant;
    return out;
  }
  const Complex c = d.c();
  if (std::abs(c + Complex(0.0, 1.0)) <= case_tolerance && d.consts().empty()) {
    out.kind = SurfaceCase::lightlike;
    out.y0 = MinkVector{1.0, d.lightlike() ? static_cast<double>(d.lightlike_sign()) : 1.0};
    out.w_constant = 1.0;
    out.r1 = out.r2 = 1.0;
    return out;
  }
  const double S = d.sum_d2();
  const double base = 1.0 + std::norm(c) + S;
  const double amp = std::abs(1.0 + c * c + S);
  out.kind = SurfaceCase::oscillating;
  out.r1 = (base - amp) / (2.0 * d.b());
  out.r2 = (base + amp) / (2.0 * d.b());
  return out;
}

/// Data in R_1^{2+m} (m >= 3) with inf W * sup W = C and 0 < sup W - inf W < eps:
/// consts = (0, ..., 0, sqrt(C - 1)), a = 0, beta = z and b slightly above sqrt(C).
inline StationaryData construct_ber3(double C, double eps, int m) {
  if (!(C >= 1.0)) throw Error(ErrorKind::precondition, "C must be at least 1");
  if (!(eps > 0.0)) throw Error(ErrorKind::precondition, "eps must be positive");
  if (m < 3) throw Error(ErrorKind::codimension, "needs m >= 3");
  const double d = std::sqrt(C - 1.0);
  std::vector<double> consts(static_cast<std::size_t>(m - 2), 0.0);
  consts.back() = d;
  const double root = std::sqrt(C);
  const double delta = std::min(eps / (4.0 * root), 0.01);
  return make_canonical(0.0, root + delta, std::move(consts), parse("z"), m);
}

struct WStats {
  double min = INFINITY, max = -INFINITY;
  Point2 argmin{}, argmax{};
  std::vector<double> values;  // row-major over the grid
};

/// W sampled over a grid in base coordinates (x1, x2), by the closed form.
inline WStats w_stats(const StationaryData& d, const Grid& grid) {
  WStats s;
  s.values.resize(grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const Point2 x = grid.at(k);
    const double w = w_closed_form(d, chart_z(d, x));
    s.values[k] = w;
    if (w < s.min) s.min = w, s.argmin = x;
    if (w > s.max) s.max = w, s.argmax = x;
  }
  return s;
}

/// Number of grid edges (horizontal or vertical neighbours) on which the
/// sampled field crosses `level`.
inline int count_crossings(std::span<const double> values, int n1, int n2, double level) {
  int count = 0;
  auto at = [&](int i, int j) { return values[static_cast<std::size_t>(j) * n1 + i] - level; };
  for (int j = 0; j < n2; ++j)
    for (int i = 0; i < n1; ++i) {
      const double v = at(i, j);
      if (i + 1 < n1 && v * at(i + 1, j) <= 0.0 && !(v == 0.0 && at(i + 1, j) == 0.0)) ++count;
      if (j + 1 < n2 && v * at(i, j + 1) <= 0.0 && !(v == 0.0 && at(i, j + 1) == 0.0)) ++count;
    }
  return count;
}

}  // namespace stationary
