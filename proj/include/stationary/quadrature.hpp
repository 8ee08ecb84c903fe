#pragma once

// Adaptive quadrature shared by path integration, curve length, Lewy
// potentials and total curvature.

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <numbers>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "stationary/error.hpp"

namespace stationary::quad {

template <int N>
struct GaussLegendreRule {
  std::array<double, N> nodes{};
  std::array<double, N> weights{};
};

/// N-point Gauss-Legendre rule on [-1,1], roots of P_N by Newton iteration.
template <int N>
const GaussLegendreRule<N>& gauss_legendre_rule() {
  static const GaussLegendreRule<N> rule = [] {
    GaussLegendreRule<N> r;
    for (int i = 0; i < (N + 1) / 2; ++i) {
      double x = std::cos(std::numbers::pi * (i + 0.75) / (N + 0.5));
      double dp = 0.0;
      for (int iter = 0; iter < 100; ++iter) {
        double p0 = 1.0, p1 = x;
        for (int k = 2; k <= N; ++k) {
          const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
          p0 = p1;
          p1 = p2;
        }
        dp = N * (x * p1 - p0) / (x * x - 1.0);
        const double dx = p1 / dp;
        x -= dx;
        if (std::abs(dx) < 1e-16) break;
      }
      const double w = 2.0 / ((1.0 - x * x) * dp * dp);
      r.nodes[i] = -x;
      r.nodes[N - 1 - i] = x;
      r.weights[i] = w;
      r.weights[N - 1 - i] = w;
    }
    return r;
  }();
  return rule;
}

template <class T>
double magnitude(const T& v) {
  return std::abs(v);
}

/// One application of the 16-point rule on [a,b]; works for real or complex
/// valued integrands.
template <class F>
auto gauss_legendre16(F&& f, double a, double b) {
  const auto& rule = gauss_legendre_rule<16>();
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  using T = std::decay_t<decltype(f(a))>;
  T sum{};
  for (int i = 0; i < 16; ++i) sum += rule.weights[i] * f(mid + half * rule.nodes[i]);
  return T(sum * half);
}

template <class T>
struct Result {
  T value{};
  double error = 0.0;
  int intervals = 0;
};

/// Adaptive composite Gauss-Legendre (order 16) with interval bisection.
/// A subinterval is accepted when the whole-vs-halves difference is below its
/// share of `tol`, or below a few ulps of the local value (round-off floor).
template <class F>
auto integrate(F&& f, double a, double b, double tol, int max_intervals = 1 << 16) {
  using T = std::decay_t<decltype(f(a))>;
  if (!(tol > 0.0)) throw Error(ErrorKind::precondition, "quadrature tolerance must be positive");
  Result<T> out;
  if (a == b) return out;

  struct Segment {
    double a, b;
    T whole;
    double tol;
  };
  std::vector<Segment> stack;
  stack.push_back({a, b, gauss_legendre16(f, a, b), tol});
  constexpr double eps = std::numeric_limits<double>::epsilon();
  int evaluated = 1;
  while (!stack.empty()) {
    Segment s = stack.back();
    stack.pop_back();
    const double m = 0.5 * (s.a + s.b);
    const T left = gauss_legendre16(f, s.a, m);
    const T right = gauss_legendre16(f, m, s.b);
    const T refined = left + right;
    const double diff = magnitude(refined - s.whole);
    if (!std::isfinite(diff))
      throw Error(ErrorKind::quadrature, "non-finite integrand value");
    if (diff <= s.tol || diff <= 64.0 * eps * magnitude(refined) || m == s.a || m == s.b) {
      out.value += refined;
      out.error += diff;
      ++out.intervals;
      continue;
    }
    evaluated += 2;
    if (evaluated > max_intervals)
      throw Error(ErrorKind::quadrature,
                  "no convergence within " + std::to_string(max_intervals) + " subintervals");
    stack.push_back({m, s.b, right, 0.5 * s.tol});
    stack.push_back({s.a, m, left, 0.5 * s.tol});
  }
  return out;
}

/// Shared evaluation counter for nested adaptive Simpson.
struct Budget {
  long long max_evaluations = 400'000'000;
  long long used = 0;

  void spend(long long n) {
    used += n;
    if (used > max_evaluations)
      throw Error(ErrorKind::quadrature,
                  "evaluation budget of " + std::to_string(max_evaluations) + " exhausted");
  }
};

namespace detail {

template <class F>
double simpson_step(F& f, double a, double fa, double m, double fm, double b, double fb, double whole,
                    double tol, int depth, Budget& budget) {
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  budget.spend(2);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol || lm == a || rm == b)
    return left + right + delta / 15.0;
  return simpson_step(f, a, fa, lm, flm, m, fm, left, 0.5 * tol, depth - 1, budget) +
         simpson_step(f, m, fm, rm, frm, b, fb, right, 0.5 * tol, depth - 1, budget);
}

}  // namespace detail

/// Composite adaptive Simpson: `panels` equal starting panels, each refined
/// recursively to its share of the absolute tolerance `tol`.
template <class F>
double adaptive_simpson(F&& f, double a, double b, double tol, int panels, Budget& budget, int max_depth = 40) {
  if (panels < 1) panels = 1;
  const double width = (b - a) / panels;
  double sum = 0.0;
  double fa = f(a);
  budget.spend(1);
  for (int k = 0; k < panels; ++k) {
    const double pa = a + k * width;
    const double pb = (k + 1 == panels) ? b : a + (k + 1) * width;
    const double pm = 0.5 * (pa + pb);
    const double fm = f(pm);
    const double fb = f(pb);
    budget.spend(2);
    const double whole = (pb - pa) / 6.0 * (fa + 4.0 * fm + fb);
    sum += detail::simpson_step(f, pa, fa, pm, fm, pb, fb, whole, tol / panels, max_depth, budget);
    fa = fb;
  }
  return sum;
}

/// Plain composite Simpson with `panels` panels, used for magnitude scouting.
template <class F>
double composite_simpson(F&& f, double a, double b, int panels) {
  const double h = (b - a) / (2.0 * panels);
  double s = f(a) + f(b);
  for (int k = 1; k < 2 * panels; ++k) s += (k % 2 ? 4.0 : 2.0) * f(a + k * h);
  return s * h / 3.0;
}

}  // namespace stationary::quad
