#include <cmath>
#include <vector>

#include "stationary/curvature.hpp"
#include "stationary/lab/config.hpp"
#include "stationary/lewy.hpp"
#include "stationary/representation.hpp"
#include "support.hpp"

using namespace stationary;
using lab::graph_from_expressions;

namespace {

GraphSurface zero_graph() {
  return GraphSurface(2, [](Point2) { return std::vector<double>{0.0, 0.0}; });
}

GraphSurface lightlike_graph() { return graph_from_expressions({"x1^3 - 3*x1*x2^2", "x1^3 - 3*x1*x2^2"}); }

// Eigenvalues of a symmetric 2x2 matrix by one Jacobi rotation.
std::array<double, 2> jacobi_eigenvalues(double a, double b, double d) {
  const double t = 0.5 * std::atan2(2.0 * b, a - d);
  const double c = std::cos(t), s = std::sin(t);
  const double e1 = c * c * a + 2 * c * s * b + s * s * d;
  const double e2 = s * s * a - 2 * c * s * b + c * c * d;
  return {std::max(e1, e2), std::min(e1, e2)};
}

}  // namespace

TEST_CASE("potentials of trivial graphs", "[lewy]") {
  const XiResult z = xi_potentials(zero_graph(), {3.0, 4.0}, {0.0, 0.0});
  CHECK_THAT(z.xi1, WithinAbs(3.0, 1e-13));
  CHECK_THAT(z.xi2, WithinAbs(4.0, 1e-13));
  CHECK_FALSE(z.warning.has_value());

  const auto f = lightlike_graph();
  for (int k = 0; k < 10; ++k) {
    const Point2 x{testing::uniform(-2, 2), testing::uniform(-2, 2)}, base{testing::uniform(-1, 1), testing::uniform(-1, 1)};
    const XiResult r = xi_potentials(f, x, base);
    CHECK_THAT(r.xi1, WithinAbs(x.x1 - base.x1, 1e-12));
    CHECK_THAT(r.xi2, WithinAbs(x.x2 - base.x2, 1e-12));
    const Point2 eta = lewy_map(f, x);
    CHECK_THAT(eta.x1, WithinAbs(2 * x.x1, 1e-12));
    CHECK_THAT(eta.x2, WithinAbs(2 * x.x2, 1e-12));
  }
  const Point2 e = lewy_map(zero_graph(), {1.0, 1.0});
  CHECK_THAT(e.x1, WithinAbs(2.0, 1e-14));
  CHECK_THAT(e.x2, WithinAbs(2.0, 1e-14));
}

TEST_CASE("potentials of an affine graph are linear", "[lewy]") {
  const auto f = graph_from_expressions({"0.3*x1 - 0.2*x2", "0.1*x1 + 0.4*x2", "0.2*x1"});
  const MetricSample g = metric_at(f, {0.0, 0.0});
  for (int k = 0; k < 10; ++k) {
    const Point2 x{testing::uniform(-3, 3), testing::uniform(-3, 3)};
    const XiResult r = xi_potentials(f, x, {0.0, 0.0});
    CHECK_THAT(r.xi1, WithinAbs((g.g11 * x.x1 + g.g12 * x.x2) / g.W, 1e-12));
    CHECK_THAT(r.xi2, WithinAbs((g.g12 * x.x1 + g.g22 * x.x2) / g.W, 1e-12));
  }
}

TEST_CASE("potentials do not depend on the path", "[lewy]") {
  const auto d = make_canonical(1.0, 1.0, {}, "z", 2);
  const auto f = graph_surface(d);
  XiOptions a, b;
  b.path = LPath::vertical_first;
  for (int k = 0; k < 10; ++k) {
    const Point2 x{testing::uniform(-1.5, 1.5), testing::uniform(-1.5, 1.5)};
    const XiResult r1 = xi_potentials(f, x, {0.0, 0.0}, a), r2 = xi_potentials(f, x, {0.0, 0.0}, b);
    CHECK(std::abs(r1.xi1 - r2.xi1) < 5e-10);
    CHECK(std::abs(r1.xi2 - r2.xi2) < 5e-10);
    CHECK(r1.closedness < 1e-6);
    CHECK_FALSE(r1.warning.has_value());
  }
}

TEST_CASE("closedness defect flags non-stationary graphs", "[lewy]") {
  const auto f = graph_from_expressions({"0.5*x1^2", "0.0"});
  const XiResult r = xi_potentials(f, {0.5, 0.3}, {0.0, 0.0});
  CHECK(r.closedness > 1e-3);
  CHECK(r.warning.has_value());
  const auto mww = graph_from_expressions({"2*sinh(x1)*cos(0.70710678118654757*x2)", "2*cosh(x1)*cos(0.70710678118654757*x2)"});
  REQUIRE_THROWS_KIND(xi_potentials(mww, {0.0, 2.0}, {0.0, 0.0}), ErrorKind::not_spacelike);
}

TEST_CASE("Jacobian of the Lewy map", "[lewy]") {
  const LewyJacobian j0 = lewy_jacobian(zero_graph(), {0.3, 0.1});
  CHECK(j0.JL[0][0] == 2.0);
  CHECK(j0.JL[0][1] == 0.0);
  CHECK(j0.JL[1][1] == 2.0);
  CHECK(j0.lambda1 == 1.0);
  CHECK(j0.lambda2 == 1.0);

  const LewyJacobian j = lewy_jacobian(metric_from_components(4.0, 0.0, 1.0));
  CHECK(j.JL[0][0] == 3.0);
  CHECK(j.JL[1][1] == 1.5);
  CHECK(j.eig_max == 3.0);
  CHECK(j.eig_min == 1.5);
  CHECK(j.lambda1 * j.lambda2 == 2.0);
  REQUIRE_THROWS_KIND(lewy_jacobian(metric_from_components(1.0, 2.0, 1.0)), ErrorKind::not_spacelike);
}

TEST_CASE("Lewy Jacobian eigenvalues on random spacelike samples", "[lewy]") {
  int spacelike = 0;
  for (int k = 0; k < 2000; ++k) {
    const double g11 = testing::uniform(0.01, 10), g22 = testing::uniform(0.01, 10);
    const double g12 = testing::uniform(-0.95, 0.95) * std::sqrt(g11 * g22);
    const MetricSample g = metric_from_components(g11, g12, g22);
    if (!g.spacelike) continue;
    ++spacelike;
    const LewyJacobian j = lewy_jacobian(g);
    const auto ev = jacobi_eigenvalues(j.JL[0][0], j.JL[0][1], j.JL[1][1]);
    CHECK(ev[1] > 1.0);
    CHECK_THAT(j.eig_min, WithinRel(ev[1], 1e-10));
    CHECK_THAT(j.eig_max, WithinRel(ev[0], 1e-10));
    CHECK_THAT(j.lambda1 * j.lambda2, WithinRel(g.W, 1e-12));
    const auto gev = jacobi_eigenvalues(g11, g12, g22);
    CHECK_THAT(j.lambda1 * j.lambda1, WithinRel(gev[0], 1e-10));
    CHECK(j.det() >= 4.0 - 1e-12);
    CHECK_THAT(j.det(), WithinRel((1 + j.lambda1 / j.lambda2) * (1 + j.lambda2 / j.lambda1), 1e-10));
  }
  CHECK(spacelike > 1000);
  CHECK_THAT(lewy_jacobian(metric_from_components(3.0, 0.0, 3.0)).det(), WithinAbs(4.0, 1e-14));
}

TEST_CASE("conformal check on trivial graphs", "[lewy]") {
  const Grid grid = Grid::square(1.0, 5);
  for (const GraphSurface& f : {zero_graph(), lightlike_graph()}) {
    const ConformalReport r = conformal_check(f, grid);
    CHECK(r.points == 25);
    CHECK(r.max_anisotropy < 1e-10);
    CHECK(r.max_shear < 1e-10);
    CHECK(r.max_factor_dev < 1e-10);
    CHECK(r.min_jl_eigenvalue == 2.0);
  }
}

TEST_CASE("Lewy coordinates are isothermal on canonical surfaces", "[lewy]") {
  const Grid grid = Grid::square(1.0, 5);
  for (auto d : {make_canonical(1.0, 1.0, {}, "z", 2), make_canonical(0.0, 2.0, {}, "z^2", 2),
                 make_canonical(0.5, 1.5, {0.3}, "sinh(z)", 3)}) {
    const GraphSurface f = graph_surface(d);
    const ConformalReport r = conformal_check(f, grid);
    CHECK(r.max_anisotropy < 1e-4);
    CHECK(r.max_shear < 1e-4);
    CHECK(r.max_factor_dev < 1e-4);
    CHECK(r.max_closedness < 1e-6);
    CHECK(r.min_jl_eigenvalue > 1.0);
  }
}

TEST_CASE("Lewy chart is an affine image of the isothermal parameter", "[lewy]") {
  // Two global isothermal charts differ by a similarity, so the Lewy
  // conformal factor is a constant multiple of e^{2w}.
  const auto d = make_canonical(1.0, 1.0, {}, "z", 2);
  const GraphSurface f = graph_surface(d);
  const Grid grid = Grid::square(1.0, 5);
  double lo = INFINITY, hi = 0.0;
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const Point2 x = grid.at(k);
    const double ratio = lewy_jacobian(f, x).conformal / conformal_factor(d, chart_z(d, x));
    lo = std::min(lo, ratio);
    hi = std::max(hi, ratio);
  }
  CHECK((hi - lo) / hi < 1e-10);
}

TEST_CASE("beta functions are holomorphic in the Lewy chart", "[lewy]") {
  const Grid grid = Grid::square(1.0, 5);
  const HolomorphyReport z = beta_holomorphy_check(zero_graph(), grid);
  CHECK(z.max_cr_residual < 1e-12);
  CHECK(z.inverse_jacobian_positive);

  const HolomorphyReport l = beta_holomorphy_check(lightlike_graph(), grid);
  CHECK(l.max_cr_residual < 1e-8);
  CHECK(l.inverse_jacobian_positive);
  const auto b = lewy_betas(lightlike_graph(), {0.3, -0.4});
  CHECK_THAT(b[0].real(), WithinAbs(0.25, 1e-14));
  CHECK_THAT(b[1].imag(), WithinAbs(-0.25, 1e-14));
  CHECK(l.max_ratio_dev < 1e-12);

  const auto d = make_canonical(1.0, 1.0, {}, "z", 2);
  const HolomorphyReport c = beta_holomorphy_check(graph_surface(d), grid);
  CHECK(c.max_cr_residual < 1e-4);
  CHECK(c.inverse_jacobian_positive);
  CHECK(c.min_inverse_jacobian > 0.0);
}
