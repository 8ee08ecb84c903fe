#include <cmath>
#include <complex>
#include <numbers>

#include "stationary/quadrature.hpp"
#include "support.hpp"

using namespace stationary;

TEST_CASE("16-point rule weights and exactness", "[quadrature]") {
  const auto& rule = quad::gauss_legendre_rule<16>();
  double w = 0.0;
  for (double x : rule.weights) w += x;
  CHECK_THAT(w, WithinAbs(2.0, 1e-14));
  for (int i = 0; i < 16; ++i) CHECK(rule.nodes[i] == -rule.nodes[15 - i]);
  // exact through degree 31
  for (int deg : {0, 2, 10, 30}) {
    const double got = quad::gauss_legendre16([&](double x) { return std::pow(x, deg); }, -1.0, 1.0);
    CHECK_THAT(got, WithinRel(2.0 / (deg + 1), 1e-13));
  }
  CHECK_THAT(quad::gauss_legendre16([](double x) { return std::pow(x, 31); }, 0.0, 1.0), WithinRel(1.0 / 32, 1e-13));
}

TEST_CASE("adaptive Gauss-Legendre on smooth and peaked integrands", "[quadrature]") {
  auto r = quad::integrate([](double x) { return std::exp(x); }, 0.0, 1.0, 1e-13);
  CHECK_THAT(r.value, WithinAbs(std::numbers::e - 1.0, 1e-13));
  r = quad::integrate([](double x) { return 1.0 / (1e-4 + x * x); }, -1.0, 1.0, 1e-10);
  CHECK_THAT(r.value, WithinRel(2.0 * std::atan(1.0 / 1e-2) / 1e-2, 1e-10));
  CHECK(r.intervals > 1);
  const auto c = quad::integrate([](double t) { return std::exp(std::complex<double>(0.0, t)); }, 0.0,
                                 std::numbers::pi, 1e-13);
  CHECK_THAT(c.value.real(), WithinAbs(0.0, 1e-13));
  CHECK_THAT(c.value.imag(), WithinAbs(2.0, 1e-13));
  CHECK(quad::integrate([](double) { return 1.0; }, 2.0, 2.0, 1e-12).value == 0.0);
}

TEST_CASE("quadrature failures are reported", "[quadrature]") {
  REQUIRE_THROWS_KIND(quad::integrate([](double x) { return 1.0 / x; }, 0.0, 1.0, 1e-12), ErrorKind::quadrature);
  REQUIRE_THROWS_KIND(quad::integrate([](double x) { return std::sin(1.0 / (x + 1e-9)); }, 0.0, 1.0, 1e-14, 64),
                      ErrorKind::quadrature);
  REQUIRE_THROWS_KIND(quad::integrate([](double x) { return x; }, 0.0, 1.0, 0.0), ErrorKind::precondition);
}

TEST_CASE("adaptive Simpson and its evaluation budget", "[quadrature]") {
  quad::Budget budget;
  const double v = quad::adaptive_simpson([](double x) { return std::sin(x); }, 0.0, std::numbers::pi, 1e-12, 4, budget);
  CHECK_THAT(v, WithinAbs(2.0, 1e-11));
  CHECK(budget.used > 0);
  quad::Budget tiny{100, 0};
  REQUIRE_THROWS_KIND(
      quad::adaptive_simpson([](double x) { return std::sqrt(std::abs(x)); }, -1.0, 1.0, 1e-14, 1, tiny),
      ErrorKind::quadrature);
  CHECK_THAT(quad::composite_simpson([](double x) { return x * x * x; }, 0.0, 2.0, 3), WithinAbs(4.0, 1e-14));
}
