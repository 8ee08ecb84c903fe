#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <vector>

#include "stationary/holo_expr.hpp"
#include "support.hpp"

using namespace stationary;
using namespace std::complex_literals;

namespace {

// Taylor series of exp summed until the terms vanish; independent of std::exp.
Complex exp_series(Complex z) {
  Complex term = 1.0, sum = 1.0;
  for (int k = 1; k < 200; ++k) {
    term *= z / static_cast<double>(k);
    sum += term;
    if (std::abs(term) < 1e-18 * std::abs(sum)) break;
  }
  return sum;
}

const std::vector<std::string> corpus = {
    "z",
    "i",
    "1",
    "2.5",
    "-z",
    "z^2",
    "z^-2",
    "-z^2",
    "(-z)^3",
    "z + 1",
    "z - i",
    "2*z",
    "z/3",
    "(1+2*i)*z^2 - sinh(z)",
    "cosh(z)",
    "sinh(z)",
    "exp(z)",
    "sin(z)",
    "cos(z)",
    "exp(-z)",
    "exp(z^2)",
    "cosh(2*z) + sinh(3*z)",
    "(z+1)*(z-1)",
    "(z+1)/(z-2)",
    "1/(1+z^2)",
    "z*z*z",
    "z^3 - 3*z + 2",
    "sin(z)^2 + cos(z)^2",
    "exp(i*z)",
    "cosh(sinh(z))",
    "sinh(cosh(z))",
    "exp(exp(z))",
    "(0.5-0.25*i)*exp(2*z)",
    "1e-3*z^4",
    "2.5e2 + z",
    "((z))",
    "-(z+1)",
    "-(-z)",
    "z^0",
    "z^1",
    "3*z^2*sin(z)",
    "sin(z)/cos(z)",
    "cos(z^2 - i)",
    "sinh(z)*cosh(z)",
    "(z - 1)^5",
    "exp(z)*exp(-z)",
    "i*i",
    "z/(z+i)^2",
    "1 - z + z^2 - z^3",
    "cosh(0.5*z) - 2*i*sinh(0.25*z)",
};

}  // namespace

TEST_CASE("parse examples", "[holo_expr]") {
  const HoloExpr c = parse("cosh(z)");
  CHECK(c.root().op == expr_detail::Op::cosh);
  const HoloExpr e = parse("(1+2*i)*z^2 - sinh(z)");
  CHECK(e.root().op == expr_detail::Op::sub);
  CHECK(e.root().lhs->op == expr_detail::Op::mul);
  CHECK(e.root().lhs->rhs->op == expr_detail::Op::pow);
  CHECK(e.root().rhs->op == expr_detail::Op::sinh);
  const Complex z(0.3, -0.7);
  CHECK(std::abs(e(z) - ((1.0 + 2.0i) * z * z - std::sinh(z))) < 1e-15);
  CHECK(parse("  z  +\t1 ") == parse("z+1"));
}

TEST_CASE("parse errors carry kind and byte offset", "[holo_expr]") {
  REQUIRE_THROWS_KIND(parse("log(z)"), ErrorKind::unknown_function);
  REQUIRE_THROWS_KIND(parse("z^1.5"), ErrorKind::non_integer_exponent);
  REQUIRE_THROWS_KIND(parse("z^y"), ErrorKind::non_integer_exponent);
  REQUIRE_THROWS_KIND(parse(""), ErrorKind::syntax);
  REQUIRE_THROWS_KIND(parse("(z+1"), ErrorKind::syntax);
  REQUIRE_THROWS_KIND(parse("z +* 2"), ErrorKind::syntax);
  REQUIRE_THROWS_KIND(parse("w"), ErrorKind::syntax);
  REQUIRE_THROWS_KIND(parse("z)"), ErrorKind::syntax);
  try {
    parse("z + (2 * )");
    FAIL("expected a syntax error");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("byte offset 9") != std::string::npos);
  }
}

TEST_CASE("evaluation", "[holo_expr]") {
  CHECK(parse("sinh(z)")(0.0) == Complex(0.0));
  CHECK(parse("cosh(z)")(0.0) == Complex(1.0));
  const Complex ipi(0.0, std::numbers::pi);
  const Complex v = parse("exp(z)")(ipi);
  CHECK(std::abs(v - Complex(-1.0)) < 1e-15);
  CHECK(std::abs(v - exp_series(ipi)) < 1e-15);
  for (int k = 0; k < 50; ++k) {
    const Complex z = testing::uniform_z(3.0);
    CHECK(std::abs(parse("exp(z)")(z) - exp_series(z)) <= 1e-13 * std::abs(exp_series(z)));
    const Complex ch = 0.5 * (exp_series(z) + exp_series(-z));
    CHECK(std::abs(parse("cosh(z)")(z) - ch) <= 1e-13 * (1.0 + std::abs(ch)));
  }
  CHECK(parse("z^-2")(2.0) == Complex(0.25));
}

TEST_CASE("evaluation errors", "[holo_expr]") {
  REQUIRE_THROWS_KIND(parse("1/(z-1)")(1.0), ErrorKind::division_by_zero);
  try {
    parse("z + 1/(z-1)")(1.0);
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("offset 5") != std::string::npos);
  }
  REQUIRE_THROWS_KIND(parse("exp(exp(z))")(10.0), ErrorKind::evaluation);
  REQUIRE_THROWS_KIND(parse("z")(Complex(NAN, 0.0)), ErrorKind::precondition);
}

TEST_CASE("symbolic derivative", "[holo_expr]") {
  CHECK(parse("z^3").derive()(2.0) == Complex(12.0));
  CHECK(parse("cosh(z)").derive()(0.0) == Complex(0.0));
  CHECK(parse("sinh(z)").derive() == parse("cosh(z)"));
  CHECK(parse("cosh(z)").derive() == parse("sinh(z)"));
  CHECK(parse("5").derive().is_literal_zero());
  const HoloExpr e = parse("1/(1+z^2)");
  CHECK(std::abs(e.derive().derive()(0.0) - Complex(-2.0)) < 1e-15);
}

TEST_CASE("derivative agrees with central differences", "[holo_expr]") {
  const double h = 1e-5;
  for (const auto& s : corpus) {
    const HoloExpr e = parse(s), d = e.derive();
    for (int k = 0; k < 5; ++k) {
      const Complex z = testing::uniform_z(1.0);
      Complex fd, exact;
      try {
        fd = (e(z + h) - e(z - h)) / (2.0 * h);
        exact = d(z);
      } catch (const Error&) {
        continue;  // near a pole of a quotient
      }
      CHECK(std::abs(fd - exact) <= 1e-8 * (1.0 + std::abs(exact)) * (1.0 + std::abs(e(z))));
    }
  }
}

TEST_CASE("print then parse reproduces the tree", "[holo_expr]") {
  REQUIRE(corpus.size() == 50);
  for (const auto& s : corpus) {
    const HoloExpr e = parse(s);
    const HoloExpr back = parse(e.print());
    INFO(s << " -> " << e.print());
    CHECK(back == e);
    CHECK(parse(back.print()) == back);
  }
}

TEST_CASE("Cauchy-Riemann equations hold numerically", "[holo_expr]") {
  const double h = 1e-4;
  for (const auto& s : corpus) {
    const HoloExpr e = parse(s);
    for (int k = 0; k < 3; ++k) {
      const Complex z = testing::uniform_z(1.0);
      Complex d1, d2;
      try {
        d1 = (e(z + h) - e(z - h)) / (2.0 * h);
        d2 = (e(z + Complex(0, h)) - e(z - Complex(0, h))) / (2.0 * h);
      } catch (const Error&) {
        continue;
      }
      const double scale = 1.0 + std::abs(d1);
      CHECK(std::abs(d1.real() - d2.imag()) <= 1e-6 * scale);
      CHECK(std::abs(d1.imag() + d2.real()) <= 1e-6 * scale);
    }
  }
}

TEST_CASE("segment integrals", "[holo_expr]") {
  CHECK(std::abs(integrate_segment(parse("cosh(z)"), 0.0, 1.0) - std::sinh(1.0)) < 1e-12);
  CHECK(std::abs(integrate_segment(parse("1"), 0.0, Complex(1, 1)) - Complex(1, 1)) < 1e-14);
  CHECK(std::abs(integrate_segment(parse("z"), 0.0, 2.0) - Complex(2.0)) < 1e-14);
  REQUIRE_THROWS_KIND(integrate_segment(parse("z"), 0.0, 1.0, 0.0), ErrorKind::precondition);
}

TEST_CASE("segment integrals are path independent", "[holo_expr]") {
  const double tol = 1e-12;
  for (const char* s : {"exp(z)", "z^3 - 3*z + 2", "cosh(2*z) + sinh(3*z)", "cos(z^2 - i)", "exp(i*z)"}) {
    const HoloExpr e = parse(s);
    for (int k = 0; k < 5; ++k) {
      const Complex z0 = testing::uniform_z(1.5), z1 = testing::uniform_z(1.5), zm = testing::uniform_z(1.5);
      const Complex direct = integrate_segment(e, z0, z1, tol);
      const Complex via = integrate_segment(e, z0, zm, tol) + integrate_segment(e, zm, z1, tol);
      CHECK(std::abs(direct - via) <= 2.0 * tol * (1.0 + std::abs(direct)));
    }
  }
}

TEST_CASE("expressions in several variables", "[holo_expr]") {
  const Expr e = Expr::parse("x1^2 - x2^2 + i*x1*x2", {"x1", "x2"});
  const std::array<Complex, 2> x{Complex(2.0), Complex(3.0)};
  CHECK(e.eval(x) == Complex(-5.0, 6.0));
  CHECK(e.derive(0).eval(x) == Complex(4.0, 3.0));
  CHECK(e.derive(1).eval(x) == Complex(-6.0, 2.0));
  REQUIRE_THROWS_KIND(e.eval(Complex(1.0)), ErrorKind::dimension);
  REQUIRE_THROWS_KIND(Expr::parse("z", {"x1", "x2"}), ErrorKind::syntax);
}
