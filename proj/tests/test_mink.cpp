#include <cmath>
#include <vector>

#include "stationary/mink.hpp"
#include "support.hpp"

using namespace stationary;

TEST_CASE("inner product signature", "[mink]") {
  CHECK(mink_inner(MinkVector{1, 1}, MinkVector{1, 1}) == 0.0);
  CHECK(mink_inner(MinkVector{0, 0, 1}, MinkVector{0, 0, 1}) == -1.0);
  CHECK(mink_inner(MinkVector{1, 2, 3}, MinkVector{4, 5, 6}) == -4.0);
  CHECK(mink_inner(MinkVector{2}, MinkVector{3}) == -6.0);
}

TEST_CASE("inner product rejects mismatched dimensions", "[mink]") {
  REQUIRE_THROWS_KIND(mink_inner(MinkVector{1, 2}, MinkVector{1, 2, 3}), ErrorKind::dimension);
  MinkVector u{1, 2};
  REQUIRE_THROWS_KIND((u += MinkVector{1, 2, 3}), ErrorKind::dimension);
}

TEST_CASE("causal classes", "[mink]") {
  CHECK(causal_class(MinkVector{1, 1}, 0.0) == Causal::lightlike);
  CHECK(causal_class(MinkVector{1, 0}, 0.0) == Causal::spacelike);
  CHECK(causal_class(MinkVector{0, 0, 5}, 0.0) == Causal::timelike);
  CHECK(causal_class(MinkVector{3, 4, 5}, 0.0) == Causal::lightlike);
  REQUIRE_THROWS_KIND(causal_class(MinkVector{1, 0}, -1.0), ErrorKind::precondition);
}

TEST_CASE("default causal tolerance absorbs rounding", "[mink]") {
  const double s = std::sqrt(2.0);
  const MinkVector u{1.0, 1.0, s};
  CHECK(std::abs(mink_inner(u, u)) > 0.0);
  CHECK(causal_class(u) == Causal::lightlike);
  CHECK(causal_class(MinkVector{1e8, 1e8 + 1.0}) == Causal::timelike);
}

TEST_CASE("vector arithmetic", "[mink]") {
  MinkVector u{1, 2, 3};
  const MinkVector w = 2.0 * u + MinkVector{0, 0, 1};
  CHECK(w == MinkVector{2, 4, 7});
  CHECK(MinkVector::zero(4).size() == 4);
  REQUIRE_THROWS_KIND(MinkVector(std::vector<double>{}), ErrorKind::dimension);
}

TEST_CASE("bilinearity and symmetry on random vectors", "[mink]") {
  for (int trial = 0; trial < 500; ++trial) {
    const int n = 2 + trial % 5;
    std::vector<double> a(n), b(n), c(n);
    for (int k = 0; k < n; ++k) {
      a[k] = testing::uniform(-10, 10);
      b[k] = testing::uniform(-10, 10);
      c[k] = testing::uniform(-10, 10);
    }
    const MinkVector u(a), v(b), w(c);
    const double s = testing::uniform(-10, 10), t = testing::uniform(-10, 10);
    const double lhs = mink_inner(s * u + t * w, v);
    const double rhs = s * mink_inner(u, v) + t * mink_inner(w, v);
    double scale = 0.0;
    for (int k = 0; k < n; ++k) scale += (std::abs(s * a[k]) + std::abs(t * c[k])) * std::abs(b[k]);
    CHECK(std::abs(lhs - rhs) <= 1e-12 * scale);
    CHECK(mink_inner(u, v) == mink_inner(v, u));
  }
}
