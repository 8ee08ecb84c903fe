#pragma once

#include <complex>
#include <random>

#include "catch_amalgamated.hpp"

using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace testing {

inline std::mt19937_64& rng() {
  static std::mt19937_64 gen(20240611);
  return gen;
}

inline double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng()); }

inline std::complex<double> uniform_z(double r) { return {uniform(-r, r), uniform(-r, r)}; }

}  // namespace testing

#define REQUIRE_THROWS_KIND(expr, k)                        \
  do {                                                      \
    try {                                                   \
      (void)(expr);                                         \
      FAIL("no exception from " #expr);                     \
    } catch (const stationary::Error& e_) {                 \
      CHECK(e_.kind() == (k));                              \
    }                                                       \
  } while (0)
