#pragma once

// Minkowski linear algebra over R_1^n. The timelike coordinate is always the
// last one: <u,v> = u_1 v_1 + ... + u_{n-1} v_{n-1} - u_n v_n.

#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "stationary/error.hpp"

namespace stationary {

class MinkVector {
 public:
  MinkVector() = default;
  explicit MinkVector(std::vector<double> coords) : coords_(std::move(coords)) { check(); }
  MinkVector(std::initializer_list<double> coords) : coords_(coords) { check(); }

  static MinkVector zero(std::size_t n) { return MinkVector(std::vector<double>(n, 0.0)); }

  std::size_t size() const noexcept { return coords_.size(); }
  double operator[](std::size_t i) const { return coords_[i]; }
  double& operator[](std::size_t i) { return coords_[i]; }
  std::span<const double> coords() const noexcept { return coords_; }

  MinkVector& operator+=(const MinkVector& o) {
    same_dim(o);
    for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] += o.coords_[i];
    return *this;
  }
  MinkVector& operator*=(double s) {
    for (auto& c : coords_) c *= s;
    return *this;
  }
  friend MinkVector operator+(MinkVector a, const MinkVector& b) { return a += b; }
  friend MinkVector operator*(double s, MinkVector a) { return a *= s; }

  friend bool operator==(const MinkVector&, const MinkVector&) = default;

  void same_dim(const MinkVector& o) const {
    if (o.size() != size())
      throw Error(ErrorKind::dimension,
                  "vectors in R_1^" + std::to_string(size()) + " and R_1^" + std::to_string(o.size()));
  }

 private:
  // R_1^1 (a bare time axis) is allowed so that codimension-one graphs
  // f: R^2 -> R_1^1 share the same machinery.
  void check() const {
    if (coords_.empty()) throw Error(ErrorKind::dimension, "Minkowski vector needs at least one coordinate");
  }

  std::vector<double> coords_;
};

inline double mink_inner(std::span<const double> u, std::span<const double> v) {
  if (u.size() != v.size() || u.empty())
    throw Error(ErrorKind::dimension, "inner product of vectors with sizes " + std::to_string(u.size()) +
                                          " and " + std::to_string(v.size()));
  const std::size_t n = u.size();
  double s = 0.0;
  for (std::size_t k = 0; k + 1 < n; ++k) s += u[k] * v[k];
  return s - u[n - 1] * v[n - 1];
}

inline double mink_inner(const MinkVector& u, const MinkVector& v) { return mink_inner(u.coords(), v.coords()); }

enum class Causal { spacelike, timelike, lightlike };

inline const char* to_string(Causal c) {
  switch (c) {
    case Causal::spacelike: return "spacelike";
    case Causal::timelike: return "timelike";
    case Causal::lightlike: return "lightlike";
  }
  return "?";
}

/// Scale-aware zero test: 1e-12 * (1 + |u|_E^2).
inline double default_causal_tolerance(const MinkVector& u) {
  double e = 0.0;
  for (double c : u.coords()) e += c * c;
  return 1e-12 * (1.0 + e);
}

inline Causal causal_class(const MinkVector& u, double tau_causal) {
  if (tau_causal < 0.0) throw Error(ErrorKind::precondition, "causal tolerance must be nonnegative");
  const double s = mink_inner(u, u);
  if (std::abs(s) <= tau_causal) return Causal::lightlike;
  return s > 0.0 ? Causal::spacelike : Causal::timelike;
}

inline Causal causal_class(const MinkVector& u) { return causal_class(u, default_causal_tolerance(u)); }

}  // namespace stationary
