#pragma once

#include <cassert>
#include <cmath>
#include <cstddef>
#include <vector>

namespace soco {

/// Dense real vector. Dimensions in this toolkit are small (d <= 5 in the
/// shipped experiment families), so plain loops beat any BLAS detour.
using Vec = std::vector<double>;

inline Vec zeros(int d) { return Vec(static_cast<std::size_t>(d), 0.0); }

inline double dot(const Vec& a, const Vec& b) {
  assert(a.size() == b.size());
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline double norm2(const Vec& a) {
  double s = 0.0;
  for (double v : a) s += v * v;
  return std::sqrt(s);
}

inline double norm1(const Vec& a) {
  double s = 0.0;
  for (double v : a) s += std::fabs(v);
  return s;
}

inline double dist2(const Vec& a, const Vec& b) {
  assert(a.size() == b.size());
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return std::sqrt(s);
}

inline bool all_finite(const Vec& a) {
  for (double v : a) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

inline void scale_inplace(Vec& a, double s) {
  for (double& v : a) v *= s;
}

inline void add_inplace(Vec& a, const Vec& b) {
  assert(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
}

}  // namespace soco
