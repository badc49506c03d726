#pragma once

#include <stdexcept>
#include <vector>

#include "ehfl/kernels.hpp"

namespace ehfl::vec {

using Vec = std::vector<double>;

inline void check_same_size(const Vec& a, const Vec& b, const char* what) {
  if (a.size() != b.size()) throw std::invalid_argument(std::string(what) + ": dimension mismatch");
}

inline void add(Vec& dst, const Vec& a) {
  check_same_size(dst, a, "vec::add");
  kernels::active().add(dst.data(), a.data(), dst.size());
}

inline void axpy(Vec& dst, double a, const Vec& x) {
  check_same_size(dst, x, "vec::axpy");
  kernels::active().axpy(dst.data(), a, x.data(), dst.size());
}

inline void scale(Vec& dst, double a) { kernels::active().scale(dst.data(), a, dst.size()); }

inline double dot(const Vec& a, const Vec& b) {
  check_same_size(a, b, "vec::dot");
  return kernels::active().dot(a.data(), b.data(), a.size());
}

inline double norm_sq(const Vec& a) { return kernels::active().dot(a.data(), a.data(), a.size()); }

inline double dist_sq(const Vec& a, const Vec& b) {
  check_same_size(a, b, "vec::dist_sq");
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    acc += d * d;
  }
  return acc;
}

inline void fill(Vec& dst, double v) { std::fill(dst.begin(), dst.end(), v); }

}  // namespace ehfl::vec
