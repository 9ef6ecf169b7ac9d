#pragma once

// Per-chunk compensated reductions shared by the serial and OpenMP kernels.

#include <cstddef>
#include <type_traits>

#include "orthofit/double_double.hpp"

namespace orthofit::kernels::detail {

// Dot2-style compensated dot product over four independent lanes, merged in
// a fixed order. The partial is returned unrounded.
inline DoubleDouble chunk_dot(const double* a, const double* b, std::size_t n) {
  double p[4] = {0.0, 0.0, 0.0, 0.0};
  double s[4] = {0.0, 0.0, 0.0, 0.0};
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    for (int k = 0; k < 4; ++k) {
      double h, r, q;
      two_prod(a[i + k], b[i + k], h, r);
      two_sum(p[k], h, p[k], q);
      s[k] += q + r;
    }
  }
  for (; i < n; ++i) {
    double h, r, q;
    two_prod(a[i], b[i], h, r);
    two_sum(p[0], h, p[0], q);
    s[0] += q + r;
  }
  DoubleDouble acc;
  for (int k = 0; k < 4; ++k) {
    acc += p[k];
    acc += s[k];
  }
  return acc;
}

inline DoubleDouble chunk_dot(const DoubleDouble* a, const DoubleDouble* b, std::size_t n) {
  DoubleDouble acc0, acc1;
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    acc0 += a[i] * b[i];
    acc1 += a[i + 1] * b[i + 1];
  }
  if (i < n) acc0 += a[i] * b[i];
  return acc0 + acc1;
}

inline DoubleDouble chunk_sum(const double* a, std::size_t n) {
  DoubleDouble acc;
  for (std::size_t i = 0; i < n; ++i) acc += a[i];
  return acc;
}

inline DoubleDouble chunk_sum(const DoubleDouble* a, std::size_t n) {
  DoubleDouble acc;
  for (std::size_t i = 0; i < n; ++i) acc += a[i];
  return acc;
}

template <class Real>
Real finish(const DoubleDouble& acc) {
  if constexpr (std::is_same_v<Real, double>)
    return acc.hi + acc.lo;
  else
    return acc;
}

constexpr std::size_t chunk_count(std::size_t n, std::size_t chunk) { return (n + chunk - 1) / chunk; }

}  // namespace orthofit::kernels::detail
