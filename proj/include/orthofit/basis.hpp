#pragma once

// Graded bivariate monomials h_t = x^(m-j) y^j in the order 1, x, y, x^2, xy,
// y^2, ... and their derivatives. Values and second derivatives use the
// block recursions (each degree-m block is built from block m-1), so that
// they can run at any working precision.

#include <cstddef>
#include <vector>

#include "orthofit/matrix.hpp"

namespace orthofit {

struct BasisIndex {
  std::size_t t = 0;  ///< flat index
  std::size_t m = 0;  ///< total degree
  std::size_t j = 0;  ///< power of y; the power of x is m - j

  std::size_t x_power() const noexcept { return m - j; }
  std::size_t y_power() const noexcept { return j; }
};

constexpr std::size_t block_start(std::size_t m) noexcept { return m * (m + 1) / 2; }

/// Number of basis functions of total degree <= m.
constexpr std::size_t columns_for_degree(std::size_t m) noexcept { return (m + 1) * (m + 2) / 2; }

BasisIndex degree_block(std::size_t t);

/// Entry t is true iff the x-power of h_t is odd.
std::vector<bool> odd_field_mask(std::size_t L);

template <class Real>
std::vector<Real> basis_values(const Real& x, const Real& y, std::size_t L) {
  std::vector<Real> h(L + 1);
  h[0] = Real{1.0};
  if (L >= 1) h[1] = x;
  if (L >= 2) h[2] = y;
  for (std::size_t m = 2;; ++m) {
    const std::size_t s = block_start(m);
    if (s > L) break;
    h[s] = x * h[s - m];
    for (std::size_t j = 1; j <= m && s + j <= L; ++j) h[s + j] = y * h[s + j - m - 1];
  }
  return h;
}

template <class Real>
std::vector<Real> basis_d2x(const Real& x, const Real& y, std::size_t L) {
  std::vector<Real> h(L + 1, Real{0.0});
  if (L >= 3) h[3] = Real{2.0};
  for (std::size_t m = 3;; ++m) {
    const std::size_t s = block_start(m);
    if (s > L) break;
    h[s] = (Real{static_cast<double>(m)} / static_cast<double>(m - 2)) * x * h[s - m];
    for (std::size_t j = 1; j + 2 <= m && s + j <= L; ++j) h[s + j] = y * h[s + j - m - 1];
  }
  return h;
}

template <class Real>
std::vector<Real> basis_d2y(const Real& x, const Real& y, std::size_t L) {
  std::vector<Real> h(L + 1, Real{0.0});
  if (L >= 5) h[5] = Real{2.0};
  for (std::size_t m = 3;; ++m) {
    const std::size_t s = block_start(m);
    if (s > L) break;
    for (std::size_t j = 2; j + 1 <= m && s + j <= L; ++j) h[s + j] = x * h[s + j - m];
    if (s + m <= L) h[s + m] = (Real{static_cast<double>(m)} / static_cast<double>(m - 2)) * y * h[s - 1];
  }
  return h;
}

/// First y-derivative j x^(m-j) y^(j-1), from the power rule.
template <class Real>
std::vector<Real> basis_dy(const Real& x, const Real& y, std::size_t L) {
  std::vector<Real> h(L + 1, Real{0.0});
  if (L < 2) return h;
  // Reuse the value recursion one degree down: d/dy of x^(m-j) y^j is j * h[(m-1, j-1)].
  const auto lower = basis_values(x, y, L);
  for (std::size_t t = 2; t <= L; ++t) {
    const auto idx = degree_block(t);
    if (idx.j == 0) continue;
    h[t] = static_cast<double>(idx.j) * lower[block_start(idx.m - 1) + idx.j - 1];
  }
  return h;
}

/// Per-point tables of h_t and of d2x + d2y (the Laplacian) over a point set.
template <class Real>
struct BasisTable {
  ColumnMatrix<Real> values;
  ColumnMatrix<Real> d2x;
  ColumnMatrix<Real> d2y;
  std::size_t L = 0;
};

}  // namespace orthofit
