#pragma once

// Independent reference computations for the tests. Nothing here calls the
// library's numerical code: polynomials are manipulated symbolically as
// exponent maps and linear systems are solved in binary128.

#include <quadmath.h>

#include <cmath>
#include <cstddef>
#include <functional>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

namespace oracle {

using quad = __float128;

/// Sum of coeff * x^a * y^b keyed by (a, b).
class Poly {
 public:
  using Key = std::pair<int, int>;

  static Poly monomial(int a, int b, quad coeff = 1) {
    Poly p;
    p.terms_[{a, b}] = coeff;
    return p;
  }
  /// Graded order 1, x, y, x^2, xy, y^2, ... counted from 0.
  static Poly graded(std::size_t t) {
    std::size_t m = 0;
    while ((m + 1) * (m + 2) / 2 <= t) ++m;
    const int j = static_cast<int>(t - m * (m + 1) / 2);
    return monomial(static_cast<int>(m) - j, j);
  }

  Poly& add(const Poly& other, quad scale = 1) {
    for (const auto& [k, v] : other.terms_) terms_[k] += scale * v;
    return *this;
  }

  Poly d2x() const {
    Poly out;
    for (const auto& [k, v] : terms_)
      if (k.first >= 2) out.terms_[{k.first - 2, k.second}] += v * k.first * (k.first - 1);
    return out;
  }
  Poly d2y() const {
    Poly out;
    for (const auto& [k, v] : terms_)
      if (k.second >= 2) out.terms_[{k.first, k.second - 2}] += v * k.second * (k.second - 1);
    return out;
  }
  Poly dy() const {
    Poly out;
    for (const auto& [k, v] : terms_)
      if (k.second >= 1) out.terms_[{k.first, k.second - 1}] += v * k.second;
    return out;
  }
  Poly laplacian() const { return d2x().add(d2y()); }

  quad eval(quad x, quad y) const {
    quad acc = 0;
    for (const auto& [k, v] : terms_) {
      quad term = v;
      for (int i = 0; i < k.first; ++i) term *= x;
      for (int i = 0; i < k.second; ++i) term *= y;
      acc += term;
    }
    return acc;
  }
  double eval(double x, double y) const { return static_cast<double>(eval(quad{x}, quad{y})); }

  quad coeff(int a, int b) const {
    const auto it = terms_.find({a, b});
    return it == terms_.end() ? quad{0} : it->second;
  }

 private:
  std::map<Key, quad> terms_;
};

/// Solves A c = rhs by Gaussian elimination with full pivoting in binary128.
inline std::vector<quad> solve_full_pivot(std::vector<std::vector<quad>> A, std::vector<quad> rhs) {
  const std::size_t n = A.size();
  std::vector<std::size_t> col(n);
  for (std::size_t i = 0; i < n; ++i) col[i] = i;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pr = k, pc = k;
    quad best = 0;
    for (std::size_t i = k; i < n; ++i)
      for (std::size_t j = k; j < n; ++j)
        if (fabsq(A[i][j]) > best) {
          best = fabsq(A[i][j]);
          pr = i;
          pc = j;
        }
    if (best == 0) throw std::runtime_error("singular normal matrix");
    std::swap(A[k], A[pr]);
    std::swap(rhs[k], rhs[pr]);
    if (pc != k) {
      for (auto& row : A) std::swap(row[k], row[pc]);
      std::swap(col[k], col[pc]);
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      const quad f = A[i][k] / A[k][k];
      if (f == 0) continue;
      for (std::size_t j = k; j < n; ++j) A[i][j] -= f * A[k][j];
      rhs[i] -= f * rhs[k];
    }
  }
  std::vector<quad> y(n);
  for (std::size_t k = n; k-- > 0;) {
    quad s = rhs[k];
    for (std::size_t j = k + 1; j < n; ++j) s -= A[k][j] * y[j];
    y[k] = s / A[k][k];
  }
  std::vector<quad> c(n);
  for (std::size_t k = 0; k < n; ++k) c[col[k]] = y[k];
  return c;
}

/// Ordinary least squares over graded monomials `columns` via the normal equations.
/// Returns monomial coefficients aligned with `columns`.
inline std::vector<quad> least_squares(const std::vector<double>& xs, const std::vector<double>& ys,
                                       const std::vector<double>& z, const std::vector<std::size_t>& columns) {
  const std::size_t n = columns.size();
  std::vector<Poly> mono;
  for (auto t : columns) mono.push_back(Poly::graded(t));
  std::vector<std::vector<quad>> H(xs.size(), std::vector<quad>(n));
  for (std::size_t i = 0; i < xs.size(); ++i)
    for (std::size_t k = 0; k < n; ++k) H[i][k] = mono[k].eval(quad{xs[i]}, quad{ys[i]});
  std::vector<std::vector<quad>> A(n, std::vector<quad>(n, 0));
  std::vector<quad> rhs(n, 0);
  for (std::size_t i = 0; i < xs.size(); ++i)
    for (std::size_t r = 0; r < n; ++r) {
      rhs[r] += H[i][r] * quad{z[i]};
      for (std::size_t c = 0; c < n; ++c) A[r][c] += H[i][r] * H[i][c];
    }
  return solve_full_pivot(std::move(A), std::move(rhs));
}

inline quad eval_graded(const std::vector<quad>& c, const std::vector<std::size_t>& columns, double x, double y) {
  quad acc = 0;
  for (std::size_t k = 0; k < columns.size(); ++k) acc += c[k] * Poly::graded(columns[k]).eval(quad{x}, quad{y});
  return acc;
}

/// Central differences of a scalar function of (x, y).
inline double central_d2x(const std::function<double(double, double)>& f, double x, double y, double h) {
  return (f(x + h, y) - 2.0 * f(x, y) + f(x - h, y)) / (h * h);
}
inline double central_d2y(const std::function<double(double, double)>& f, double x, double y, double h) {
  return (f(x, y + h) - 2.0 * f(x, y) + f(x, y - h)) / (h * h);
}
inline double central_dy(const std::function<double(double, double)>& f, double x, double y, double h) {
  return (f(x, y + h) - f(x, y - h)) / (2.0 * h);
}

/// Natural log of |(other - tr) / tr|, computed directly.
inline double log_ratio(double tr, double other) { return std::log(std::fabs((other - tr) / tr)); }

}  // namespace oracle
