// Serial reference kernels. Kept as the baseline the OpenMP kernels are
// tested and benchmarked against.

#include <algorithm>
#include <cmath>
#include <vector>

#include "chunk_math.hpp"
#include "orthofit/kernels.hpp"

namespace orthofit::kernels::serial {

template <class Real>
Real dot(std::span<const Real> a, std::span<const Real> b) {
  DoubleDouble acc;
  for (std::size_t start = 0; start < a.size(); start += kChunk) {
    const std::size_t len = std::min(kChunk, a.size() - start);
    acc += detail::chunk_dot(a.data() + start, b.data() + start, len);
  }
  return detail::finish<Real>(acc);
}

template <class Real>
Real sum(std::span<const Real> a) {
  DoubleDouble acc;
  for (std::size_t start = 0; start < a.size(); start += kChunk) {
    const std::size_t len = std::min(kChunk, a.size() - start);
    acc += detail::chunk_sum(a.data() + start, len);
  }
  return detail::finish<Real>(acc);
}

template <class Real>
void axpy(const Real& alpha, std::span<const Real> x, std::span<Real> y) {
  for (std::size_t i = 0; i < x.size(); ++i) y[i] += alpha * x[i];
}

template <class Real>
void scale(std::span<Real> x, const Real& s) {
  for (auto& v : x) v *= s;
}

template <class Real>
void project(const ColumnMatrix<Real>& basis, std::span<const Real> r, std::span<Real> coeffs) {
  for (std::size_t t = 0; t < coeffs.size(); ++t) coeffs[t] = dot<Real>(basis.col(t), r);
}

template <class Real>
void subtract_combination(const ColumnMatrix<Real>& basis, std::span<const Real> coeffs, std::span<Real> r) {
  for (std::size_t t = 0; t < coeffs.size(); ++t) {
    const auto c = basis.col(t);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] -= coeffs[t] * c[i];
  }
}

template <class Real>
double max_abs_offdiagonal(const ColumnMatrix<Real>& basis, std::size_t ncols) {
  double worst = 0.0;
  for (std::size_t t = 1; t < ncols; ++t)
    for (std::size_t s = 0; s < t; ++s)
      worst = std::max(worst, std::abs(to_double(dot<Real>(basis.col(t), basis.col(s)))));
  return worst;
}

template <class Real>
BasisTable<Real> fill_basis_table(std::span<const double> xs, std::span<const double> ys, std::size_t L,
                                  bool with_second_derivatives) {
  const std::size_t n = xs.size();
  BasisTable<Real> table;
  table.L = L;
  table.values = ColumnMatrix<Real>(n, L + 1);
  if (with_second_derivatives) {
    table.d2x = ColumnMatrix<Real>(n, L + 1);
    table.d2y = ColumnMatrix<Real>(n, L + 1);
  }
  for (std::size_t i = 0; i < n; ++i) {
    const Real x{xs[i]}, y{ys[i]};
    const auto v = basis_values(x, y, L);
    for (std::size_t t = 0; t <= L; ++t) table.values(i, t) = v[t];
    if (!with_second_derivatives) continue;
    const auto dxx = basis_d2x(x, y, L);
    const auto dyy = basis_d2y(x, y, L);
    for (std::size_t t = 0; t <= L; ++t) {
      table.d2x(i, t) = dxx[t];
      table.d2y(i, t) = dyy[t];
    }
  }
  return table;
}

#define ORTHOFIT_INSTANTIATE(Real)                                                                           \
  template Real dot<Real>(std::span<const Real>, std::span<const Real>);                                     \
  template Real sum<Real>(std::span<const Real>);                                                            \
  template void axpy<Real>(const Real&, std::span<const Real>, std::span<Real>);                             \
  template void scale<Real>(std::span<Real>, const Real&);                                                   \
  template void project<Real>(const ColumnMatrix<Real>&, std::span<const Real>, std::span<Real>);            \
  template void subtract_combination<Real>(const ColumnMatrix<Real>&, std::span<const Real>, std::span<Real>); \
  template double max_abs_offdiagonal<Real>(const ColumnMatrix<Real>&, std::size_t);                         \
  template BasisTable<Real> fill_basis_table<Real>(std::span<const double>, std::span<const double>,         \
                                                   std::size_t, bool);

ORTHOFIT_INSTANTIATE(double)
ORTHOFIT_INSTANTIATE(DoubleDouble)

#undef ORTHOFIT_INSTANTIATE

}  // namespace orthofit::kernels::serial
