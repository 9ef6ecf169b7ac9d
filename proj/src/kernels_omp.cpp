// OpenMP kernels. Chunk partials are computed in parallel and merged serially
// in chunk order, so results match kernels::serial exactly.

#include <algorithm>
#include <cmath>
#include <vector>

#include "chunk_math.hpp"
#include "orthofit/kernels.hpp"

namespace orthofit::kernels {

namespace {

// Below this many elements the fork/join overhead dominates.
constexpr std::size_t kParallelMin = 4 * kChunk;

template <class Real, class ChunkFn>
DoubleDouble chunked_reduce(std::size_t n, ChunkFn&& fn) {
  const std::size_t chunks = detail::chunk_count(n, kChunk);
  std::vector<DoubleDouble> partial(chunks);
  const auto nchunks = static_cast<std::ptrdiff_t>(chunks);
#pragma omp parallel for schedule(static) if (n >= kParallelMin)
  for (std::ptrdiff_t c = 0; c < nchunks; ++c) {
    const std::size_t start = static_cast<std::size_t>(c) * kChunk;
    partial[static_cast<std::size_t>(c)] = fn(start, std::min(kChunk, n - start));
  }
  DoubleDouble acc;
  for (const auto& p : partial) acc += p;
  return acc;
}

}  // namespace

template <class Real>
Real dot(std::span<const Real> a, std::span<const Real> b) {
  return detail::finish<Real>(chunked_reduce<Real>(
      a.size(), [&](std::size_t start, std::size_t len) { return detail::chunk_dot(a.data() + start, b.data() + start, len); }));
}

template <class Real>
Real sum(std::span<const Real> a) {
  return detail::finish<Real>(chunked_reduce<Real>(
      a.size(), [&](std::size_t start, std::size_t len) { return detail::chunk_sum(a.data() + start, len); }));
}

template <class Real>
void axpy(const Real& alpha, std::span<const Real> x, std::span<Real> y) {
  const auto n = static_cast<std::ptrdiff_t>(x.size());
#pragma omp parallel for schedule(static) if (x.size() >= kParallelMin)
  for (std::ptrdiff_t i = 0; i < n; ++i) y[static_cast<std::size_t>(i)] += alpha * x[static_cast<std::size_t>(i)];
}

template <class Real>
void scale(std::span<Real> x, const Real& s) {
  const auto n = static_cast<std::ptrdiff_t>(x.size());
#pragma omp parallel for schedule(static) if (x.size() >= kParallelMin)
  for (std::ptrdiff_t i = 0; i < n; ++i) x[static_cast<std::size_t>(i)] *= s;
}

template <class Real>
void project(const ColumnMatrix<Real>& basis, std::span<const Real> r, std::span<Real> coeffs) {
  const auto ncols = static_cast<std::ptrdiff_t>(coeffs.size());
#pragma omp parallel for schedule(static) if (coeffs.size() * r.size() >= kParallelMin)
  for (std::ptrdiff_t t = 0; t < ncols; ++t)
    coeffs[static_cast<std::size_t>(t)] = serial::dot<Real>(basis.col(static_cast<std::size_t>(t)), r);
}

template <class Real>
void subtract_combination(const ColumnMatrix<Real>& basis, std::span<const Real> coeffs, std::span<Real> r) {
  const std::size_t n = r.size();
  const auto nblocks = static_cast<std::ptrdiff_t>(detail::chunk_count(n, kChunk));
#pragma omp parallel for schedule(static) if (coeffs.size() * n >= kParallelMin)
  for (std::ptrdiff_t b = 0; b < nblocks; ++b) {
    const std::size_t lo = static_cast<std::size_t>(b) * kChunk;
    const std::size_t hi = std::min(n, lo + kChunk);
    for (std::size_t t = 0; t < coeffs.size(); ++t) {
      const auto c = basis.col(t);
      const Real k = coeffs[t];
      for (std::size_t i = lo; i < hi; ++i) r[i] -= k * c[i];
    }
  }
}

template <class Real>
double max_abs_offdiagonal(const ColumnMatrix<Real>& basis, std::size_t ncols) {
  double worst = 0.0;
  const auto n = static_cast<std::ptrdiff_t>(ncols);
#pragma omp parallel for schedule(dynamic) reduction(max : worst) if (ncols * basis.rows() >= kParallelMin)
  for (std::ptrdiff_t t = 1; t < n; ++t)
    for (std::size_t s = 0; s < static_cast<std::size_t>(t); ++s)
      worst = std::max(worst, std::abs(to_double(serial::dot<Real>(basis.col(static_cast<std::size_t>(t)), basis.col(s)))));
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
  const auto rows = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(static) if (n * (L + 1) >= kParallelMin)
  for (std::ptrdiff_t ii = 0; ii < rows; ++ii) {
    const auto i = static_cast<std::size_t>(ii);
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

}  // namespace orthofit::kernels
