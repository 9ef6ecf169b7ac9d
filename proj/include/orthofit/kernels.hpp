#pragma once

// Data-parallel inner loops of the orthogonalization and error evaluation.
//
// Every reduction splits its input into fixed chunks of kChunk elements,
// reduces each chunk with compensated (error-free transformation) arithmetic
// and then merges the chunk partials serially in chunk order. The result
// therefore depends only on the input, never on the thread count, and the
// OpenMP kernels in this namespace agree bit-for-bit with the serial
// reference kernels in kernels::serial.

#include <cstddef>
#include <span>

#include "orthofit/basis.hpp"
#include "orthofit/double_double.hpp"
#include "orthofit/matrix.hpp"

namespace orthofit::kernels {

inline constexpr std::size_t kChunk = 1024;

template <class Real>
Real dot(std::span<const Real> a, std::span<const Real> b);

template <class Real>
Real sum(std::span<const Real> a);

/// y += alpha * x
template <class Real>
void axpy(const Real& alpha, std::span<const Real> x, std::span<Real> y);

template <class Real>
void scale(std::span<Real> x, const Real& s);

/// coeffs[t] = <basis.col(t), r> for t < coeffs.size().
template <class Real>
void project(const ColumnMatrix<Real>& basis, std::span<const Real> r, std::span<Real> coeffs);

/// r -= sum_t coeffs[t] * basis.col(t), subtracting in increasing t for every row.
template <class Real>
void subtract_combination(const ColumnMatrix<Real>& basis, std::span<const Real> coeffs, std::span<Real> r);

/// max over t != s < ncols of |<col t, col s>|.
template <class Real>
double max_abs_offdiagonal(const ColumnMatrix<Real>& basis, std::size_t ncols);

/// Rows of h_t (and, when requested, d2x/d2y) at each (xs[i], ys[i]) for t <= L.
template <class Real>
BasisTable<Real> fill_basis_table(std::span<const double> xs, std::span<const double> ys, std::size_t L,
                                  bool with_second_derivatives);

namespace serial {

template <class Real>
Real dot(std::span<const Real> a, std::span<const Real> b);

template <class Real>
Real sum(std::span<const Real> a);

template <class Real>
void axpy(const Real& alpha, std::span<const Real> x, std::span<Real> y);

template <class Real>
void scale(std::span<Real> x, const Real& s);

template <class Real>
void project(const ColumnMatrix<Real>& basis, std::span<const Real> r, std::span<Real> coeffs);

template <class Real>
void subtract_combination(const ColumnMatrix<Real>& basis, std::span<const Real> coeffs, std::span<Real> r);

template <class Real>
double max_abs_offdiagonal(const ColumnMatrix<Real>& basis, std::size_t ncols);

template <class Real>
BasisTable<Real> fill_basis_table(std::span<const double> xs, std::span<const double> ys, std::size_t L,
                                  bool with_second_derivatives);

}  // namespace serial

}  // namespace orthofit::kernels
