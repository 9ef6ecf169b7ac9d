#pragma once

// Orthonormalization of basis columns under the sample inner product
// <u, v> = sum_i u_i v_i over the training points.
//
// Each accepted column s satisfies
//   P_s = a(s,s) * h_{kept[s]} + sum_{t<s} a(s,t) * P_t
// and the Laplacian column of P_s is produced by applying the identical
// sequence of projections and scalings to the raw (d2x + d2y) column.

#include <cstddef>
#include <span>
#include <type_traits>
#include <vector>

#include "orthofit/double_double.hpp"
#include "orthofit/errors.hpp"
#include "orthofit/matrix.hpp"

namespace orthofit {

enum class OrthoScheme {
  Iterated,   ///< modified pass followed by classical re-orthogonalization passes
  Classical,  ///< one pass, all coefficients against the original column
  Modified,   ///< one pass, coefficients against the running residual
};

struct OrthoConfig {
  OrthoScheme scheme = OrthoScheme::Iterated;
  /// Re-orthogonalization stops once max_t |delta(t)| <= reorth_tol * ||column||.
  double reorth_tol = 1e-14;
  int max_reorth_passes = 3;
  /// A column is rejected when its residual norm is <= rank_tol * ||raw column||.
  /// Negative selects the precision default (1e-20 extended, 1e-14 double).
  double rank_tol = -1.0;
};

struct ColumnOutcome {
  bool accepted = false;
  int reorth_passes = 0;
  double relative_residual = 0.0;  ///< ||residual|| / ||raw column|| before normalization
};

template <class Real>
class OrthoBasis {
 public:
  OrthoBasis() = default;
  explicit OrthoBasis(std::size_t rows, bool track_laplacian = true)
      : rows_(rows), track_laplacian_(track_laplacian) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t size() const noexcept { return kept_.size(); }
  bool tracks_laplacian() const noexcept { return track_laplacian_; }

  std::span<const Real> column(std::size_t t) const { return values_.col(t); }
  std::span<const Real> laplacian_column(std::size_t t) const { return laplacian_.col(t); }
  const ColumnMatrix<Real>& values() const noexcept { return values_; }

  /// a(s, t) for t <= s; a(s, s) multiplies the raw basis function h_{kept[s]}.
  const Real& a(std::size_t s, std::size_t t) const { return coeffs_[s][t]; }
  std::span<const Real> a_row(std::size_t s) const { return coeffs_[s]; }

  /// Original flat basis index of each orthonormal column.
  const std::vector<std::size_t>& kept() const noexcept { return kept_; }

  static constexpr Precision precision() noexcept {
    return std::is_same_v<Real, double> ? Precision::Double : Precision::Extended;
  }

  // Used by the column routines in ortho.cpp.
  void push(std::span<const Real> column, std::span<const Real> laplacian, std::vector<Real> a_row,
            std::size_t flat_index);

 private:
  std::size_t rows_ = 0;
  bool track_laplacian_ = true;
  ColumnMatrix<Real> values_;
  ColumnMatrix<Real> laplacian_;
  std::vector<std::vector<Real>> coeffs_;
  std::vector<std::size_t> kept_;
};

/// Sample inner product, compensated in double mode. Throws InputError on length mismatch.
template <class Real>
Real inner(std::span<const Real> u, std::span<const Real> v);

/// Dispatches on cfg.scheme. raw_lap may be empty when the basis does not track Laplacians.
template <class Real>
ColumnOutcome append_column(OrthoBasis<Real>& basis, std::span<const Real> raw, std::span<const Real> raw_lap,
                            std::size_t flat_index, const OrthoConfig& cfg = {});

template <class Real>
ColumnOutcome igs_next_column(OrthoBasis<Real>& basis, std::span<const Real> raw, std::span<const Real> raw_lap,
                              std::size_t flat_index, OrthoConfig cfg = {}) {
  cfg.scheme = OrthoScheme::Iterated;
  return append_column(basis, raw, raw_lap, flat_index, cfg);
}

template <class Real>
ColumnOutcome cgs_column(OrthoBasis<Real>& basis, std::span<const Real> raw, std::size_t flat_index,
                         OrthoConfig cfg = {}, std::span<const Real> raw_lap = {}) {
  cfg.scheme = OrthoScheme::Classical;
  return append_column(basis, raw, raw_lap, flat_index, cfg);
}

template <class Real>
ColumnOutcome mgs_column(OrthoBasis<Real>& basis, std::span<const Real> raw, std::size_t flat_index,
                         OrthoConfig cfg = {}, std::span<const Real> raw_lap = {}) {
  cfg.scheme = OrthoScheme::Modified;
  return append_column(basis, raw, raw_lap, flat_index, cfg);
}

/// One classical projection pass of r against every column of the basis.
/// Returns max_t |delta(t)|.
template <class Real>
double reorthogonalize_pass(const OrthoBasis<Real>& basis, std::span<Real> r);

/// max over t != s of |<P_t, P_s>|; 0 for fewer than two columns.
template <class Real>
double orthogonality_defect(const OrthoBasis<Real>& basis);

double default_rank_tolerance(Precision precision);

}  // namespace orthofit
