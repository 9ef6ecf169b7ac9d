#pragma once

// Incremental Laplace-regularized fit on the training group.
//
// Columns are orthonormalized one at a time. For each accepted column t,
//   b_t = (proj_t - lambda * R_t * Q_t) / (lambda * Q_t^2 + 1),
// where proj_t = <z, P_t>, Q_t = sum_i lap P_t(x_i, y_i) and
// R_t = sum_{r<t} b_r Q_r. Earlier coefficients are never revisited.

#include <cstddef>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "orthofit/dataset.hpp"
#include "orthofit/double_double.hpp"
#include "orthofit/errors.hpp"
#include "orthofit/ortho.hpp"

namespace orthofit {

struct FitConfig {
  double lambda = 0.0;
  /// Raw basis functions considered (flat indices 0 .. max_columns-1); 231 covers degree 20.
  std::size_t max_columns = 231;
  /// Stop as soon as the training error reaches this value.
  double target_error = 1e-24;
  /// A degree block stalls when it improves the training error by less than this fraction.
  double stop_rel_improvement = 0.05;
  int stop_patience_blocks = 2;
  Precision precision = Precision::Extended;
  bool odd_field_only = false;
  /// When set, fit exactly fixed_S + 1 polynomials and ignore the other stopping rules.
  std::optional<std::size_t> fixed_S;
  OrthoConfig ortho;
};

enum class StopReason { TargetError, Stalled, MaxColumns, FixedS, Exhausted };

const char* to_string(StopReason reason);

struct FitRecord {
  std::size_t t = 0;           ///< orthonormal index
  std::size_t flat_index = 0;  ///< raw basis index
  double b = 0.0;
  double Q = 0.0;
  double R = 0.0;  ///< R_t, before adding b_t * Q_t
  double sigma_tr = 0.0;
  int reorth_passes = 0;
};

using AnyOrthoBasis = std::variant<OrthoBasis<double>, OrthoBasis<DoubleDouble>>;

struct FitResult {
  AnyOrthoBasis basis;
  std::vector<DoubleDouble> b;
  std::vector<DoubleDouble> Q;
  std::vector<std::size_t> train_idx;
  std::vector<std::size_t> rejected;  ///< raw indices dropped as linearly dependent
  std::size_t S = 0;                  ///< largest orthonormal index used
  std::size_t L = 0;                  ///< largest raw index considered
  double lambda = 0.0;
  double sigma_tr = 0.0;
  double sigma2 = 0.0;  ///< sigma_tr + lambda * (sum_t b_t Q_t)^2, diagnostic only
  Precision precision = Precision::Extended;
  StopReason stop = StopReason::MaxColumns;
  NormalizationMap map;
  std::vector<FitRecord> history;

  std::size_t columns() const noexcept { return b.size(); }
  const std::vector<std::size_t>& kept() const;
  double orthogonality_defect() const;
};

template <class Real>
Real regularized_coefficient(const Real& proj, const Real& Q, const Real& R, double lambda) {
  if (lambda == 0.0) return proj;
  return (proj - lambda * R * Q) / (lambda * Q * Q + 1.0);
}

/// (1/N) sum_i (sum_t b_t P_t(i) - z_i)^2 over the rows of the basis.
template <class Real>
double training_error(std::span<const DoubleDouble> b, const OrthoBasis<Real>& basis, std::span<const double> z);

/// Throws DataError for too few training points or when every column is rejected.
FitResult fit_surface(const DataSplit& split, const NormalizedDataset& data, const FitConfig& cfg);

}  // namespace orthofit
