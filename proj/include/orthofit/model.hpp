#pragma once

// Monomial form of a fitted surface and its evaluation in normalized and
// physical units.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "orthofit/dataset.hpp"
#include "orthofit/double_double.hpp"
#include "orthofit/errors.hpp"
#include "orthofit/fit.hpp"

namespace orthofit {

/// Orthogonal-form coefficients kept alongside a model for auditing.
struct OrthoAudit {
  std::vector<std::vector<double>> a;
  std::vector<double> b;
};

struct SurfaceModel {
  std::vector<std::size_t> kept;  ///< flat basis indices with a coefficient
  std::vector<double> c;          ///< c[k] multiplies h_{kept[k]}
  /// Low-order words from an extended-precision conversion (c[k] + c_lo[k] is the
  /// double-double coefficient); empty after a double conversion.
  std::vector<double> c_lo;
  NormalizationMap map;
  std::size_t S = 0;
  double lambda = 0.0;
  double sigma_tr = 0.0;
  std::optional<OrthoAudit> audit;

  /// Largest flat index referenced, or 0 for an empty model.
  std::size_t max_index() const;
};

/// Back-substitutes sum_t b_t P_t into sum_t c_t h_t. Runs in double-double
/// unless precision is Double, in which case c_lo stays empty.
SurfaceModel to_monomial(const FitResult& fit, Precision precision = Precision::Extended);

/// Evaluates sum_t b_t P_t(x, y) through the stored recurrences, at the fit's precision.
double eval_ortho(const FitResult& fit, double x, double y);

/// Evaluates sum_t c_t h_t(x, y). Extended carries the sum and c + c_lo in
/// double-double; Double uses c alone in plain double arithmetic.
double eval_monomial(const SurfaceModel& model, double x, double y, Precision precision = Precision::Extended);

struct PhysicalValue {
  double value = 0.0;
  bool extrapolated = false;
};

PhysicalValue eval_physical(const SurfaceModel& model, double X, double Y);

/// dZ/dY in original units. Throws DataError for a degenerate y range.
double dZ_dY(const SurfaceModel& model, double X, double Y);

/// Integral of dZ/dY over X from the lower X bound to X_hi at fixed Y (composite
/// Simpson; an odd interval count closes with one trapezoid panel).
double entropy_change(const SurfaceModel& model, double Y, double X_hi, int n_steps = 200);

}  // namespace orthofit
