#pragma once

// Three-group errors, overfitting degrees and the regularization sweep.

#include <cstddef>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "orthofit/dataset.hpp"
#include "orthofit/fit.hpp"
#include "orthofit/model.hpp"

namespace orthofit {

/// Bounds that keep overfitting degrees finite: ln 0 maps to -kGammaClamp
/// and a zero training error with a non-zero comparison error to +kGammaClamp.
inline constexpr double kGammaClamp = 50.0;

struct ValidationRecord {
  double x_log = 0.0;  ///< lambda = exp(-x_log)
  double lambda = 0.0;
  std::size_t S = 0;
  double sigma_tr = 0.0;
  double sigma_cv = 0.0;
  double sigma_test = 0.0;
  double gamma = 0.0;
  double gamma_prime = 0.0;
  std::string stop;
  std::optional<std::string> error;  ///< set when the fit for this grid point failed
};

struct SelectionPolicy {
  double gamma_cap = 1.0;
  std::string describe() const;
};

struct SweepReport {
  std::vector<ValidationRecord> records;
  std::size_t chosen = 0;
  std::string policy;
};

/// Mean squared residual over the listed points, evaluated through the
/// orthogonal recurrences. Throws InputError for an empty group.
double group_error(const FitResult& fit, const NormalizedDataset& data, std::span<const std::size_t> idx);
/// Same through the monomial coefficients.
double group_error(const SurfaceModel& model, const NormalizedDataset& data, std::span<const std::size_t> idx);

/// ln |(sigma_other - sigma_tr) / sigma_tr|, clamped to [-kGammaClamp, kGammaClamp].
double overfit_degree(double sigma_tr, double sigma_other);

/// Errors and overfitting degrees of one fit on all three groups.
ValidationRecord validate(const FitResult& fit, const NormalizedDataset& data, const DataSplit& split);

/// One fit per distinct grid exponent x with lambda = exp(-x), in grid order.
/// Fits run concurrently; a failing fit is recorded, not propagated.
SweepReport lambda_sweep(const NormalizedDataset& data, const DataSplit& split, std::span<const double> grid,
                         const FitConfig& cfg, const SelectionPolicy& policy = {});

/// The record with the largest x whose gamma and gamma' are both <= the cap;
/// otherwise the record minimizing max(gamma, gamma'). Throws NumericError
/// when no record holds a successful fit.
std::size_t select_model(const SweepReport& report, const SelectionPolicy& policy = {});

void write_sweep_csv(std::ostream& out, const SweepReport& report);
void write_sweep_json(std::ostream& out, const SweepReport& report);

}  // namespace orthofit
