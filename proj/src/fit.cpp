#include "orthofit/fit.hpp"

#include <string>

#include "orthofit/basis.hpp"
#include "orthofit/kernels.hpp"

namespace orthofit {

const char* to_string(StopReason reason) {
  switch (reason) {
    case StopReason::TargetError: return "target-error";
    case StopReason::Stalled: return "stalled";
    case StopReason::MaxColumns: return "max-columns";
    case StopReason::FixedS: return "fixed-S";
    case StopReason::Exhausted: return "exhausted";
  }
  return "unknown";
}

const std::vector<std::size_t>& FitResult::kept() const {
  return std::visit([](const auto& basis) -> const std::vector<std::size_t>& { return basis.kept(); }, basis);
}

double FitResult::orthogonality_defect() const {
  return std::visit([](const auto& b) { return orthofit::orthogonality_defect(b); }, basis);
}

template <class Real>
double training_error(std::span<const DoubleDouble> b, const OrthoBasis<Real>& basis, std::span<const double> z) {
  if (b.size() != basis.size()) throw InputError("coefficient count does not match the basis");
  const std::size_t n = basis.rows();
  std::vector<Real> residual(n);
  for (std::size_t i = 0; i < n; ++i) residual[i] = Real{-z[i]};
  for (std::size_t t = 0; t < b.size(); ++t) {
    Real bt;
    if constexpr (std::is_same_v<Real, double>)
      bt = to_double(b[t]);
    else
      bt = b[t];
    kernels::axpy<Real>(bt, basis.column(t), residual);
  }
  return to_double(kernels::dot<Real>(residual, residual)) / static_cast<double>(n);
}

template double training_error<double>(std::span<const DoubleDouble>, const OrthoBasis<double>&,
                                       std::span<const double>);
template double training_error<DoubleDouble>(std::span<const DoubleDouble>, const OrthoBasis<DoubleDouble>&,
                                             std::span<const double>);

namespace {

template <class Real>
FitResult fit_impl(const DataSplit& split, const NormalizedDataset& data, const FitConfig& cfg) {
  const auto& train = split.train_idx;
  const std::size_t n = train.size();
  if (n < 2) throw DataError("training group has " + std::to_string(n) + " points; at least 2 are required");
  if (cfg.max_columns < 3) throw InputError("max_columns must be at least 3");
  if (cfg.lambda < 0.0) throw InputError("lambda must be non-negative");

  std::vector<double> xs(n), ys(n), z(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& p = data.points.at(train[i]);
    xs[i] = p.x;
    ys[i] = p.y;
    z[i] = p.z;
  }
  const std::size_t L = cfg.max_columns - 1;
  const auto table = kernels::fill_basis_table<Real>(xs, ys, L, true);
  const auto mask = odd_field_mask(L);

  std::vector<Real> z_work(n), residual(n), raw_lap(n);
  for (std::size_t i = 0; i < n; ++i) z_work[i] = residual[i] = Real{z[i]};

  OrthoBasis<Real> basis(n, true);
  FitResult result;
  result.train_idx = train;
  result.lambda = cfg.lambda;
  result.precision = OrthoBasis<Real>::precision();
  result.map = data.map;
  result.L = L;
  result.stop = StopReason::MaxColumns;

  const std::size_t max_accept = cfg.fixed_S ? std::min(*cfg.fixed_S + 1, n - 1) : n - 1;
  Real R{0.0};
  double sigma_tr = to_double(kernels::dot<Real>(residual, residual)) / static_cast<double>(n);
  double block_start_sigma = sigma_tr;
  bool block_had_column = false;
  int stalled_blocks = 0;
  bool done = false;

  for (std::size_t t = 0; t <= L && !done; ++t) {
    const auto idx = degree_block(t);
    if (!cfg.odd_field_only || mask[t]) {
      const auto raw = table.values.col(t);
      const auto dxx = table.d2x.col(t);
      const auto dyy = table.d2y.col(t);
      for (std::size_t i = 0; i < n; ++i) raw_lap[i] = dxx[i] + dyy[i];

      const auto outcome = append_column<Real>(basis, raw, raw_lap, t, cfg.ortho);
      if (!outcome.accepted) {
        result.rejected.push_back(t);
      } else {
        const std::size_t k = basis.size() - 1;
        const Real proj = kernels::dot<Real>(z_work, basis.column(k));
        const Real Q = kernels::sum<Real>(basis.laplacian_column(k));
        const Real bk = regularized_coefficient<Real>(proj, Q, R, cfg.lambda);
        FitRecord rec;
        rec.t = k;
        rec.flat_index = t;
        rec.R = to_double(R);
        R += bk * Q;
        kernels::axpy<Real>(-bk, basis.column(k), residual);
        sigma_tr = to_double(kernels::dot<Real>(residual, residual)) / static_cast<double>(n);

        rec.b = to_double(bk);
        rec.Q = to_double(Q);
        rec.sigma_tr = sigma_tr;
        rec.reorth_passes = outcome.reorth_passes;
        result.history.push_back(rec);
        result.b.push_back(ScalarTraits<Real>::widen(bk));
        result.Q.push_back(ScalarTraits<Real>::widen(Q));
        block_had_column = true;

        if (basis.size() >= max_accept) {
          result.stop = cfg.fixed_S ? StopReason::FixedS : StopReason::Exhausted;
          done = true;
        } else if (!cfg.fixed_S && sigma_tr <= cfg.target_error) {
          result.stop = StopReason::TargetError;
          done = true;
        }
      }
    }

    if (!done && !cfg.fixed_S && idx.j == idx.m && block_had_column) {
      const double gain = block_start_sigma > 0.0 ? (block_start_sigma - sigma_tr) / block_start_sigma : 0.0;
      stalled_blocks = gain < cfg.stop_rel_improvement ? stalled_blocks + 1 : 0;
      if (stalled_blocks >= cfg.stop_patience_blocks) {
        result.stop = StopReason::Stalled;
        done = true;
      }
      block_start_sigma = sigma_tr;
      block_had_column = false;
    }
  }

  if (basis.size() == 0) throw DataError("degenerate fit: every basis column was rejected");
  result.S = basis.size() - 1;
  result.sigma_tr = sigma_tr;
  const double r_total = to_double(R);
  result.sigma2 = sigma_tr + cfg.lambda * r_total * r_total;
  result.basis = std::move(basis);
  return result;
}

}  // namespace

FitResult fit_surface(const DataSplit& split, const NormalizedDataset& data, const FitConfig& cfg) {
  if (cfg.precision == Precision::Extended) return fit_impl<DoubleDouble>(split, data, cfg);
  return fit_impl<double>(split, data, cfg);
}

}  // namespace orthofit
