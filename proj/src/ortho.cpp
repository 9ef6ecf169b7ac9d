#include "orthofit/ortho.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "orthofit/kernels.hpp"

namespace orthofit {

double default_rank_tolerance(Precision precision) { return precision == Precision::Extended ? 1e-20 : 1e-14; }

template <class Real>
void OrthoBasis<Real>::push(std::span<const Real> column, std::span<const Real> laplacian, std::vector<Real> a_row,
                            std::size_t flat_index) {
  values_.push_back(column);
  if (track_laplacian_) laplacian_.push_back(laplacian);
  coeffs_.push_back(std::move(a_row));
  kept_.push_back(flat_index);
}

template <class Real>
Real inner(std::span<const Real> u, std::span<const Real> v) {
  if (u.size() != v.size())
    throw InputError("inner product of vectors with lengths " + std::to_string(u.size()) + " and " +
                     std::to_string(v.size()));
  return kernels::dot<Real>(u, v);
}

namespace {

template <class Real>
double norm(std::span<const Real> v) {
  return to_double(sqrt(kernels::dot<Real>(v, v)));
}

template <class Real>
double max_abs(std::span<const Real> v) {
  double m = 0.0;
  for (const auto& x : v) m = std::max(m, std::abs(to_double(x)));
  return m;
}

// Pointwise helpers so one code path serves double and DoubleDouble.
inline double sqrt(double v) { return std::sqrt(v); }
using orthofit::sqrt;

}  // namespace

template <class Real>
double reorthogonalize_pass(const OrthoBasis<Real>& basis, std::span<Real> r) {
  std::vector<Real> delta(basis.size());
  kernels::project<Real>(basis.values(), r, delta);
  kernels::subtract_combination<Real>(basis.values(), delta, r);
  return max_abs<Real>(delta);
}

template <class Real>
ColumnOutcome append_column(OrthoBasis<Real>& basis, std::span<const Real> raw, std::span<const Real> raw_lap,
                            std::size_t flat_index, const OrthoConfig& cfg) {
  const std::size_t n = basis.rows();
  const std::size_t s = basis.size();
  if (raw.size() != n) throw InputError("column length does not match the basis row count");
  const bool lap = basis.tracks_laplacian();
  if (lap && raw_lap.size() != n) throw InputError("Laplacian column length does not match the basis row count");

  std::vector<Real> r(raw.begin(), raw.end());
  std::vector<Real> r_lap;
  if (lap) r_lap.assign(raw_lap.begin(), raw_lap.end());
  std::vector<Real> acc(s, Real{0.0});
  const double raw_norm = norm<Real>(raw);

  ColumnOutcome outcome;

  // The Laplacian column receives the same combination of existing Laplacian columns.
  const auto apply_to_laplacian = [&](std::span<const Real> delta) {
    if (!lap) return;
    for (std::size_t t = 0; t < delta.size(); ++t) kernels::axpy<Real>(-delta[t], basis.laplacian_column(t), r_lap);
  };

  if (s > 0) {
    if (cfg.scheme == OrthoScheme::Classical) {
      kernels::project<Real>(basis.values(), r, acc);
      kernels::subtract_combination<Real>(basis.values(), acc, r);
      apply_to_laplacian(acc);
    } else {
      for (std::size_t t = 0; t < s; ++t) {
        const Real d = kernels::dot<Real>(basis.column(t), r);
        kernels::axpy<Real>(-d, basis.column(t), r);
        if (lap) kernels::axpy<Real>(-d, basis.laplacian_column(t), r_lap);
        acc[t] = d;
      }
    }

    if (cfg.scheme == OrthoScheme::Iterated) {
      std::vector<Real> delta(s);
      for (int pass = 0; pass < cfg.max_reorth_passes; ++pass) {
        const double before = norm<Real>(r);
        kernels::project<Real>(basis.values(), r, delta);
        kernels::subtract_combination<Real>(basis.values(), delta, r);
        apply_to_laplacian(delta);
        for (std::size_t t = 0; t < s; ++t) acc[t] += delta[t];
        ++outcome.reorth_passes;
        if (max_abs<Real>(delta) <= cfg.reorth_tol * before) break;
      }
    }
  }

  const Real p = sqrt(kernels::dot<Real>(r, r));
  const double pd = to_double(p);
  outcome.relative_residual = raw_norm > 0.0 ? pd / raw_norm : 0.0;
  const double rank_tol = cfg.rank_tol >= 0.0 ? cfg.rank_tol : default_rank_tolerance(OrthoBasis<Real>::precision());
  if (!(raw_norm > 0.0) || !(pd > rank_tol * raw_norm)) return outcome;

  const Real inv = Real{1.0} / p;
  kernels::scale<Real>(r, inv);
  if (lap) kernels::scale<Real>(r_lap, inv);

  std::vector<Real> a_row(s + 1);
  for (std::size_t t = 0; t < s; ++t) a_row[t] = -acc[t] * inv;
  a_row[s] = inv;
  basis.push(r, r_lap, std::move(a_row), flat_index);
  outcome.accepted = true;
  return outcome;
}

template <class Real>
double orthogonality_defect(const OrthoBasis<Real>& basis) {
  if (basis.size() < 2) return 0.0;
  return kernels::max_abs_offdiagonal<Real>(basis.values(), basis.size());
}

template class OrthoBasis<double>;
template class OrthoBasis<DoubleDouble>;

#define ORTHOFIT_INSTANTIATE(Real)                                                                        \
  template Real inner<Real>(std::span<const Real>, std::span<const Real>);                                \
  template ColumnOutcome append_column<Real>(OrthoBasis<Real>&, std::span<const Real>, std::span<const Real>, \
                                             std::size_t, const OrthoConfig&);                            \
  template double reorthogonalize_pass<Real>(const OrthoBasis<Real>&, std::span<Real>);                   \
  template double orthogonality_defect<Real>(const OrthoBasis<Real>&);

ORTHOFIT_INSTANTIATE(double)
ORTHOFIT_INSTANTIATE(DoubleDouble)

#undef ORTHOFIT_INSTANTIATE

}  // namespace orthofit
