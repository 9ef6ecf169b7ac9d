#include "orthofit/model.hpp"

#include <algorithm>
#include <type_traits>

#include "orthofit/basis.hpp"

namespace orthofit {

std::size_t SurfaceModel::max_index() const {
  return kept.empty() ? 0 : *std::max_element(kept.begin(), kept.end());
}

namespace {

template <class Work, class Real>
Work narrow(const Real& v) {
  if constexpr (std::is_same_v<Work, double>)
    return to_double(v);
  else
    return ScalarTraits<Real>::widen(v);
}

template <class Work, class Real>
std::vector<DoubleDouble> back_substitute(const OrthoBasis<Real>& basis, const std::vector<DoubleDouble>& b) {
  const std::size_t n = basis.size();
  std::vector<Work> w(n);
  for (std::size_t s = 0; s < n; ++s) w[s] = narrow<Work>(b[s]);
  std::vector<Work> c(n, Work{0.0});
  for (std::size_t s = n; s-- > 0;) {
    const Work ws = w[s];
    const auto row = basis.a_row(s);
    c[s] += ws * narrow<Work>(row[s]);
    for (std::size_t t = 0; t < s; ++t) w[t] += ws * narrow<Work>(row[t]);
  }
  std::vector<DoubleDouble> out(n);
  for (std::size_t s = 0; s < n; ++s) out[s] = ScalarTraits<Work>::widen(c[s]);
  return out;
}

template <class Real>
Real eval_ortho_impl(const OrthoBasis<Real>& basis, const std::vector<DoubleDouble>& b, double x, double y) {
  const auto& kept = basis.kept();
  if (kept.empty()) return Real{0.0};
  const auto h = basis_values<Real>(Real{x}, Real{y}, *std::max_element(kept.begin(), kept.end()));
  std::vector<Real> P(basis.size());
  Real f{0.0};
  for (std::size_t s = 0; s < basis.size(); ++s) {
    const auto row = basis.a_row(s);
    Real p = row[s] * h[kept[s]];
    for (std::size_t t = 0; t < s; ++t) p += row[t] * P[t];
    P[s] = p;
    f += narrow<Real>(b[s]) * p;
  }
  return f;
}

double sum_monomials(const SurfaceModel& model, const std::vector<double>& h) {
  double acc = 0.0;
  for (std::size_t k = 0; k < model.c.size(); ++k) acc += model.c[k] * h[model.kept[k]];
  return acc;
}

double sum_monomials(const SurfaceModel& model, const std::vector<DoubleDouble>& h) {
  const bool has_lo = model.c_lo.size() == model.c.size();
  DoubleDouble acc{0.0};
  for (std::size_t k = 0; k < model.c.size(); ++k) {
    const DoubleDouble ck = has_lo ? DoubleDouble{model.c[k], model.c_lo[k]} : DoubleDouble{model.c[k]};
    acc += ck * h[model.kept[k]];
  }
  return to_double(acc);
}

}  // namespace

SurfaceModel to_monomial(const FitResult& fit, Precision precision) {
  SurfaceModel model;
  model.kept = fit.kept();
  model.map = fit.map;
  model.S = fit.S;
  model.lambda = fit.lambda;
  model.sigma_tr = fit.sigma_tr;
  const auto c = std::visit(
      [&](const auto& basis) {
        return precision == Precision::Extended ? back_substitute<DoubleDouble>(basis, fit.b)
                                                : back_substitute<double>(basis, fit.b);
      },
      fit.basis);
  for (const auto& v : c) model.c.push_back(v.hi);
  if (precision == Precision::Extended)
    for (const auto& v : c) model.c_lo.push_back(v.lo);

  OrthoAudit audit;
  std::visit(
      [&](const auto& basis) {
        for (std::size_t s = 0; s < basis.size(); ++s) {
          std::vector<double> row;
          for (const auto& v : basis.a_row(s)) row.push_back(to_double(v));
          audit.a.push_back(std::move(row));
        }
      },
      fit.basis);
  for (const auto& v : fit.b) audit.b.push_back(to_double(v));
  model.audit = std::move(audit);
  return model;
}

double eval_ortho(const FitResult& fit, double x, double y) {
  return std::visit([&](const auto& basis) { return to_double(eval_ortho_impl(basis, fit.b, x, y)); }, fit.basis);
}

double eval_monomial(const SurfaceModel& model, double x, double y, Precision precision) {
  if (model.c.empty()) return 0.0;
  const std::size_t L = model.max_index();
  if (precision == Precision::Extended)
    return sum_monomials(model, basis_values<DoubleDouble>(DoubleDouble{x}, DoubleDouble{y}, L));
  return sum_monomials(model, basis_values<double>(x, y, L));
}

PhysicalValue eval_physical(const SurfaceModel& model, double X, double Y) {
  const auto& m = model.map;
  const double z = eval_monomial(model, m.forward_x(X), m.forward_y(Y));
  return {m.inverse_z(z), !m.contains(X, Y)};
}

double dZ_dY(const SurfaceModel& model, double X, double Y) {
  const auto& m = model.map;
  if (!(m.y_max > m.y_min)) throw DataError("degenerate y range in model normalization");
  if (model.c.empty()) return 0.0;
  const auto dh = basis_dy<DoubleDouble>(DoubleDouble{m.forward_x(X)}, DoubleDouble{m.forward_y(Y)}, model.max_index());
  const double dz = sum_monomials(model, dh);
  return dz * (m.z_max - m.z_min) / (m.y_max - m.y_min);
}

double entropy_change(const SurfaceModel& model, double Y, double X_hi, int n_steps) {
  const double lo = model.map.x_min;
  if (n_steps < 2) throw InputError("entropy integration needs at least 2 steps");
  if (!(model.map.x_max > lo)) throw DataError("degenerate x range in model normalization");
  if (X_hi < lo) throw DataError("upper field bound lies below the lower field bound");
  if (X_hi == lo) return 0.0;

  const auto f = [&](double X) { return dZ_dY(model, X, Y); };
  const double h = (X_hi - lo) / n_steps;
  const int simpson_steps = n_steps % 2 == 0 ? n_steps : n_steps - 1;
  double acc = f(lo) + f(lo + simpson_steps * h);
  for (int i = 1; i < simpson_steps; ++i) acc += (i % 2 == 1 ? 4.0 : 2.0) * f(lo + i * h);
  double total = acc * h / 3.0;
  if (simpson_steps != n_steps) total += 0.5 * h * (f(lo + simpson_steps * h) + f(X_hi));
  return total;
}

}  // namespace orthofit
