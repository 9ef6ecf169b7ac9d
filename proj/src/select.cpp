#include "orthofit/select.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>
#include <json.hpp>

#include "orthofit/kernels.hpp"
#include "orthofit/model_io.hpp"

namespace orthofit {

std::string SelectionPolicy::describe() const {
  return fmt::format("largest x with gamma <= {0} and gamma' <= {0}; else min max(gamma, gamma')",
                     format_number(gamma_cap));
}

namespace {

template <class Eval>
double mean_squared_residual(const NormalizedDataset& data, std::span<const std::size_t> idx, Eval&& eval) {
  if (idx.empty()) throw InputError("group error of an empty group");
  std::vector<double> sq(idx.size());
  const auto n = static_cast<std::ptrdiff_t>(idx.size());
#pragma omp parallel for schedule(dynamic, 16) if (idx.size() >= 64)
  for (std::ptrdiff_t k = 0; k < n; ++k) {
    const auto& p = data.points.at(idx[static_cast<std::size_t>(k)]);
    const double r = eval(p.x, p.y) - p.z;
    sq[static_cast<std::size_t>(k)] = r * r;
  }
  return kernels::sum<double>(sq) / static_cast<double>(idx.size());
}

}  // namespace

double group_error(const FitResult& fit, const NormalizedDataset& data, std::span<const std::size_t> idx) {
  return mean_squared_residual(data, idx, [&](double x, double y) { return eval_ortho(fit, x, y); });
}

double group_error(const SurfaceModel& model, const NormalizedDataset& data, std::span<const std::size_t> idx) {
  return mean_squared_residual(data, idx, [&](double x, double y) { return eval_monomial(model, x, y); });
}

double overfit_degree(double sigma_tr, double sigma_other) {
  if (sigma_other == sigma_tr) return -kGammaClamp;
  if (sigma_tr == 0.0) return kGammaClamp;
  const double g = std::log(std::abs((sigma_other - sigma_tr) / sigma_tr));
  if (std::isnan(g)) return kGammaClamp;
  return std::clamp(g, -kGammaClamp, kGammaClamp);
}

ValidationRecord validate(const FitResult& fit, const NormalizedDataset& data, const DataSplit& split) {
  ValidationRecord rec;
  rec.lambda = fit.lambda;
  rec.S = fit.S;
  rec.sigma_tr = fit.sigma_tr;
  rec.sigma_cv = group_error(fit, data, split.cv_idx);
  rec.sigma_test = group_error(fit, data, split.test_idx);
  rec.gamma = overfit_degree(rec.sigma_tr, rec.sigma_cv);
  rec.gamma_prime = overfit_degree(rec.sigma_tr, rec.sigma_test);
  rec.stop = to_string(fit.stop);
  return rec;
}

SweepReport lambda_sweep(const NormalizedDataset& data, const DataSplit& split, std::span<const double> grid,
                         const FitConfig& cfg, const SelectionPolicy& policy) {
  if (grid.empty()) throw InputError("regularization grid is empty");
  std::vector<double> xs;
  for (double x : grid)
    if (std::find(xs.begin(), xs.end(), x) == xs.end()) xs.push_back(x);

  SweepReport report;
  report.records.resize(xs.size());
  const auto n = static_cast<std::ptrdiff_t>(xs.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (std::ptrdiff_t k = 0; k < n; ++k) {
    auto& rec = report.records[static_cast<std::size_t>(k)];
    const double x = xs[static_cast<std::size_t>(k)];
    try {
      FitConfig local = cfg;
      local.lambda = std::exp(-x);
      rec = validate(fit_surface(split, data, local), data, split);
    } catch (const std::exception& e) {
      rec = ValidationRecord{};
      rec.lambda = std::exp(-x);
      rec.error = e.what();
      rec.gamma = rec.gamma_prime = std::numeric_limits<double>::quiet_NaN();
    }
    rec.x_log = x;
  }

  report.policy = policy.describe();
  try {
    report.chosen = select_model(report, policy);
  } catch (const NumericError&) {
    report.chosen = 0;
  }
  return report;
}

std::size_t select_model(const SweepReport& report, const SelectionPolicy& policy) {
  std::optional<std::size_t> best_capped;
  std::optional<std::size_t> best_fallback;
  for (std::size_t k = 0; k < report.records.size(); ++k) {
    const auto& r = report.records[k];
    if (r.error) continue;
    if (r.gamma <= policy.gamma_cap && r.gamma_prime <= policy.gamma_cap &&
        (!best_capped || r.x_log > report.records[*best_capped].x_log))
      best_capped = k;
    const auto worst = [](const ValidationRecord& v) { return std::max(v.gamma, v.gamma_prime); };
    if (!best_fallback || worst(r) < worst(report.records[*best_fallback])) best_fallback = k;
  }
  if (best_capped) return *best_capped;
  if (best_fallback) return *best_fallback;
  throw NumericError("no successful fit in the sweep");
}

void write_sweep_csv(std::ostream& out, const SweepReport& report) {
  out << "x,lambda,S,sigma_tr,sigma_cv,sigma_test,gamma,gamma_prime\n";
  for (const auto& r : report.records) {
    out << format_number(r.x_log) << ',' << format_number(r.lambda) << ',' << r.S << ','
        << format_number(r.sigma_tr) << ',' << format_number(r.sigma_cv) << ',' << format_number(r.sigma_test)
        << ',' << format_number(r.gamma) << ',' << format_number(r.gamma_prime) << '\n';
  }
}

void write_sweep_json(std::ostream& out, const SweepReport& report) {
  nlohmann::json doc;
  doc["policy"] = report.policy;
  doc["chosen"] = report.chosen;
  doc["records"] = nlohmann::json::array();
  for (const auto& r : report.records) {
    nlohmann::json rec{{"x", r.x_log},           {"lambda", r.lambda},         {"S", r.S},
                       {"sigma_tr", r.sigma_tr}, {"sigma_cv", r.sigma_cv},     {"sigma_test", r.sigma_test},
                       {"gamma", r.gamma},       {"gamma_prime", r.gamma_prime}, {"stop", r.stop}};
    if (r.error) rec["error"] = *r.error;
    doc["records"].push_back(std::move(rec));
  }
  out << doc.dump(2) << '\n';
}

}  // namespace orthofit
