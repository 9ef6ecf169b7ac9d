// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "corpus.hpp"
#include "oracles.hpp"
#include "orthofit/basis.hpp"
#include "orthofit/fit.hpp"
#include "orthofit/kernels.hpp"
#include "orthofit/model.hpp"
#include "orthofit/ortho.hpp"
#include "orthofit/select.hpp"
#include "orthofit/synth.hpp"

using namespace orthofit;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

// Reference rows: label, sigma_tr, sigma_cv, sigma_test, gamma, gamma'. T1 varies S at lambda = 0,
// T2 varies x at S = 78, T3 varies x with S chosen by the stop rule.
struct TableRow {
  const char* label;
  double tr, cv, test, gamma, gamma_prime;
};

const TableRow kTables[] = {
    {"T1 S=2", 0.879011E-02, 0.898435E-02, 0.887978E-02, -3.81, -4.58},
    {"T1 S=16", 0.868127E-03, 0.752606E-03, 0.918941E-03, -2.02, -2.84},
    {"T1 S=50", 0.966997E-04, 0.873995E-04, 0.104586E-03, -2.34, -2.51},
    {"T1 S=92", 0.934213E-05, 0.158334E-04, 0.901059E-05, -0.36, -3.34},
    {"T1 S=230", 0.407959E-06, 0.162667E-04, 0.624748E-06, 3.66, -0.63},
    {"T2 x=13", 0.357571E-02, 0.346652E-02, 0.363449E-02, -3.49, -4.11},
    {"T2 x=15", 0.193027E-02, 0.184704E-02, 0.195522E-02, -3.14, -4.35},
    {"T2 x=17", 0.903203E-03, 0.883599E-03, 0.907491E-03, -3.83, -5.35},
    {"T2 x=19", 0.489599E-03, 0.535881E-03, 0.486862E-03, -2.36, -5.17},
    {"T2 x=21", 0.200504E-03, 0.322430E-03, 0.201699E-03, -0.50, -5.34},
    {"T2 x=23", 0.493752E-04, 0.845318E-04, 0.526989E-04, -0.34, -2.92},
    {"T3 x=10", 0.528493E-02, 0.510816E-02, 0.531742E-02, -3.40, -5.07},
    {"T3 x=20", 0.329224E-03, 0.420514E-03, 0.326656E-03, -1.28, -4.82},
    {"T3 x=30", 0.568479E-05, 0.233510E-04, 0.524090E-05, 1.13, -2.55},
    {"T3 x=40", 0.696329E-06, 0.273960E-05, 0.724544E-06, 1.07, -3.19},
};

std::string fmt(const char* f, double a, double b = 0, double c = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

Outcome gamma_arithmetic() {
  std::string bad;
  int mismatches = 0;
  for (const auto& r : kTables) {
    const double g = overfit_degree(r.tr, r.cv), gp = overfit_degree(r.tr, r.test);
    if (std::fabs(g - r.gamma) > 0.01) {
      ++mismatches;
      bad += std::string(" ") + r.label + fmt(" gamma %.2f vs %.2f;", g, r.gamma);
    }
    if (std::fabs(gp - r.gamma_prime) > 0.01) {
      ++mismatches;
      bad += std::string(" ") + r.label + fmt(" gamma' %.2f vs %.2f;", gp, r.gamma_prime);
    }
  }
  return {mismatches == 0, fmt("%.0f of 30 printed values differ by more than 0.01", mismatches) + (bad.empty() ? "" : ":" + bad)};
}

Outcome orthogonality() {
  const std::size_t n = 2000, L = 200;
  int good = 0;
  double worst_igs = 0.0;
  const OrthoScheme order[3] = {OrthoScheme::Iterated, OrthoScheme::Modified, OrthoScheme::Classical};
  for (int trial = 0; trial < 20; ++trial) {
    Xoshiro256 rng(1000 + static_cast<std::uint64_t>(trial));
    std::vector<double> xs(n), ys(n);
    for (std::size_t i = 0; i < n; ++i) {
      xs[i] = rng.uniform();
      ys[i] = rng.uniform();
    }
    const auto table = kernels::fill_basis_table<double>(xs, ys, L, false);
    double d[3];
    for (int k = 0; k < 3; ++k) {
      OrthoBasis<double> basis(n, false);
      OrthoConfig cfg;
      cfg.scheme = order[k];
      for (std::size_t t = 0; t <= L; ++t) append_column<double>(basis, table.values.col(t), {}, t, cfg);
      d[k] = orthogonality_defect(basis);
    }
    worst_igs = std::max(worst_igs, d[0]);
    good += d[0] <= 1e-12 && d[1] > d[0] && d[2] > d[1];
  }
  return {good >= 18, fmt("%.0f/20 trials ordered, worst IGS defect %.2e", good, worst_igs)};
}

Outcome least_squares_oracle() {
  Xoshiro256 rng(2024);
  double worst = 0.0;
  for (int inst = 0; inst < 25; ++inst) {
    const std::size_t cols = 3 + static_cast<std::size_t>(rng.uniform() * 26);
    const std::size_t n = 30 + static_cast<std::size_t>(rng.uniform() * 31);
    std::vector<DataPoint> pts;
    for (std::size_t i = 0; i < n; ++i) {
      const double x = rng.uniform(), y = rng.uniform();
      pts.push_back({x, y, std::exp(-x) * std::sin(4 * y) + 0.3 * x * y + 0.02 * rng.normal()});
    }
    const auto d = normalize(pts);
    const auto s = split(d, {});
    FitConfig cfg;
    cfg.max_columns = cols;
    cfg.fixed_S = std::min(cols, s.train_idx.size()) - 1;
    const auto fit = fit_surface(s, d, cfg);

    std::vector<double> xs, ys, zs;
    for (auto i : s.train_idx) {
      xs.push_back(d.points[i].x);
      ys.push_back(d.points[i].y);
      zs.push_back(d.points[i].z);
    }
    const auto coef = oracle::least_squares(xs, ys, zs, fit.kept());
    double err = 0.0, scale = 0.0;
    for (const auto& p : d.points) {
      const double ref = static_cast<double>(oracle::eval_graded(coef, fit.kept(), p.x, p.y));
      err = std::max(err, std::fabs(eval_ortho(fit, p.x, p.y) - ref));
      scale = std::max(scale, std::fabs(ref));
    }
    worst = std::max(worst, err / scale);
  }
  return {worst <= 1e-8, fmt("worst relative deviation %.2e", worst)};
}

Outcome regularization_decay() {
  const auto d = corpus::magnet_noisy();
  FitConfig cfg;
  cfg.lambda = 1e6;
  // The stall rule would end this fit before t = 10 and make the check vacuous.
  cfg.stop_rel_improvement = 0.0;
  const auto fit = fit_surface(split(d, {}), d, cfg);
  double peak = 0.0;
  for (std::size_t t = 0; t < fit.b.size(); ++t) peak = std::max(peak, std::fabs(to_double(fit.b[t] * fit.Q[t])));
  DoubleDouble R{0.0};
  double worst = 0.0;
  for (std::size_t t = 0; t < fit.b.size(); ++t) {
    R += fit.b[t] * fit.Q[t];  // R_{t+1}
    if (t >= 10) worst = std::max(worst, std::fabs(to_double(R)));
  }
  const double ratio = peak > 0.0 ? worst / peak : 0.0;
  return {fit.b.size() > 10 && ratio <= 1e-3, fmt("max_t>=10 |R_t+1| / max |b Q| = %.3e over S = %.0f", ratio, static_cast<double>(fit.S))};
}

Outcome conversion_fidelity() {
  const auto d = corpus::magnet_scattered();
  FitConfig cfg;
  cfg.fixed_S = 150;
  const auto fit = fit_surface(split(d, {}), d, cfg);
  const auto ext = to_monomial(fit, Precision::Extended);
  const auto dbl = to_monomial(fit, Precision::Double);
  Xoshiro256 rng(9);
  double e_ext = 0.0, e_dbl = 0.0;
  for (int k = 0; k < 500; ++k) {
    const double x = rng.uniform(), y = rng.uniform();
    const double o = eval_ortho(fit, x, y);
    e_ext = std::max(e_ext, std::fabs(eval_monomial(ext, x, y) - o));
    e_dbl = std::max(e_dbl, std::fabs(eval_monomial(dbl, x, y, Precision::Double) - o));
  }
  return {fit.S == 150 && e_ext <= 1e-9 && e_dbl >= 10 * e_ext,
          fmt("S = %.0f, extended %.2e, double %.2e", static_cast<double>(fit.S), e_ext, e_dbl)};
}

Outcome sweep_trend() {
  const auto d = corpus::magnet_noisy();
  const auto rep = lambda_sweep(d, split(d, {}), std::vector<double>{10, 20, 30, 40}, FitConfig{});
  bool ok = rep.records.size() == 4;
  std::string detail;
  double lowest = 1e300;
  bool crossed = false;
  for (std::size_t k = 0; k < rep.records.size(); ++k) {
    const auto& r = rep.records[k];
    ok = ok && !r.error;
    if (k > 0) ok = ok && r.sigma_tr < rep.records[k - 1].sigma_tr;
    if (r.gamma > 0.0 && lowest < -1.0) crossed = true;
    lowest = std::min(lowest, r.gamma);
    detail += fmt(" x=%.0f S=%.0f", r.x_log, static_cast<double>(r.S)) + fmt(" tr=%.3e g=%.2f;", r.sigma_tr, r.gamma);
  }
  return {ok && crossed, "sigma_tr / gamma:" + detail};
}

Outcome split_contract() {
  std::size_t cases = 0, bad = 0;
  for (int f = 2; f <= 5; ++f)
    for (std::size_t n = 2 * static_cast<std::size_t>(f); n <= 200; ++n) {
      Xoshiro256 rng(n * 10 + static_cast<std::uint64_t>(f));
      std::vector<DataPoint> pts;
      for (std::size_t i = 0; i < n; ++i) pts.push_back({rng.uniform(), std::floor(rng.uniform() * 20), rng.uniform()});
      const auto d = normalize(pts);
      const SplitConfig cfg{SampleAxis::Y, f};
      const auto a = split(d, cfg), b = split(d, cfg);
      std::vector<int> seen(n, 0);
      for (const auto* g : {&a.train_idx, &a.cv_idx, &a.test_idx})
        for (auto i : *g) ++seen[i];
      const bool partition = std::all_of(seen.begin(), seen.end(), [](int c) { return c == 1; });
      const auto expect = static_cast<long>(n * static_cast<std::size_t>(f - 1) / static_cast<std::size_t>(f));
      const bool size_ok = std::labs(static_cast<long>(a.train_idx.size()) - expect) <= 1;
      ++cases;
      bad += !(partition && size_ok && a == b);
    }
  return {bad == 0, fmt("%.0f of %.0f cases violate the contract", static_cast<double>(bad), static_cast<double>(cases))};
}

Outcome derivative_checks() {
  const std::size_t L = columns_for_degree(10) - 1;
  Xoshiro256 rng(31);
  double worst = 0.0;
  for (int k = 0; k < 100; ++k) {
    const double x = rng.uniform(), y = rng.uniform();
    // Double-double differences with steps proportional to the coordinate keep
    // both rounding and truncation well below the tolerance.
    const DoubleDouble X{x}, Y{y}, hx{1e-5 * x}, hy{1e-5 * y};
    const auto f0 = basis_values<DoubleDouble>(X, Y, L);
    const auto fxp = basis_values<DoubleDouble>(X + hx, Y, L), fxm = basis_values<DoubleDouble>(X - hx, Y, L);
    const auto fyp = basis_values<DoubleDouble>(X, Y + hy, L), fym = basis_values<DoubleDouble>(X, Y - hy, L);
    const auto d2x = basis_d2x<double>(x, y, L), d2y = basis_d2y<double>(x, y, L), dy = basis_dy<double>(x, y, L);
    for (std::size_t t = 0; t <= L; ++t) {
      const double fd_xx = to_double((fxp[t] - 2.0 * f0[t] + fxm[t]) / (hx * hx));
      const double fd_yy = to_double((fyp[t] - 2.0 * f0[t] + fym[t]) / (hy * hy));
      const double fd_y = to_double((fyp[t] - fym[t]) / (2.0 * hy));
      // Identically zero derivatives leave only double-double rounding noise,
      // of order 1e-32 |f| / h^k for a k-th difference.
      const double f = std::fabs(to_double(f0[t]));
      const auto rel = [](double fd, double exact, double noise) {
        if (exact == 0.0) return std::fabs(fd) <= noise ? 0.0 : INFINITY;
        return std::fabs(fd - exact) / std::fabs(exact);
      };
      const double hx2 = 1e-10 * x * x, hy2 = 1e-10 * y * y;
      worst = std::max({worst, rel(fd_xx, d2x[t], 1e-28 * f / hx2), rel(fd_yy, d2y[t], 1e-28 * f / hy2),
                        rel(fd_y, dy[t], 1e-28 * f / (1e-5 * y))});
    }
  }
  return {worst <= 1e-5, fmt("worst relative deviation %.2e over %.0f functions", worst, static_cast<double>(L + 1))};
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double budget_s;
    std::function<Outcome()> run;
  };
  const Criterion criteria[] = {
      {1, "gamma arithmetic on the reference rows", 1, gamma_arithmetic},
      {2, "orthogonality defect ordering", 60, orthogonality},
      {3, "least-squares oracle equivalence", 30, least_squares_oracle},
      {4, "regularization decay", 30, regularization_decay},
      {5, "conversion fidelity", 120, conversion_fidelity},
      {6, "sweep trend", 180, sweep_trend},
      {7, "split contract", 5, split_contract},
      {8, "derivative checks", 5, derivative_checks},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    const auto out = c.run();
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool pass = out.pass && secs < c.budget_s;
    failures += !pass;
    std::printf("criterion %d %s: %s (%.2f s, budget %.0f s) %s\n", c.id, c.name, pass ? "PASS" : "FAIL", secs,
                c.budget_s, out.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of 8 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
