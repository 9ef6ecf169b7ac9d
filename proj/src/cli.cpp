#include "orthofit/cli.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "orthofit/basis.hpp"
#include "orthofit/dataset.hpp"
#include "orthofit/errors.hpp"
#include "orthofit/fit.hpp"
#include "orthofit/format.hpp"
#include "orthofit/model.hpp"
#include "orthofit/model_io.hpp"
#include "orthofit/select.hpp"
#include "orthofit/synth.hpp"

namespace orthofit::cli {

namespace {

enum class ReportFormat { Text, Csv, Json };

struct FitFlags {
  double lambda = 0.0;
  std::string sample_by = "y";
  int sample_factor = 3;
  int max_degree = 20;
  double target_error = 1e-24;
  double stop_rel = 0.05;
  int patience = 2;
  std::string precision = "extended";
  bool odd_field_only = false;
  std::optional<std::size_t> fixed_S;
  std::string report = "text";
};

void add_fit_flags(CLI::App& cmd, FitFlags& f, bool with_lambda) {
  if (with_lambda) cmd.add_option("--lambda", f.lambda, "Regularization strength (>= 0)")->check(CLI::NonNegativeNumber);
  cmd.add_option("--sample-by", f.sample_by, "Axis the split sorts by")->check(CLI::IsMember({"x", "y"}));
  cmd.add_option("--sample-factor", f.sample_factor, "Sampling factor f; (f-1)/f of the data trains")
      ->check(CLI::Range(2, 1000));
  cmd.add_option("--max-degree", f.max_degree, "Largest total degree of the monomial basis")->check(CLI::Range(1, 200));
  cmd.add_option("--target-error", f.target_error, "Stop once the training error reaches this value");
  cmd.add_option("--stop-rel", f.stop_rel, "Per-degree-block relative improvement below which a block stalls");
  cmd.add_option("--patience", f.patience, "Consecutive stalled blocks before stopping")->check(CLI::PositiveNumber);
  cmd.add_option("--precision", f.precision, "Working precision")->check(CLI::IsMember({"double", "extended"}));
  cmd.add_flag("--odd-field-only", f.odd_field_only, "Keep only monomials with odd powers of x");
  cmd.add_option("--fixed-S", f.fixed_S, "Fit exactly S+1 orthogonal polynomials");
  cmd.add_option("--report", f.report, "Report format")->check(CLI::IsMember({"text", "csv", "json"}));
}

FitConfig to_fit_config(const FitFlags& f) {
  FitConfig cfg;
  cfg.lambda = f.lambda;
  cfg.max_columns = columns_for_degree(static_cast<std::size_t>(f.max_degree));
  cfg.target_error = f.target_error;
  cfg.stop_rel_improvement = f.stop_rel;
  cfg.stop_patience_blocks = f.patience;
  cfg.precision = f.precision == "double" ? Precision::Double : Precision::Extended;
  cfg.odd_field_only = f.odd_field_only;
  cfg.fixed_S = f.fixed_S;
  return cfg;
}

SplitConfig to_split_config(const FitFlags& f) {
  return {f.sample_by == "x" ? SampleAxis::X : SampleAxis::Y, f.sample_factor};
}

ReportFormat to_format(const std::string& s) {
  if (s == "csv") return ReportFormat::Csv;
  if (s == "json") return ReportFormat::Json;
  return ReportFormat::Text;
}

// Ordered key/value report rendered identically in all three formats.
class Report {
 public:
  void add(const std::string& key, double v) { entries_.push_back({key, format_number(v), v, true}); }
  void add(const std::string& key, std::size_t v) {
    entries_.push_back({key, std::to_string(v), static_cast<double>(v), true});
  }
  void add(const std::string& key, const std::string& v) { entries_.push_back({key, v, 0.0, false}); }

  void write(std::ostream& out, ReportFormat format) const {
    switch (format) {
      case ReportFormat::Text:
        for (const auto& e : entries_) out << e.key << ": " << e.text << '\n';
        break;
      case ReportFormat::Csv: {
        for (std::size_t k = 0; k < entries_.size(); ++k) out << (k ? "," : "") << entries_[k].key;
        out << '\n';
        for (std::size_t k = 0; k < entries_.size(); ++k) out << (k ? "," : "") << entries_[k].text;
        out << '\n';
        break;
      }
      case ReportFormat::Json: {
        nlohmann::ordered_json doc;
        for (const auto& e : entries_) {
          if (!e.numeric)
            doc[e.key] = e.text;
          else if (e.text.find_first_of(".eEn") == std::string::npos)
            doc[e.key] = static_cast<std::size_t>(e.value);
          else
            doc[e.key] = e.value;
        }
        out << doc.dump(2) << '\n';
        break;
      }
    }
  }

 private:
  struct Entry {
    std::string key;
    std::string text;
    double value;
    bool numeric;
  };
  std::vector<Entry> entries_;
};

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write output file '" + path + "'");
  return out;
}

int cmd_fit(const std::string& input, const std::string& model_path, const FitFlags& flags, std::ostream& out,
            std::ostream& err) {
  const auto start = std::chrono::steady_clock::now();
  const auto data = normalize(load_dataset_file(input));
  const auto parts = split(data, to_split_config(flags));
  const auto fit = fit_surface(parts, data, to_fit_config(flags));
  const auto rec = validate(fit, data, parts);
  const double defect = fit.orthogonality_defect();
  const auto model = to_monomial(fit);
  if (!model_path.empty()) save_model(model_path, model);
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  Report report;
  report.add("N", data.size());
  report.add("n_train", parts.train_idx.size());
  report.add("n_cv", parts.cv_idx.size());
  report.add("n_test", parts.test_idx.size());
  report.add("S", fit.S);
  report.add("columns", fit.columns());
  report.add("lambda", fit.lambda);
  report.add("sigma_tr", rec.sigma_tr);
  report.add("sigma_cv", rec.sigma_cv);
  report.add("sigma_test", rec.sigma_test);
  report.add("gamma", rec.gamma);
  report.add("gamma_prime", rec.gamma_prime);
  report.add("orthogonality_defect", defect);
  report.add("stop", std::string(to_string(fit.stop)));
  report.add("precision", std::string(fit.precision == Precision::Extended ? "extended" : "double"));
  report.add("wall_time_s", wall);
  report.write(out, to_format(flags.report));
  if (!model_path.empty()) err << "model written to " << model_path << '\n';
  return kOk;
}

int cmd_sweep(const std::string& input, const std::string& grid_spec, const std::string& csv_path,
              const std::string& json_path, double gamma_cap, const FitFlags& flags, std::ostream& out) {
  const auto grid = parse_grid(grid_spec);
  const auto data = normalize(load_dataset_file(input));
  const auto parts = split(data, to_split_config(flags));
  SelectionPolicy policy;
  policy.gamma_cap = gamma_cap;
  const auto report = lambda_sweep(data, parts, grid, to_fit_config(flags), policy);

  if (!csv_path.empty()) {
    auto f = open_output(csv_path);
    write_sweep_csv(f, report);
  }
  if (!json_path.empty()) {
    auto f = open_output(json_path);
    write_sweep_json(f, report);
  }
  switch (to_format(flags.report)) {
    case ReportFormat::Csv: write_sweep_csv(out, report); break;
    case ReportFormat::Json: write_sweep_json(out, report); break;
    case ReportFormat::Text:
      for (std::size_t k = 0; k < report.records.size(); ++k) {
        const auto& r = report.records[k];
        out << (k == report.chosen ? "* " : "  ") << "x=" << format_number(r.x_log) << " S=" << r.S
            << " sigma_tr=" << format_number(r.sigma_tr) << " sigma_cv=" << format_number(r.sigma_cv)
            << " sigma_test=" << format_number(r.sigma_test) << " gamma=" << format_number(r.gamma)
            << " gamma'=" << format_number(r.gamma_prime);
        if (r.error) out << " error=" << *r.error;
        out << '\n';
      }
      out << "policy: " << report.policy << '\n';
      break;
  }
  bool any_ok = false;
  for (const auto& r : report.records) any_ok = any_ok || !r.error;
  return any_ok ? kOk : kNumeric;
}

std::pair<std::size_t, std::size_t> parse_dims(const std::string& spec) {
  const auto pos = spec.find_first_of("xX");
  std::size_t nx = 0, ny = 0;
  try {
    if (pos == std::string::npos) throw std::invalid_argument("missing x");
    nx = std::stoul(spec.substr(0, pos));
    ny = std::stoul(spec.substr(pos + 1));
  } catch (const std::exception&) {
    throw InputError("grid must look like NxM, got '" + spec + "'");
  }
  if (nx < 1 || ny < 1) throw InputError("grid dimensions must be positive");
  return {nx, ny};
}

int cmd_eval(const std::string& model_path, const std::string& points_path, const std::string& grid_spec,
             bool derivative, bool entropy, int steps, std::ostream& out, std::ostream& err) {
  if (points_path.empty() == grid_spec.empty()) throw InputError("eval needs exactly one of --points or --grid");
  const auto model = load_model(model_path);

  std::vector<std::pair<double, double>> where;
  if (!points_path.empty()) {
    ColumnSpec spec;
    spec.require_z = false;
    for (const auto& p : load_dataset_file(points_path, spec)) where.emplace_back(p.x_raw, p.y_raw);
  } else {
    const auto [nx, ny] = parse_dims(grid_spec);
    const auto& m = model.map;
    for (std::size_t j = 0; j < ny; ++j)
      for (std::size_t i = 0; i < nx; ++i) {
        const double u = nx == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(nx - 1);
        const double v = ny == 1 ? 0.0 : static_cast<double>(j) / static_cast<double>(ny - 1);
        where.emplace_back(m.inverse_x(u), m.inverse_y(v));
      }
  }

  out << "X,Y,Z" << (derivative ? ",dZdY" : "") << (entropy ? ",dS" : "") << '\n';
  std::size_t extrapolated = 0;
  for (const auto& [X, Y] : where) {
    const auto v = eval_physical(model, X, Y);
    extrapolated += v.extrapolated ? 1 : 0;
    out << format_number(X) << ',' << format_number(Y) << ',' << format_number(v.value);
    if (derivative) out << ',' << format_number(dZ_dY(model, X, Y));
    if (entropy) out << ',' << format_number(entropy_change(model, Y, X, steps));
    out << '\n';
  }
  if (extrapolated > 0) err << extrapolated << " point(s) lie outside the measuring rectangle\n";
  return kOk;
}

int cmd_export(const std::string& model_path, const std::string& format, const std::string& output,
               std::ostream& out) {
  const auto model = load_model(model_path);
  std::ofstream file;
  if (!output.empty()) file = open_output(output);
  std::ostream& dst = output.empty() ? out : file;
  if (format == "json") {
    write_model(dst, model, false);
  } else {
    dst << "t,x_power,y_power,c\n";
    for (std::size_t k = 0; k < model.kept.size(); ++k) {
      const auto idx = degree_block(model.kept[k]);
      dst << idx.t << ',' << idx.x_power() << ',' << idx.y_power() << ',' << format_exact(model.c[k]) << '\n';
    }
  }
  return kOk;
}

int cmd_synth(const std::string& surface, int degree, std::size_t nx, std::size_t ny, double noise,
              std::uint64_t seed, bool scattered, const std::string& output, std::ostream& out) {
  SynthSpec spec;
  spec.surface = surface == "plane" ? SurfaceKind::Plane
                 : surface == "poly" ? SurfaceKind::PolyDeg
                                     : SurfaceKind::MeanFieldMagnet;
  spec.degree = degree;
  spec.nx = nx;
  spec.ny = ny;
  spec.noise_sigma = noise;
  spec.seed = seed;
  spec.scattered = scattered;
  const auto synth = generate(spec);
  std::ofstream file;
  if (!output.empty()) file = open_output(output);
  std::ostream& dst = output.empty() ? out : file;
  write_dataset_csv(dst, synth.points, synth.header[0], synth.header[1], synth.header[2]);
  return kOk;
}

int cmd_split(const std::string& input, const FitFlags& flags, const std::string& output, std::ostream& out,
              std::ostream& err) {
  const auto data = normalize(load_dataset_file(input));
  const auto parts = split(data, to_split_config(flags));
  std::vector<const char*> group(data.size());
  for (auto i : parts.train_idx) group[i] = "train";
  for (auto i : parts.cv_idx) group[i] = "cv";
  for (auto i : parts.test_idx) group[i] = "test";
  std::ofstream file;
  if (!output.empty()) file = open_output(output);
  std::ostream& dst = output.empty() ? out : file;
  dst << "index,group\n";
  for (std::size_t i = 0; i < group.size(); ++i) dst << i << ',' << group[i] << '\n';
  err << "train=" << parts.train_idx.size() << " cv=" << parts.cv_idx.size() << " test=" << parts.test_idx.size()
      << '\n';
  return kOk;
}

}  // namespace

std::vector<double> parse_grid(const std::string& spec) {
  if (spec.empty()) throw InputError("empty grid specification");
  std::vector<double> values;
  const auto number = [&](const std::string& s) {
    try {
      std::size_t used = 0;
      const double v = std::stod(s, &used);
      if (used != s.size() || !std::isfinite(v)) throw std::invalid_argument(s);
      return v;
    } catch (const std::exception&) {
      throw InputError("bad number '" + s + "' in grid '" + spec + "'");
    }
  };
  if (spec.find(':') != std::string::npos) {
    std::vector<std::string> parts;
    std::stringstream ss(spec);
    for (std::string part; std::getline(ss, part, ':');) parts.push_back(part);
    if (parts.size() != 3) throw InputError("grid must look like lo:hi:step, got '" + spec + "'");
    const double lo = number(parts[0]), hi = number(parts[1]), step = number(parts[2]);
    if (!(step > 0.0) || hi < lo) throw InputError("grid needs step > 0 and hi >= lo");
    const auto count = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9)) + 1;
    for (std::size_t k = 0; k < count; ++k) values.push_back(lo + static_cast<double>(k) * step);
  } else {
    std::stringstream ss(spec);
    for (std::string part; std::getline(ss, part, ',');) values.push_back(number(part));
  }
  if (values.empty()) throw InputError("grid specification yields no values");
  return values;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Regularized bivariate orthogonal-polynomial surface fitting"};
  app.require_subcommand(1, 1);

  std::string input, model_path, points_path, grid_spec, x_grid, csv_path, json_path, output, format = "csv";
  std::string surface = "magnet";
  FitFlags fit_flags, sweep_flags, split_flags;
  double gamma_cap = 1.0, noise = 0.0;
  bool derivative = false, entropy = false, scattered = false;
  int steps = 200, degree = 4;
  std::size_t nx = 40, ny = 40;
  std::uint64_t seed = 1;

  auto* fit = app.add_subcommand("fit", "Fit a surface and write a model file");
  fit->add_option("-i,--input", input, "Data file (CSV or TSV with x,y,z or H,T,M header)")->required();
  fit->add_option("-m,--model", model_path, "Where to write the model file");
  add_fit_flags(*fit, fit_flags, true);

  auto* sweep = app.add_subcommand("sweep", "Sweep lambda = exp(-x) over a grid and select a model");
  sweep->add_option("-i,--input", input, "Data file")->required();
  sweep->add_option("--x-grid", x_grid, "Exponent grid lo:hi:step or a comma list")->required();
  sweep->add_option("--csv", csv_path, "Write the sweep report as CSV");
  sweep->add_option("--json", json_path, "Write the sweep report as JSON");
  sweep->add_option("--gamma-cap", gamma_cap, "Overfitting-degree cap of the selection policy");
  add_fit_flags(*sweep, sweep_flags, false);

  auto* eval = app.add_subcommand("eval", "Evaluate a model in original units");
  eval->add_option("-m,--model", model_path, "Model file")->required();
  eval->add_option("--points", points_path, "CSV with x,y (or H,T) columns");
  eval->add_option("--grid", grid_spec, "NxM grid over the measuring rectangle");
  eval->add_flag("--derivative", derivative, "Add dZ/dY");
  eval->add_flag("--entropy", entropy, "Add the field integral of dZ/dY from the lowest field");
  eval->add_option("--steps", steps, "Simpson intervals for --entropy")->check(CLI::Range(2, 1000000));

  auto* exp = app.add_subcommand("export", "Re-emit a model as a coefficient table or plain JSON");
  exp->add_option("-m,--model", model_path, "Model file")->required();
  exp->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  exp->add_option("-o,--output", output, "Output path (default stdout)");

  auto* syn = app.add_subcommand("synth", "Generate a synthetic dataset");
  syn->add_option("--surface", surface, "plane, poly or magnet")->check(CLI::IsMember({"plane", "poly", "magnet"}));
  syn->add_option("--degree", degree, "Total degree for --surface poly")->check(CLI::NonNegativeNumber);
  syn->add_option("--nx", nx, "Grid points along x");
  syn->add_option("--ny", ny, "Grid points along y");
  syn->add_option("--noise", noise, "Noise standard deviation in z units");
  syn->add_option("--seed", seed, "Generator seed");
  syn->add_flag("--scattered", scattered, "Uniform random points instead of a grid");
  syn->add_option("-o,--output", output, "Output path (default stdout)");

  auto* spl = app.add_subcommand("split", "Show the training / cross-validation / test assignment");
  spl->add_option("-i,--input", input, "Data file")->required();
  spl->add_option("--sample-by", split_flags.sample_by, "Axis the split sorts by")->check(CLI::IsMember({"x", "y"}));
  spl->add_option("--sample-factor", split_flags.sample_factor, "Sampling factor")->check(CLI::Range(2, 1000));
  spl->add_option("-o,--output", output, "Output path (default stdout)");

  std::vector<std::string> argv(args.rbegin(), args.rend());
  try {
    app.parse(argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  }

  try {
    if (fit->parsed()) return cmd_fit(input, model_path, fit_flags, out, err);
    if (sweep->parsed()) return cmd_sweep(input, x_grid, csv_path, json_path, gamma_cap, sweep_flags, out);
    if (eval->parsed()) return cmd_eval(model_path, points_path, grid_spec, derivative, entropy, steps, out, err);
    if (exp->parsed()) return cmd_export(model_path, format, output, out);
    if (syn->parsed()) return cmd_synth(surface, degree, nx, ny, noise, seed, scattered, output, out);
    if (spl->parsed()) return cmd_split(input, split_flags, output, out, err);
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const DataError& e) {
    err << "error: " << e.what() << '\n';
    return kData;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kNumeric;
  }
  return kUsage;
}

}  // namespace orthofit::cli
