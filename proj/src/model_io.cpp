#include "orthofit/model_io.hpp"

#include <cmath>
#include <fstream>

#include <json.hpp>

namespace orthofit {

namespace {

template <class Range>
std::string number_list(const Range& values) {
  std::string out = "[";
  bool first = true;
  for (const auto& v : values) {
    if (!first) out += ", ";
    out += format_exact(static_cast<double>(v));
    first = false;
  }
  return out + "]";
}

}  // namespace

void write_model(std::ostream& out, const SurfaceModel& model, bool include_audit) {
  const auto& m = model.map;
  out << "{\n";
  out << "  \"format\": \"" << kModelFormatName << "\",\n";
  out << "  \"version\": " << kModelFormatVersion << ",\n";
  out << "  \"S\": " << model.S << ",\n";
  out << "  \"lambda\": " << format_exact(model.lambda) << ",\n";
  out << "  \"sigma_tr\": " << format_exact(model.sigma_tr) << ",\n";
  out << "  \"normalization\": {"
      << "\"x_min\": " << format_exact(m.x_min) << ", \"x_max\": " << format_exact(m.x_max)
      << ", \"y_min\": " << format_exact(m.y_min) << ", \"y_max\": " << format_exact(m.y_max)
      << ", \"z_min\": " << format_exact(m.z_min) << ", \"z_max\": " << format_exact(m.z_max) << "},\n";
  out << "  \"kept_indices\": [";
  for (std::size_t k = 0; k < model.kept.size(); ++k) out << (k ? ", " : "") << model.kept[k];
  out << "],\n";
  out << "  \"c\": " << number_list(model.c);
  if (!model.c_lo.empty()) out << ",\n  \"c_lo\": " << number_list(model.c_lo);
  if (include_audit && model.audit) {
    out << ",\n  \"audit\": {\n    \"b\": " << number_list(model.audit->b) << ",\n    \"a\": [";
    for (std::size_t s = 0; s < model.audit->a.size(); ++s)
      out << (s ? ",\n      " : "\n      ") << number_list(model.audit->a[s]);
    out << "\n    ]\n  }";
  }
  out << "\n}\n";
}

void save_model(const std::string& path, const SurfaceModel& model, bool include_audit) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write model file '" + path + "'");
  write_model(out, model, include_audit);
}

SurfaceModel read_model(std::istream& in) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("model file is not valid JSON: ") + e.what());
  }
  try {
    if (doc.value("format", std::string{}) != kModelFormatName) throw DataError("not an orthofit surface model");
    const int version = doc.at("version").get<int>();
    if (version != kModelFormatVersion)
      throw DataError("unsupported model version " + std::to_string(version) + " (expected " +
                      std::to_string(kModelFormatVersion) + ")");
    SurfaceModel model;
    model.S = doc.at("S").get<std::size_t>();
    model.lambda = doc.at("lambda").get<double>();
    model.sigma_tr = doc.at("sigma_tr").get<double>();
    const auto& n = doc.at("normalization");
    model.map = {n.at("x_min").get<double>(), n.at("x_max").get<double>(), n.at("y_min").get<double>(),
                 n.at("y_max").get<double>(), n.at("z_min").get<double>(), n.at("z_max").get<double>()};
    model.kept = doc.at("kept_indices").get<std::vector<std::size_t>>();
    model.c = doc.at("c").get<std::vector<double>>();
    if (model.kept.size() != model.c.size()) throw DataError("model has mismatched kept_indices and c lengths");
    if (doc.contains("c_lo")) {
      model.c_lo = doc["c_lo"].get<std::vector<double>>();
      if (model.c_lo.size() != model.c.size()) throw DataError("model has mismatched c and c_lo lengths");
    }
    if (doc.contains("audit")) {
      OrthoAudit audit;
      audit.b = doc["audit"].at("b").get<std::vector<double>>();
      audit.a = doc["audit"].at("a").get<std::vector<std::vector<double>>>();
      model.audit = std::move(audit);
    }
    return model;
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("malformed model file: ") + e.what());
  }
}

SurfaceModel load_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open model file '" + path + "'");
  return read_model(in);
}

}  // namespace orthofit
