#include "orthofit/dataset.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <optional>
#include <string_view>

#include "orthofit/errors.hpp"
#include "orthofit/format.hpp"

namespace orthofit {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> tokenize(std::string_view line, char delim) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(delim, start);
    out.push_back(trim(line.substr(start, pos == std::string_view::npos ? pos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

bool iequals(std::string_view a, std::string_view b) {
  return a.size() == b.size() && std::equal(a.begin(), a.end(), b.begin(), [](char l, char r) {
           return std::tolower(static_cast<unsigned char>(l)) == std::tolower(static_cast<unsigned char>(r));
         });
}

std::optional<std::size_t> find_column(const std::vector<std::string_view>& header,
                                       const std::vector<std::string>& names) {
  for (const auto& name : names)
    for (std::size_t i = 0; i < header.size(); ++i)
      if (iequals(header[i], name)) return i;
  return std::nullopt;
}

double parse_number(std::string_view field, std::size_t line, const char* label) {
  if (!field.empty() && field.front() == '+') field.remove_prefix(1);
  double value = 0.0;
  const auto* end = field.data() + field.size();
  const auto [ptr, ec] = std::from_chars(field.data(), end, value);
  if (field.empty() || ec != std::errc{} || ptr != end)
    throw ParseError(line, std::string("non-numeric ") + label + " field '" + std::string(field) + "'");
  if (!std::isfinite(value)) throw ParseError(line, std::string("non-finite ") + label + " value");
  return value;
}

}  // namespace

std::vector<DataPoint> load_dataset(std::istream& source, const ColumnSpec& columns) {
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  char delim = ',';
  std::size_t arity = 0;
  std::size_t cx = 0, cy = 0;
  std::optional<std::size_t> cz;
  std::vector<DataPoint> points;

  while (std::getline(source, line)) {
    ++line_no;
    std::string_view view = trim(line);
    if (line_no == 1 && view.size() >= 3 && view.substr(0, 3) == "\xEF\xBB\xBF") view = trim(view.substr(3));
    if (view.empty()) continue;

    if (!have_header) {
      delim = view.find('\t') != std::string_view::npos ? '\t' : ',';
      const auto header = tokenize(view, delim);
      const auto ix = find_column(header, columns.x_names);
      const auto iy = find_column(header, columns.y_names);
      const auto iz = find_column(header, columns.z_names);
      if (!ix || !iy || (!iz && columns.require_z))
        throw ParseError(line_no, "header must name x,y,z (or H,T,M) columns");
      cx = *ix;
      cy = *iy;
      cz = iz;
      arity = header.size();
      have_header = true;
      continue;
    }

    const auto fields = tokenize(view, delim);
    if (fields.size() != arity)
      throw ParseError(line_no, "expected " + std::to_string(arity) + " fields, found " + std::to_string(fields.size()));
    points.push_back({parse_number(fields[cx], line_no, "x"), parse_number(fields[cy], line_no, "y"),
                      cz ? parse_number(fields[*cz], line_no, "z") : 0.0});
  }

  if (!have_header) throw InputError("empty input: no header row");
  if (points.empty()) throw InputError("input has a header but no data rows");
  return points;
}

std::vector<DataPoint> load_dataset_file(const std::string& path, const ColumnSpec& columns) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open input file '" + path + "'");
  return load_dataset(in, columns);
}

void write_dataset_csv(std::ostream& out, const std::vector<DataPoint>& points, const std::string& x_name,
                       const std::string& y_name, const std::string& z_name) {
  out << x_name << ',' << y_name << ',' << z_name << '\n';
  for (const auto& p : points)
    out << format_exact(p.x_raw) << ',' << format_exact(p.y_raw) << ',' << format_exact(p.z_raw) << '\n';
}

NormalizedDataset normalize(const std::vector<DataPoint>& points) {
  if (points.size() < 3) throw DataError("normalization needs at least 3 points");

  NormalizationMap map;
  const auto [xmin, xmax] = std::minmax_element(points.begin(), points.end(),
                                                [](const auto& a, const auto& b) { return a.x_raw < b.x_raw; });
  const auto [ymin, ymax] = std::minmax_element(points.begin(), points.end(),
                                                [](const auto& a, const auto& b) { return a.y_raw < b.y_raw; });
  const auto [zmin, zmax] = std::minmax_element(points.begin(), points.end(),
                                                [](const auto& a, const auto& b) { return a.z_raw < b.z_raw; });
  map.x_min = xmin->x_raw;
  map.x_max = xmax->x_raw;
  map.y_min = ymin->y_raw;
  map.y_max = ymax->y_raw;
  map.z_min = zmin->z_raw;
  map.z_max = zmax->z_raw;
  if (!(map.x_min < map.x_max)) throw DataError("degenerate x axis: all x values are equal");
  if (!(map.y_min < map.y_max)) throw DataError("degenerate y axis: all y values are equal");

  NormalizedDataset out;
  out.map = map;
  out.points.reserve(points.size());
  for (const auto& p : points)
    out.points.push_back({map.forward_x(p.x_raw), map.forward_y(p.y_raw), map.forward_z(p.z_raw)});
  return out;
}

PhysicalPoint denormalize(const NormalizationMap& map, double x, double y, double z) {
  return {map.inverse_x(x), map.inverse_y(y), map.inverse_z(z)};
}

DataSplit split(const NormalizedDataset& data, const SplitConfig& cfg) {
  const auto f = static_cast<std::size_t>(cfg.sample_factor);
  if (cfg.sample_factor < 2) throw InputError("sample factor must be at least 2");
  const std::size_t n = data.size();
  if (n < 2 * f)
    throw DataError("split needs at least " + std::to_string(2 * f) + " points, got " + std::to_string(n));

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  const bool by_x = cfg.sample_axis == SampleAxis::X;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const auto& pa = data.points[a];
    const auto& pb = data.points[b];
    const double ka = by_x ? pa.x : pa.y, kb = by_x ? pb.x : pb.y;
    if (ka != kb) return ka < kb;
    const double sa = by_x ? pa.y : pa.x, sb = by_x ? pb.y : pb.x;
    if (sa != sb) return sa < sb;
    return a < b;
  });

  const std::size_t block = 2 * f;
  const std::size_t full_end = (n / block) * block;
  const std::size_t tail = n - full_end;
  const std::size_t tail_train = tail * (f - 1) / f;

  DataSplit out;
  out.train_idx.reserve(n * (f - 1) / f + 1);
  for (std::size_t pos = 0; pos < n; ++pos) {
    std::size_t slot = pos % block;
    if (pos >= full_end) {
      // Remap the partial block so training takes its pro-rata share first.
      const std::size_t k = pos - full_end;
      slot = k < tail_train ? 0 : (k == tail_train ? block - 2 : block - 1);
    }
    if (slot < block - 2)
      out.train_idx.push_back(order[pos]);
    else if (slot == block - 2)
      out.cv_idx.push_back(order[pos]);
    else
      out.test_idx.push_back(order[pos]);
  }
  return out;
}

}  // namespace orthofit
