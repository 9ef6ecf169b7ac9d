#pragma once

// Raw measurement ingestion, size normalization onto the unit square, and the
// deterministic training / cross-validation / test partition.

#include <cstddef>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

namespace orthofit {

struct DataPoint {
  double x_raw = 0.0;
  double y_raw = 0.0;
  double z_raw = 0.0;
};

/// Affine bounds of each raw coordinate. z_min == z_max marks constant-z data.
struct NormalizationMap {
  double x_min = 0.0, x_max = 1.0;
  double y_min = 0.0, y_max = 1.0;
  double z_min = 0.0, z_max = 1.0;

  double forward_x(double x) const { return (x - x_min) / (x_max - x_min); }
  double forward_y(double y) const { return (y - y_min) / (y_max - y_min); }
  double forward_z(double z) const { return z_max == z_min ? 0.0 : (z - z_min) / (z_max - z_min); }
  double inverse_x(double x) const { return x_min + x * (x_max - x_min); }
  double inverse_y(double y) const { return y_min + y * (y_max - y_min); }
  double inverse_z(double z) const { return z_min + z * (z_max - z_min); }

  bool contains(double x_raw, double y_raw) const {
    return x_raw >= x_min && x_raw <= x_max && y_raw >= y_min && y_raw <= y_max;
  }

  friend bool operator==(const NormalizationMap&, const NormalizationMap&) = default;
};

struct NormalizedPoint {
  double x, y, z;
};

struct NormalizedDataset {
  std::vector<NormalizedPoint> points;
  NormalizationMap map;

  std::size_t size() const noexcept { return points.size(); }
};

enum class SampleAxis { X, Y };

struct SplitConfig {
  SampleAxis sample_axis = SampleAxis::Y;
  int sample_factor = 3;
};

struct DataSplit {
  std::vector<std::size_t> train_idx;
  std::vector<std::size_t> cv_idx;
  std::vector<std::size_t> test_idx;

  friend bool operator==(const DataSplit&, const DataSplit&) = default;
};

/// Which header names label the three columns; the loader accepts either set.
struct ColumnSpec {
  std::vector<std::string> x_names{"x", "H"};
  std::vector<std::string> y_names{"y", "T"};
  std::vector<std::string> z_names{"z", "M"};
  /// When false a missing z column is accepted and z_raw is left at 0.
  bool require_z = true;
};

/// Parses delimiter-separated text (comma or tab, taken from the header line).
/// Throws ParseError carrying the 1-based line number on malformed rows.
std::vector<DataPoint> load_dataset(std::istream& source, const ColumnSpec& columns = {});
std::vector<DataPoint> load_dataset_file(const std::string& path, const ColumnSpec& columns = {});

/// Writes the dialect load_dataset reads: a header row, comma separators and
/// 17-significant-digit numbers.
void write_dataset_csv(std::ostream& out, const std::vector<DataPoint>& points,
                       const std::string& x_name = "x", const std::string& y_name = "y",
                       const std::string& z_name = "z");

/// Throws DataError when fewer than 3 points are given or the x or y range is degenerate.
NormalizedDataset normalize(const std::vector<DataPoint>& points);

struct PhysicalPoint {
  double x, y, z;
};

PhysicalPoint denormalize(const NormalizationMap& map, double x, double y, double z);

/// Sorts along the sampling axis and deals consecutive blocks of 2f points:
/// 2(f-1) to training, one to cross-validation, one to test. A trailing
/// partial block of r points gives floor(r(f-1)/f) to training, then
/// cross-validation, then test.
DataSplit split(const NormalizedDataset& data, const SplitConfig& cfg);

}  // namespace orthofit
