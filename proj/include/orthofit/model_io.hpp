#pragma once

#include <istream>
#include <ostream>
#include <string>

#include "orthofit/format.hpp"
#include "orthofit/model.hpp"

namespace orthofit {

inline constexpr int kModelFormatVersion = 1;
inline constexpr const char* kModelFormatName = "orthofit-surface-model";

/// JSON document; every floating-point number carries 17 significant digits.
void write_model(std::ostream& out, const SurfaceModel& model, bool include_audit = true);
void save_model(const std::string& path, const SurfaceModel& model, bool include_audit = true);

/// Throws DataError on a missing field or a version other than kModelFormatVersion.
SurfaceModel read_model(std::istream& in);
SurfaceModel load_model(const std::string& path);

}  // namespace orthofit
