#pragma once

// Synthetic datasets with known ground truth.
//
// Randomness comes from xoshiro256** (Blackman & Vigna) seeded through
// splitmix64, and Gaussian noise from the Box-Muller transform, so a seed
// yields the same dataset on every platform.

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "orthofit/dataset.hpp"

namespace orthofit {

class Xoshiro256 {
 public:
  explicit Xoshiro256(std::uint64_t seed);

  std::uint64_t next();
  /// Uniform in [0, 1) with 53 random bits.
  double uniform();
  /// Standard normal deviate.
  double normal();

 private:
  std::array<std::uint64_t, 4> s_{};
  double spare_ = 0.0;
  bool has_spare_ = false;
};

enum class SurfaceKind {
  Plane,            ///< z = 0.5 + 0.25 x - 0.1 y on [0,1]^2
  PolyDeg,          ///< fixed polynomial of total degree `degree` on [0,1]^2
  MeanFieldMagnet,  ///< sigmoidal M(H, T): H in [0, 50000] Oe, T in [250, 350] K
};

struct SynthSpec {
  SurfaceKind surface = SurfaceKind::MeanFieldMagnet;
  int degree = 4;  ///< PolyDeg only
  std::size_t nx = 40;
  std::size_t ny = 40;
  double noise_sigma = 0.0;  ///< standard deviation of additive z noise, raw units
  std::uint64_t seed = 1;
  bool scattered = false;  ///< nx * ny uniform random points instead of a grid
};

struct SynthData {
  std::vector<DataPoint> points;
  std::function<double(double, double)> truth;  ///< noise-free z at raw (x, y)
  std::array<std::string, 3> header{"x", "y", "z"};
};

/// Throws InputError for nx * ny < 6 or a non-finite / negative noise level.
SynthData generate(const SynthSpec& spec);

}  // namespace orthofit
