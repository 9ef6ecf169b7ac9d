#include "orthofit/synth.hpp"

#include <cmath>
#include <numbers>

#include "orthofit/errors.hpp"

namespace orthofit {

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

constexpr std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

double poly_coefficient(int a, int b) {
  const double sign = a % 2 == 0 ? 1.0 : -1.0;
  return sign * (1.0 + a - b) / (2.0 + a + b);
}

// Magnet parameters in normalized field h and temperature tau, both in [0, 1].
constexpr double kFieldMax = 50000.0;  // Oe
constexpr double kTempMin = 250.0;     // K
constexpr double kTempSpan = 100.0;    // K
constexpr double kSaturation = 60.0;   // emu/g
constexpr double kTransition = 0.5;
constexpr double kTransitionShift = 0.15;
constexpr double kWidth = 0.08;
constexpr double kSharpness = 4.0;
constexpr double kParaSlope = 0.3;

double mean_field_magnet(double H, double T) {
  const double h = H / kFieldMax;
  const double tau = (T - kTempMin) / kTempSpan;
  const double order = 1.0 / (1.0 + std::exp((tau - kTransition - kTransitionShift * h) / kWidth));
  return kSaturation * (order * std::tanh(kSharpness * h) + (1.0 - order) * kParaSlope * h);
}

}  // namespace

Xoshiro256::Xoshiro256(std::uint64_t seed) {
  for (auto& word : s_) word = splitmix64(seed);
}

std::uint64_t Xoshiro256::next() {
  const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
  const std::uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = rotl(s_[3], 45);
  return result;
}

double Xoshiro256::uniform() { return static_cast<double>(next() >> 11) * 0x1p-53; }

double Xoshiro256::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u1 = uniform();
  while (u1 == 0.0) u1 = uniform();
  const double u2 = uniform();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  spare_ = radius * std::sin(angle);
  has_spare_ = true;
  return radius * std::cos(angle);
}

SynthData generate(const SynthSpec& spec) {
  if (spec.nx * spec.ny < 6) throw InputError("synthetic grid needs at least 6 points");
  if (!std::isfinite(spec.noise_sigma) || spec.noise_sigma < 0.0)
    throw InputError("noise level must be finite and non-negative");
  if (!spec.scattered && (spec.nx < 2 || spec.ny < 2)) throw InputError("grid needs at least 2 points per axis");

  SynthData out;
  double x_lo = 0.0, x_span = 1.0, y_lo = 0.0, y_span = 1.0;
  switch (spec.surface) {
    case SurfaceKind::Plane:
      out.truth = [](double x, double y) { return 0.5 + 0.25 * x - 0.1 * y; };
      break;
    case SurfaceKind::PolyDeg: {
      if (spec.degree < 0) throw InputError("polynomial degree must be non-negative");
      const int k = spec.degree;
      out.truth = [k](double x, double y) {
        double z = 0.0;
        for (int m = 0; m <= k; ++m)
          for (int j = 0; j <= m; ++j) z += poly_coefficient(m - j, j) * std::pow(x, m - j) * std::pow(y, j);
        return z;
      };
      break;
    }
    case SurfaceKind::MeanFieldMagnet:
      out.truth = mean_field_magnet;
      out.header = {"H", "T", "M"};
      x_span = kFieldMax;
      y_lo = kTempMin;
      y_span = kTempSpan;
      break;
  }

  Xoshiro256 rng(spec.seed);
  const std::size_t count = spec.nx * spec.ny;
  out.points.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    double u, v;
    if (spec.scattered) {
      u = rng.uniform();
      v = rng.uniform();
    } else {
      u = static_cast<double>(k % spec.nx) / static_cast<double>(spec.nx - 1);
      v = static_cast<double>(k / spec.nx) / static_cast<double>(spec.ny - 1);
    }
    const double x = x_lo + u * x_span;
    const double y = y_lo + v * y_span;
    double z = out.truth(x, y);
    if (spec.noise_sigma > 0.0) z += spec.noise_sigma * rng.normal();
    out.points.push_back({x, y, z});
  }
  return out;
}

}  // namespace orthofit
