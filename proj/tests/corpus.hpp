#pragma once

// Fixed-seed synthetic corpora shared by the unit and acceptance tests.

#include "orthofit/dataset.hpp"
#include "orthofit/synth.hpp"

namespace corpus {

inline orthofit::SynthSpec magnet_spec(std::size_t nx, std::size_t ny, double noise, std::uint64_t seed,
                                       bool scattered = false) {
  orthofit::SynthSpec s;
  s.surface = orthofit::SurfaceKind::MeanFieldMagnet;
  s.nx = nx;
  s.ny = ny;
  s.noise_sigma = noise;
  s.seed = seed;
  s.scattered = scattered;
  return s;
}

/// 625 grid points with 0.3 emu/g noise: the regularization-sweep corpus.
inline orthofit::SynthSpec magnet_noisy_spec() { return magnet_spec(25, 25, 0.3, 42); }
inline orthofit::NormalizedDataset magnet_noisy() { return orthofit::normalize(orthofit::generate(magnet_noisy_spec()).points); }

/// 3600 grid points with light noise; reaches a 1e-6 training error near S = 150.
inline orthofit::SynthSpec magnet_band_spec() { return magnet_spec(60, 60, 0.06, 42); }
inline orthofit::NormalizedDataset magnet_band() { return orthofit::normalize(orthofit::generate(magnet_band_spec()).points); }

/// 3000 scattered noise-free points for the conversion-fidelity check.
inline orthofit::SynthSpec magnet_scattered_spec() { return magnet_spec(3000, 1, 0.0, 5, true); }
inline orthofit::NormalizedDataset magnet_scattered() {
  return orthofit::normalize(orthofit::generate(magnet_scattered_spec()).points);
}

/// Small quick corpus for unit tests.
inline orthofit::NormalizedDataset magnet_small() {
  return orthofit::normalize(orthofit::generate(magnet_spec(20, 20, 0.1, 7)).points);
}

}  // namespace corpus
