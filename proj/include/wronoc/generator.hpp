#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "wronoc/model.hpp"

namespace wronoc {

// Synthetic ring-resonator spectra. Resonance model: m * λ = 2π R n_eff for
// integer orders m, with a constant effective index. The defaults reproduce
// the shape of a 5-30 µm sweep in 0.25 µm steps: 101 radii, 5 resonances
// ~25 nm apart for the 5 µm ring, about 30 for the 30 µm ring, ~1.8k total.
struct GenSpec {
  Picometers r_min_pm = 5'000'000;
  Picometers r_max_pm = 30'000'000;
  Picometers r_step_pm = 250'000;
  Picometers band_lo_pm = 1'490'000;
  Picometers band_hi_pm = 1'620'000;
  std::int64_t n_eff_milli = 2950;
  Picometers jitter_pm = 0;
  std::uint64_t seed = 1;
};

class GenerationError : public std::runtime_error {
 public:
  GenerationError(const std::string& what, std::vector<RadiusId> empty_radii)
      : std::runtime_error(what), empty_radii_(std::move(empty_radii)) {}
  const std::vector<RadiusId>& empty_radii() const { return empty_radii_; }

 private:
  std::vector<RadiusId> empty_radii_;
};

// Uniform integer in [0, bound) from std::mt19937_64 by rejection: raw draws
// at or above the largest multiple of `bound` below 2^64 are discarded, then
// the draw is reduced modulo `bound`. Both the engine (the standard fixes its
// output sequence) and this reduction are portable, so instances reproduce
// bit-exactly on any conforming platform.
std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound);

// One radius per step of the sweep (ids 1..N). Resonances are
// round(2π R n_eff / m) for each order m landing in [band_lo, band_hi], each
// shifted by a uniform integer in [-jitter, +jitter] (drawn in radius order,
// then ascending wavelength), then sorted and deduplicated. Intervals are
// degenerate; apply a DeltaPolicy afterwards. Throws GenerationError naming
// every radius left without resonances.
Instance generate(const GenSpec& spec);

// Small random instance for oracle tests: `n_radii` radii (1..6) with 1 to
// `max_resonances` (1..12) resonances on a 0.1 nm grid in 1500-1600 nm.
// A quarter of the draws for radii after the first copy an existing
// wavelength of an earlier radius, forcing exact cross-radius collisions.
Instance generate_random_small(std::uint64_t seed, std::size_t n_radii,
                               std::size_t max_resonances);

}  // namespace wronoc
