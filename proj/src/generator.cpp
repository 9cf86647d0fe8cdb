#include "wronoc/generator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <set>
#include <sstream>

namespace wronoc {

namespace {

void check_spec(const GenSpec& spec) {
  std::vector<std::string> problems;
  if (spec.r_min_pm <= 0) problems.push_back("r_min must be positive");
  if (spec.r_min_pm > spec.r_max_pm) problems.push_back("r_min must not exceed r_max");
  if (spec.r_step_pm <= 0) problems.push_back("r_step must be positive");
  if (spec.n_eff_milli <= 0) problems.push_back("n_eff must be positive");
  if (spec.jitter_pm < 0) problems.push_back("jitter must be non-negative");
  if (spec.band_lo_pm < 0) problems.push_back("band_lo must be non-negative");
  if (problems.empty()) return;
  std::string text = "invalid generator spec:";
  for (const auto& p : problems) text += " " + p + ";";
  text.pop_back();
  throw std::invalid_argument(text);
}

}  // namespace

std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("bound must be positive");
  // Number of raw values to discard: 2^64 mod bound.
  const std::uint64_t discard = (std::numeric_limits<std::uint64_t>::max() - bound + 1) % bound;
  std::uint64_t x = rng();
  while (x < discard) x = rng();
  return x % bound;
}

Instance generate(const GenSpec& spec) {
  check_spec(spec);
  Instance out;
  {
    std::ostringstream label;
    label << "generated r=" << spec.r_min_pm << ".." << spec.r_max_pm << "/" << spec.r_step_pm
          << "pm band=" << spec.band_lo_pm << ".." << spec.band_hi_pm
          << "pm n_eff_milli=" << spec.n_eff_milli << " jitter=" << spec.jitter_pm
          << "pm seed=" << spec.seed;
    out.label = label.str();
  }
  std::mt19937_64 rng(spec.seed);
  std::vector<RadiusId> empty;
  RadiusId id = 0;
  for (Picometers radius = spec.r_min_pm; radius <= spec.r_max_pm; radius += spec.r_step_pm) {
    ++id;
    // Optical path length 2π R n_eff in pm; the orders in band follow.
    const double path = 2.0 * std::numbers::pi * static_cast<double>(radius) *
                        static_cast<double>(spec.n_eff_milli) / 1000.0;
    std::vector<Picometers> values;
    if (spec.band_hi_pm > spec.band_lo_pm && spec.band_hi_pm > 0) {
      const auto m_lo = static_cast<std::int64_t>(
          std::max(1.0, std::floor(path / static_cast<double>(spec.band_hi_pm)) - 1));
      const auto m_hi = static_cast<std::int64_t>(
          std::ceil(path / static_cast<double>(std::max<Picometers>(spec.band_lo_pm, 1))) + 1);
      for (std::int64_t m = m_hi; m >= m_lo; --m) {
        const auto lambda = static_cast<Picometers>(std::llround(path / static_cast<double>(m)));
        if (lambda >= spec.band_lo_pm && lambda <= spec.band_hi_pm && lambda > 0) {
          values.push_back(lambda);
        }
      }
    }
    if (spec.jitter_pm > 0) {
      const auto width = static_cast<std::uint64_t>(2 * spec.jitter_pm + 1);
      for (auto& v : values) {
        v += static_cast<Picometers>(uniform_below(rng, width)) - spec.jitter_pm;
        v = std::max<Picometers>(v, 1);
      }
    }
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
    if (values.empty()) empty.push_back(id);

    RadiusEntry entry{id, radius, {}};
    for (Picometers v : values) entry.resonances.push_back({v, v, v});
    out.radii.push_back(std::move(entry));
  }
  if (!empty.empty()) {
    std::ostringstream what;
    what << "band [" << spec.band_lo_pm << ", " << spec.band_hi_pm << "] pm leaves "
         << empty.size() << " of " << out.radii.size() << " radii without resonances: ids";
    for (RadiusId e : empty) what << ' ' << e;
    throw GenerationError(what.str(), std::move(empty));
  }
  return out;
}

Instance generate_random_small(std::uint64_t seed, std::size_t n_radii,
                               std::size_t max_resonances) {
  if (n_radii < 1 || n_radii > 6) throw std::invalid_argument("n_radii must be in 1..6");
  if (max_resonances < 1 || max_resonances > 12) {
    throw std::invalid_argument("max_resonances must be in 1..12");
  }
  constexpr Picometers kBandLo = 1'500'000;
  constexpr std::uint64_t kGridSteps = 1001;  // 1500.0 .. 1600.0 nm
  constexpr Picometers kGrid = 100;

  std::mt19937_64 rng(seed);
  Instance out;
  out.label = "random-small seed=" + std::to_string(seed);
  for (std::size_t i = 0; i < n_radii; ++i) {
    const std::size_t count = 1 + uniform_below(rng, max_resonances);
    std::set<Picometers> values;
    while (values.size() < count) {
      if (i > 0 && uniform_below(rng, 4) == 0) {
        const auto& donor = out.radii[uniform_below(rng, i)].resonances;
        values.insert(donor[uniform_below(rng, donor.size())].nominal_pm);
      } else {
        values.insert(kBandLo + kGrid * static_cast<Picometers>(uniform_below(rng, kGridSteps)));
      }
    }
    RadiusEntry entry{static_cast<RadiusId>(i + 1),
                      5'000'000 + 1'000'000 * static_cast<Picometers>(i), {}};
    for (Picometers v : values) entry.resonances.push_back({v, v, v});
    out.radii.push_back(std::move(entry));
  }
  return out;
}

}  // namespace wronoc
