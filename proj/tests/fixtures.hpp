#pragma once

// Shared test helpers. The brute-force oracles here use only the raw
// Instance fields, never the library's conflict index or solvers.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "wronoc/model.hpp"
#include "wronoc/spacing.hpp"

namespace fixtures {

using wronoc::Instance;
using wronoc::Picometers;
using wronoc::RadiusId;
using wronoc::Resonance;

inline std::string data_path(const std::string& name) {
  return std::string(WRONOC_DATA_DIR) + "/" + name;
}

// Reference instance: nominal resonances (pm) of four ring radii, 5-8 um.
inline Instance four_rings(Picometers half_width = 0) {
  return wronoc::load_instance(data_path("four_rings.txt"),
                               wronoc::DeltaPolicy::Symmetric(half_width));
}

inline Instance only_radius(const Instance& instance, RadiusId id) {
  Instance out;
  out.label = instance.label;
  out.radii.push_back(instance.radius(id));
  return out;
}

inline bool overlap(const Resonance& a, const Resonance& b) {
  return !(a.lmax_pm < b.lmin_pm || b.lmax_pm < a.lmin_pm);
}

// Maximum pairwise-disjoint subset of `items`, by trying all 2^n subsets.
inline std::size_t brute_mis(const std::vector<Resonance>& items) {
  const std::size_t n = items.size();
  std::size_t best = 0;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i) {
      if (!(mask >> i & 1)) continue;
      for (std::size_t j = i + 1; j < n && ok; ++j) {
        if ((mask >> j & 1) && overlap(items[i], items[j])) ok = false;
      }
    }
    if (ok) best = std::max<std::size_t>(best, std::popcount(mask));
  }
  return best;
}

// Calls f(subset) for every k-subset of radius ids, lexicographically.
template <typename F>
void for_each_subset(const Instance& instance, std::size_t k, F&& f) {
  std::vector<RadiusId> ids;
  for (const auto& r : instance.radii) ids.push_back(r.id);
  std::vector<RadiusId> chosen;
  auto rec = [&](auto&& self, std::size_t start) -> void {
    if (chosen.size() == k) {
      f(chosen);
      return;
    }
    for (std::size_t i = start; i < ids.size(); ++i) {
      chosen.push_back(ids[i]);
      self(self, i + 1);
      chosen.pop_back();
    }
  };
  rec(rec, 0);
}

// q_r for radius r inside `subset`, straight from the definition.
inline std::size_t brute_q(const Instance& instance, const std::vector<RadiusId>& subset,
                           RadiusId r) {
  std::vector<Resonance> usable;
  for (const auto& res : instance.radius(r).resonances) {
    bool clash = false;
    for (RadiusId other : subset) {
      if (other == r) continue;
      for (const auto& o : instance.radius(other).resonances) clash = clash || overlap(res, o);
    }
    if (!clash) usable.push_back(res);
  }
  return brute_mis(usable);
}

// Optimal P, or -1 when n_radii exceeds the radius count.
inline long brute_parallelism(const Instance& instance, std::size_t n_radii) {
  long best = -1;
  for_each_subset(instance, n_radii, [&](const std::vector<RadiusId>& subset) {
    std::size_t p = std::numeric_limits<std::size_t>::max();
    for (RadiusId r : subset) p = std::min(p, brute_q(instance, subset, r));
    best = std::max(best, static_cast<long>(p));
  });
  return best;
}

// Optimal Dist by enumerating every carrier choice, or -1 when no matrix
// exists. Carriers must be distinct and must not equal a resonance of another
// selected radius; refined mode also counts distances from carriers to every
// resonance of the other selected radii.
inline Picometers brute_spacing(const Instance& instance, std::size_t n_radii,
                                std::size_t n_lambda, wronoc::SpacingMode mode) {
  if (n_radii > instance.radii.size()) return -1;
  if (n_radii * n_lambda == 1) return instance.max_nominal() - instance.min_nominal();
  const bool refined = mode == wronoc::SpacingMode::kRefined;
  Picometers best = -1;
  for_each_subset(instance, n_radii, [&](const std::vector<RadiusId>& subset) {
    std::vector<Picometers> carriers;
    auto value_ok = [&](RadiusId r, Picometers v) {
      for (RadiusId other : subset) {
        if (other == r) continue;
        for (const auto& o : instance.radius(other).resonances) {
          if (o.nominal_pm == v) return false;
        }
      }
      return true;
    };
    auto gap_to_others = [&](RadiusId r, Picometers v) {
      Picometers g = std::numeric_limits<Picometers>::max();
      for (RadiusId other : subset) {
        if (other == r) continue;
        for (const auto& o : instance.radius(other).resonances) {
          g = std::min(g, v > o.nominal_pm ? v - o.nominal_pm : o.nominal_pm - v);
        }
      }
      return g;
    };
    // Depth-first over (row, slot); `current` is the running minimum.
    auto rec = [&](auto&& self, std::size_t row, std::size_t start, Picometers current) -> void {
      if (current <= best) return;
      if (row == subset.size()) {
        best = current;
        return;
      }
      const auto& res = instance.radius(subset[row]).resonances;
      const std::size_t placed_in_row = carriers.size() - row * n_lambda;
      if (placed_in_row == n_lambda) {
        self(self, row + 1, 0, current);
        return;
      }
      for (std::size_t j = start; j < res.size(); ++j) {
        const Picometers v = res[j].nominal_pm;
        if (!value_ok(subset[row], v)) continue;
        Picometers next = current;
        bool distinct = true;
        for (Picometers c : carriers) {
          if (c == v) distinct = false;
          next = std::min(next, v > c ? v - c : c - v);
        }
        if (!distinct) continue;
        if (refined) next = std::min(next, gap_to_others(subset[row], v));
        carriers.push_back(v);
        self(self, row, j + 1, next);
        carriers.pop_back();
      }
    };
    rec(rec, 0, 0, std::numeric_limits<Picometers>::max());
  });
  return best;
}

}  // namespace fixtures
