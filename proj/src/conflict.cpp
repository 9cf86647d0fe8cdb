#include "wronoc/conflict.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace wronoc {

namespace {

// Greedy search for the lexicographically smallest conflict-free subset of
// `usable` with `target` members.
std::vector<std::size_t> lex_smallest(const RadiusEntry& radius, const ConflictSet& conflicts,
                                      std::span<const std::size_t> usable,
                                      std::size_t target) {
  std::vector<std::size_t> sorted(usable.begin(), usable.end());
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());

  std::vector<std::size_t> chosen;
  std::vector<std::size_t> rest;
  const auto compatible = [&](std::size_t a, std::size_t b) {
    return !conflicts.in_conflict({radius.id, a}, {radius.id, b});
  };
  for (std::size_t pos = 0; pos < sorted.size() && chosen.size() < target; ++pos) {
    const std::size_t j = sorted[pos];
    if (!std::all_of(chosen.begin(), chosen.end(),
                     [&](std::size_t c) { return compatible(c, j); })) {
      continue;
    }
    rest.clear();
    for (std::size_t k = pos + 1; k < sorted.size(); ++k) {
      const std::size_t cand = sorted[k];
      if (compatible(j, cand) && std::all_of(chosen.begin(), chosen.end(), [&](std::size_t c) {
            return compatible(c, cand);
          })) {
        rest.push_back(cand);
      }
    }
    if (chosen.size() + 1 + interval_mis_size(radius.resonances, rest) >= target) {
      chosen.push_back(j);
    }
  }
  return chosen;
}

}  // namespace

std::span<const ResonanceRef> ConflictSet::neighbors(ResonanceRef ref) const {
  const auto it = std::find(ids_.begin(), ids_.end(), ref.radius);
  if (it == ids_.end()) return {};
  const auto& per_radius = adjacency_[static_cast<std::size_t>(it - ids_.begin())];
  if (ref.index >= per_radius.size()) return {};
  return per_radius[ref.index];
}

bool ConflictSet::in_conflict(ResonanceRef a, ResonanceRef b) const {
  const auto adj = neighbors(a);
  return std::binary_search(adj.begin(), adj.end(), b);
}

ConflictSet conflicts_of(const Instance& instance) {
  struct Item {
    Picometers lmin;
    Picometers lmax;
    ResonanceRef ref;
  };
  std::vector<Item> items;
  items.reserve(instance.total_resonances());
  ConflictSet out;
  for (const auto& radius : instance.radii) {
    out.ids_.push_back(radius.id);
    out.adjacency_.emplace_back(radius.resonances.size());
    for (std::size_t j = 0; j < radius.resonances.size(); ++j) {
      const auto& res = radius.resonances[j];
      items.push_back({res.lmin_pm, res.lmax_pm, {radius.id, j}});
    }
  }
  std::sort(items.begin(), items.end(), [](const Item& a, const Item& b) {
    return a.lmin != b.lmin ? a.lmin < b.lmin : a.ref < b.ref;
  });

  // Sweep by left endpoint: a later item intersects the current one iff it
  // starts no later than the current one ends.
  for (std::size_t i = 0; i < items.size(); ++i) {
    for (std::size_t k = i + 1; k < items.size() && items[k].lmin <= items[i].lmax; ++k) {
      ResonanceRef a = items[i].ref;
      ResonanceRef b = items[k].ref;
      if (b < a) std::swap(a, b);
      const auto kind = a.radius == b.radius ? ConflictKind::kWithin : ConflictKind::kCross;
      out.pairs_.push_back({kind, a, b});
    }
  }
  std::sort(out.pairs_.begin(), out.pairs_.end(), [](const ConflictPair& x, const ConflictPair& y) {
    return x.first != y.first ? x.first < y.first : x.second < y.second;
  });

  for (const auto& pair : out.pairs_) {
    if (pair.kind == ConflictKind::kCross) ++out.cross_count_;
    const auto pos_a = instance.position_of(pair.first.radius);
    const auto pos_b = instance.position_of(pair.second.radius);
    out.adjacency_[pos_a][pair.first.index].push_back(pair.second);
    out.adjacency_[pos_b][pair.second.index].push_back(pair.first);
  }
  for (auto& per_radius : out.adjacency_) {
    for (auto& adj : per_radius) std::sort(adj.begin(), adj.end());
  }
  return out;
}

std::vector<std::size_t> usable_resonances(const Instance& instance,
                                           const ConflictSet& conflicts,
                                           std::span<const RadiusId> selected, RadiusId r) {
  if (std::find(selected.begin(), selected.end(), r) == selected.end()) {
    throw std::invalid_argument("radius " + std::to_string(r) + " is not in the selected set");
  }
  const RadiusEntry& radius = instance.radius(r);
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j < radius.resonances.size(); ++j) {
    const auto adj = conflicts.neighbors({r, j});
    const bool blocked = std::any_of(adj.begin(), adj.end(), [&](const ResonanceRef& other) {
      return other.radius != r &&
             std::find(selected.begin(), selected.end(), other.radius) != selected.end();
    });
    if (!blocked) out.push_back(j);
  }
  return out;
}

std::size_t interval_mis_size(std::span<const Resonance> resonances,
                              std::span<const std::size_t> indices) {
  std::vector<std::size_t> order(indices.begin(), indices.end());
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const auto& ra = resonances[a];
    const auto& rb = resonances[b];
    return ra.lmax_pm != rb.lmax_pm ? ra.lmax_pm < rb.lmax_pm : a < b;
  });
  std::size_t count = 0;
  Picometers last_end = 0;
  for (std::size_t j : order) {
    if (count == 0 || resonances[j].lmin_pm > last_end) {
      ++count;
      last_end = resonances[j].lmax_pm;
    }
  }
  return count;
}

CompatibleSet max_compatible_count(const Instance& instance, const ConflictSet& conflicts,
                                   std::span<const std::size_t> usable, RadiusId r) {
  const RadiusEntry& radius = instance.radius(r);
  CompatibleSet out;
  out.count = interval_mis_size(radius.resonances, usable);
  out.witness = lex_smallest(radius, conflicts, usable, out.count);
  return out;
}

std::vector<std::size_t> smallest_compatible_subset(const Instance& instance,
                                                    const ConflictSet& conflicts,
                                                    std::span<const std::size_t> usable,
                                                    RadiusId r, std::size_t size) {
  const RadiusEntry& radius = instance.radius(r);
  if (size > interval_mis_size(radius.resonances, usable)) {
    throw std::invalid_argument("requested subset larger than the maximum compatible set");
  }
  return lex_smallest(radius, conflicts, usable, size);
}

}  // namespace wronoc
