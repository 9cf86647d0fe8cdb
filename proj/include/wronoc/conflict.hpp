#pragma once

#include <compare>
#include <cstddef>
#include <span>
#include <vector>

#include "wronoc/model.hpp"

namespace wronoc {

// One resonance of one radius: (radius id, index into its ascending list).
struct ResonanceRef {
  RadiusId radius = 0;
  std::size_t index = 0;

  friend auto operator<=>(const ResonanceRef&, const ResonanceRef&) = default;
};

enum class ConflictKind { kCross, kWithin };

// Stored with the lexicographically smaller endpoint first.
struct ConflictPair {
  ConflictKind kind = ConflictKind::kCross;
  ResonanceRef first;
  ResonanceRef second;

  friend bool operator==(const ConflictPair&, const ConflictPair&) = default;
};

// Two resonances conflict when their closed uncertainty intervals
// [lmin, lmax] intersect. Under a symmetric half-width h this means
// |λ1 - λ2| <= 2h.
inline bool intervals_intersect(const Resonance& a, const Resonance& b) {
  return a.lmin_pm <= b.lmax_pm && b.lmin_pm <= a.lmax_pm;
}

// Immutable conflict relation of one instance, with a per-resonance
// adjacency index. Built by conflicts_of().
class ConflictSet {
 public:
  ConflictSet() = default;

  // Sorted by (first, second).
  const std::vector<ConflictPair>& pairs() const { return pairs_; }
  std::size_t cross_count() const { return cross_count_; }
  std::size_t within_count() const { return pairs_.size() - cross_count_; }

  // All resonances conflicting with `ref` (both kinds), ascending.
  std::span<const ResonanceRef> neighbors(ResonanceRef ref) const;
  bool in_conflict(ResonanceRef a, ResonanceRef b) const;

 private:
  friend ConflictSet conflicts_of(const Instance& instance);

  std::vector<ConflictPair> pairs_;
  std::size_t cross_count_ = 0;
  std::vector<RadiusId> ids_;  // position -> id, for adjacency lookup
  std::vector<std::vector<std::vector<ResonanceRef>>> adjacency_;  // [pos][index]
};

ConflictSet conflicts_of(const Instance& instance);

// Indices j of Λ_r (ascending) whose resonance has no cross conflict with any
// resonance of any other radius in `selected`. Whole spectra count, not just
// carriers: a selected carrier of r forbids every radius it hits.
// Throws std::invalid_argument if r is not in `selected`.
std::vector<std::size_t> usable_resonances(const Instance& instance,
                                           const ConflictSet& conflicts,
                                           std::span<const RadiusId> selected, RadiusId r);

struct CompatibleSet {
  std::size_t count = 0;
  std::vector<std::size_t> witness;  // ascending indices into Λ_r
};

// Maximum subset of `usable` with no two members in within-radius conflict.
//
// Within-radius conflicts are interval intersections, so the conflict graph is
// an interval graph and its maximum independent set is found exactly by
// activity selection: scan by ascending right endpoint (lmax) and keep every
// interval that starts after the last kept one ends. Exchange argument: the
// kept interval with the smallest lmax can replace the first interval of any
// optimal set without creating an overlap.
//
// The witness is the lexicographically smallest maximum subset; it is built
// index by index, accepting index j only if a maximum-size completion using
// larger indices still exists.
CompatibleSet max_compatible_count(const Instance& instance, const ConflictSet& conflicts,
                                   std::span<const std::size_t> usable, RadiusId r);

// Lexicographically smallest conflict-free subset of `usable` with exactly
// `size` members (size must not exceed the maximum). Used to trim witnesses.
std::vector<std::size_t> smallest_compatible_subset(const Instance& instance,
                                                    const ConflictSet& conflicts,
                                                    std::span<const std::size_t> usable,
                                                    RadiusId r, std::size_t size);

// Size of a maximum pairwise-disjoint subset of resonances[indices], by
// activity selection.
std::size_t interval_mis_size(std::span<const Resonance> resonances,
                              std::span<const std::size_t> indices);

}  // namespace wronoc
