#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <vector>

#include "wronoc/conflict.hpp"
#include "wronoc/model.hpp"
#include "wronoc/search.hpp"

namespace wronoc {

// Phase 1: choose n_R radii and conflict-free carrier sets maximizing the
// smallest per-radius carrier count P.
struct ParallelismSolution {
  std::vector<RadiusId> selected_radii;                  // ascending
  std::map<RadiusId, std::vector<std::size_t>> selections;  // ascending indices
  std::map<RadiusId, std::size_t> q;                     // |selections[r]|
  std::size_t parallelism = 0;                           // P = min q
  SolveStatus status = SolveStatus::kInfeasible;
  bool has_incumbent = false;

  friend bool operator==(const ParallelismSolution&, const ParallelismSolution&) = default;
};

// q_r and a witness for every r in `subset`: the maximum within-compatible
// set among the resonances of r usable next to the rest of the subset.
// q_r may be 0, which makes the subset inadmissible.
std::map<RadiusId, CompatibleSet> evaluate_subset(const Instance& instance,
                                                  const ConflictSet& conflicts,
                                                  std::span<const RadiusId> subset);

// Exact max-min solver. Depth-first branch-and-bound over radius subsets:
// candidates carry their usable mask against the radii chosen so far, which
// only shrinks as radii are added, so every partial q_r bounds its final
// value. A second pass returns the lexicographically smallest optimal subset.
//
// n_radii == 0 throws std::invalid_argument; n_radii above the radius count
// yields status kInfeasible.
ParallelismSolution solve_max_parallelism(const Instance& instance,
                                          const ConflictSet& conflicts, std::size_t n_radii,
                                          const SolveConfig& config = {});

// Enumerates every n_radii-subset in lexicographic order. For small instances.
ParallelismSolution oracle_max_parallelism(const Instance& instance,
                                           const ConflictSet& conflicts,
                                           std::size_t n_radii);

}  // namespace wronoc
