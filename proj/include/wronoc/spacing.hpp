#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "wronoc/conflict.hpp"
#include "wronoc/model.hpp"
#include "wronoc/search.hpp"

namespace wronoc {

// Phase 2: place n_lambda carriers on each of n_R radii, maximizing the
// minimum spacing Dist.
//
// kBase: carriers are pairwise >= Dist apart and no carrier equals a
// resonance of another selected radius (the alldifferent model).
// kRefined: additionally every carrier keeps >= Dist from every resonance of
// every other selected radius, carrier or not. Resonances of the carrier's
// own radius stay unconstrained. In the cumulative formulation this is the
// resource trick: non-selected resonances take one unit of a capacity equal
// to the longest resonance list, selected ones take all of it, so only pairs
// involving a carrier are kept apart.
//
// Two refined variants are deliberately not implemented: centring carrier
// tasks at M_ij - Dist/2 (equivalent but propagates poorly in a CP engine),
// and giving every non-selected resonance duration Dist (over-constrains
// pairs of non-carriers).
enum class SpacingMode { kBase, kRefined };

std::string_view to_string(SpacingMode mode);

struct SpacingProblem {
  std::size_t n_radii = 1;
  std::size_t n_lambda = 1;
  SpacingMode mode = SpacingMode::kBase;
};

// Rows are ordered by first carrier; each row holds ascending indices into
// the row radius's resonance list.
struct CarrierMatrix {
  std::vector<RadiusId> row_radii;
  std::vector<std::vector<std::size_t>> rows;

  friend bool operator==(const CarrierMatrix&, const CarrierMatrix&) = default;
};

struct SpacingSolution {
  CarrierMatrix matrix;  // selected_radii == matrix.row_radii
  Picometers dist_pm = 0;
  SolveStatus status = SolveStatus::kInfeasible;
  bool has_incumbent = false;

  friend bool operator==(const SpacingSolution&, const SpacingSolution&) = default;
};

// Whether resonance `carrier_index` of radius r may carry a signal next to
// the other radii of `subset` at spacing `dist`. Equal nominal values are
// excluded in both modes; refined mode also requires |carrier - λ'| >= dist.
bool cross_constraint_ok(const Instance& instance, std::span<const RadiusId> subset,
                         RadiusId r, std::size_t carrier_index, Picometers dist,
                         SpacingMode mode);

// Lexicographically smallest carrier matrix (row-major nominal values, rows
// by first carrier) with all carriers pairwise >= dist apart, or nullopt.
std::optional<CarrierMatrix> feasible(const Instance& instance,
                                      std::span<const RadiusId> subset, std::size_t n_lambda,
                                      Picometers dist, SpacingMode mode);

// Sorted unique pairwise nominal distances among resonances of `subset`,
// plus 0. Every achievable optimum lies on it.
std::vector<Picometers> distance_ladder(const Instance& instance,
                                        std::span<const RadiusId> subset);

// floor(span of Λ over subset / (n_R * n_lambda - 1)): the spacing if all
// carriers were equally spread. Throws std::invalid_argument when
// n_R * n_lambda < 2.
Picometers dist_upper_bound(const Instance& instance, std::span<const RadiusId> subset,
                            std::size_t n_lambda);

// Convention for a single carrier (n_R * n_lambda == 1): the instance span.
Picometers single_carrier_dist(const Instance& instance);

// Branch-and-bound over radius subsets (lexicographic order, pruned by the
// upper bound and by partial-subset feasibility), binary search over the
// distance ladder for each subset.
SpacingSolution solve_spacing(const Instance& instance, const SpacingProblem& problem,
                              const SolveConfig& config = {});

// Full enumeration of subsets and carrier matrices. For tiny instances.
SpacingSolution oracle_spacing(const Instance& instance, const SpacingProblem& problem);

}  // namespace wronoc
