#pragma once

#include <string>
#include <vector>

#include "wronoc/model.hpp"
#include "wronoc/parallelism.hpp"
#include "wronoc/spacing.hpp"

namespace wronoc {

// Solution verifiers that recompute every constraint from the instance's raw
// intervals and nominal values. They share no code with the solvers or with
// ConflictSet, so a bookkeeping bug in either cannot hide itself.
//
// Each returns a list of human-readable violations; empty means valid.
// Optimality is not checked.

std::vector<std::string> check_parallelism(const Instance& instance, std::size_t n_radii,
                                           const ParallelismSolution& solution);

std::vector<std::string> check_spacing(const Instance& instance, const SpacingProblem& problem,
                                       const SpacingSolution& solution);

}  // namespace wronoc
