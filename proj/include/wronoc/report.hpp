#pragma once

#include <string>

#include <json.hpp>

#include "wronoc/conflict.hpp"
#include "wronoc/model.hpp"
#include "wronoc/parallelism.hpp"
#include "wronoc/spacing.hpp"

namespace wronoc {

// Keys keep insertion order so emitted documents diff cleanly.
using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

Json to_json(const DeltaPolicy& policy);
Json to_json(const Instance& instance);
Json to_json(const Instance& instance, const ConflictSet& conflicts);
Json to_json(const Instance& instance, const ParallelismSolution& solution);
Json to_json(const Instance& instance, const SpacingProblem& problem,
             const SpacingSolution& solution);

// Fixed-width text table of conflict pairs, nominal values in nm.
std::string conflict_table(const Instance& instance, const ConflictSet& conflicts);

// Exact decimal rendering of a picometer value in nanometers ("1496.4").
std::string format_nm(Picometers pm);

}  // namespace wronoc
