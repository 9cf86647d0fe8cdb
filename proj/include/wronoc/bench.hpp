#pragma once

#include <cstddef>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "wronoc/model.hpp"
#include "wronoc/spacing.hpp"

namespace wronoc {

struct BenchRow {
  std::string instance;
  std::size_t n_radii = 0;
  Picometers delta_pm = 0;
  int phase = 1;
  std::string status;
  std::optional<std::int64_t> objective;  // P or dist_pm; empty when none
  double wall_time_ms = 0.0;
};

struct BenchInstance {
  std::string label;
  Instance instance;  // loaded with explicit intervals; deltas applied per cell
};

struct BenchGrid {
  std::vector<BenchInstance> instances;
  std::vector<std::size_t> n_radii;
  std::vector<Picometers> deltas_pm;
  std::vector<int> phases{1};
  // Phase-2 carriers per radius; when unset the cell's phase-1 P is used.
  std::optional<std::size_t> parallelism;
  SpacingMode mode = SpacingMode::kBase;
  double time_limit_s = 0.0;
};

inline constexpr const char* kBenchHeader =
    "instance,n_radii,delta_pm,phase,status,objective,wall_time_ms";

// Runs the grid in (instance, n_radii, delta, phase) order, writing the CSV
// header and then each row as soon as it completes (flushed), so a killed run
// keeps its finished cells. Returns the rows.
std::vector<BenchRow> run_bench(const BenchGrid& grid, std::ostream& csv);

std::string format_bench_row(const BenchRow& row);

}  // namespace wronoc
