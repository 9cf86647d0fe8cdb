#include "wronoc/bench.hpp"

#include <chrono>
#include <iomanip>
#include <sstream>

#include "wronoc/conflict.hpp"
#include "wronoc/parallelism.hpp"

namespace wronoc {

namespace {

std::string csv_field(const std::string& text) {
  if (text.find_first_of(",\"\n") == std::string::npos) return text;
  std::string quoted = "\"";
  for (char c : text) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  return quoted + '"';
}

double elapsed_ms(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
      .count();
}

}  // namespace

std::string format_bench_row(const BenchRow& row) {
  std::ostringstream out;
  out << csv_field(row.instance) << ',' << row.n_radii << ',' << row.delta_pm << ',' << row.phase
      << ',' << row.status << ',';
  if (row.objective) out << *row.objective;
  out << ',' << std::fixed << std::setprecision(3) << row.wall_time_ms;
  return out.str();
}

std::vector<BenchRow> run_bench(const BenchGrid& grid, std::ostream& csv) {
  csv << kBenchHeader << '\n' << std::flush;
  std::vector<BenchRow> rows;
  const auto emit = [&](BenchRow row) {
    csv << format_bench_row(row) << '\n' << std::flush;
    rows.push_back(std::move(row));
  };
  const SolveConfig config{grid.time_limit_s, SearchMethod::kBranchAndBound, false};
  for (const auto& bench : grid.instances) {
    for (std::size_t n_radii : grid.n_radii) {
      for (Picometers delta : grid.deltas_pm) {
        const Instance instance =
            apply_delta_policy(bench.instance, DeltaPolicy::Symmetric(delta));
        std::optional<ParallelismSolution> phase1;
        const auto solve_phase1 = [&] {
          const auto start = std::chrono::steady_clock::now();
          const ConflictSet conflicts = conflicts_of(instance);
          phase1 = solve_max_parallelism(instance, conflicts, n_radii, config);
          return elapsed_ms(start);
        };
        for (int phase : grid.phases) {
          BenchRow row{bench.label, n_radii, delta, phase, "", std::nullopt, 0.0};
          if (phase == 1) {
            row.wall_time_ms = solve_phase1();
            row.status = std::string(to_string(phase1->status));
            if (phase1->has_incumbent) {
              row.objective = static_cast<std::int64_t>(phase1->parallelism);
            }
          } else {
            std::size_t n_lambda = 0;
            if (grid.parallelism) {
              n_lambda = *grid.parallelism;
            } else {
              if (!phase1) solve_phase1();
              n_lambda = phase1->has_incumbent ? phase1->parallelism : 0;
            }
            if (n_lambda == 0) {
              row.status = "skipped";
            } else {
              const auto start = std::chrono::steady_clock::now();
              const auto solution =
                  solve_spacing(instance, {n_radii, n_lambda, grid.mode}, config);
              row.wall_time_ms = elapsed_ms(start);
              row.status = std::string(to_string(solution.status));
              if (solution.has_incumbent) row.objective = solution.dist_pm;
            }
          }
          emit(std::move(row));
        }
      }
    }
  }
  return rows;
}

}  // namespace wronoc
