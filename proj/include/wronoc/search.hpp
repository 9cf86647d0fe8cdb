#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string_view>

namespace wronoc {

enum class SolveStatus { kOptimal, kIncumbentTimeout, kInfeasible };
enum class SearchMethod { kBranchAndBound, kExhaustive };

std::string_view to_string(SolveStatus status);
std::string_view to_string(SearchMethod method);

struct SolveConfig {
  double time_limit_s = 0.0;  // 0 = no limit
  SearchMethod method = SearchMethod::kBranchAndBound;
  bool trim_to_p = false;  // parallelism only
};

// Thrown from deep inside a search when the time limit expires; solvers catch
// it and report their incumbent.
struct SearchTimeout {};

class Deadline {
 public:
  explicit Deadline(double seconds) {
    if (seconds < 0.0) throw std::invalid_argument("time limit must be non-negative");
    if (seconds > 0.0) {
      end_ = std::chrono::steady_clock::now() +
             std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                 std::chrono::duration<double>(seconds));
    }
  }

  // Cheap enough for inner loops: the clock is read every 256 calls.
  void tick() {
    if (!end_ || (++calls_ & 0xff) != 0) return;
    if (std::chrono::steady_clock::now() >= *end_) throw SearchTimeout{};
  }

 private:
  std::optional<std::chrono::steady_clock::time_point> end_;
  std::uint64_t calls_ = 0;
};

}  // namespace wronoc
