#include <doctest.h>

#include "fixtures.hpp"
#include "wronoc/checker.hpp"
#include "wronoc/conflict.hpp"
#include "wronoc/generator.hpp"
#include "wronoc/parallelism.hpp"

using namespace wronoc;

namespace {

ParallelismSolution solve(const Instance& x, std::size_t n_radii, SolveConfig config = {}) {
  return solve_max_parallelism(x, conflicts_of(x), n_radii, config);
}

}  // namespace

TEST_CASE("four rings, three radii: P = 4") {
  const Instance t = fixtures::four_rings();
  const auto s = solve(t, 3);
  CHECK(s.status == SolveStatus::kOptimal);
  CHECK(s.parallelism == 4);
  CHECK(check_parallelism(t, 3, s).empty());
  // {2,3,4} is the subset worked through by hand: q = 4, 5, 5.
  const std::vector<RadiusId> hand{2, 3, 4};
  const auto q = evaluate_subset(t, conflicts_of(t), hand);
  CHECK(q.at(2).count == 4);
  CHECK(q.at(3).count == 5);
  CHECK(q.at(4).count == 5);
  // Ties resolve to the smallest subset: {1,2,3} also reaches 4.
  CHECK(s.selected_radii == std::vector<RadiusId>{1, 2, 3});
}

TEST_CASE("four-ring goldens for two and four radii") {
  const Instance t = fixtures::four_rings();
  CHECK(fixtures::brute_parallelism(t, 2) == 5);
  CHECK(fixtures::brute_parallelism(t, 4) == 4);
  const auto two = solve(t, 2);
  CHECK(two.parallelism == 5);
  CHECK(two.selected_radii == std::vector<RadiusId>{2, 3});
  CHECK(solve(t, 4).parallelism == 4);
  CHECK(solve(t, 1).parallelism == 7);
}

TEST_CASE("argument edge cases") {
  const Instance t = fixtures::four_rings();
  CHECK_THROWS_AS(solve(t, 0), std::invalid_argument);
  const auto big = solve(t, 99);
  CHECK(big.status == SolveStatus::kInfeasible);
  CHECK_FALSE(big.has_incumbent);
  CHECK(check_parallelism(t, 99, big).empty());
}

TEST_CASE("trim keeps exactly P carriers per radius") {
  const Instance t = fixtures::four_rings();
  SolveConfig config;
  config.trim_to_p = true;
  const auto s = solve(t, 3, config);
  CHECK(s.parallelism == 4);
  for (const auto& [id, q] : s.q) CHECK(q == 4);
  CHECK(check_parallelism(t, 3, s).empty());
}

TEST_CASE("half-width creates within-radius conflicts") {
  // At h = 12 nm the 1521.3/1542.7 pair of radius 2 (21.4 nm apart) overlaps.
  const Instance t = fixtures::four_rings(12000);
  const ConflictSet c = conflicts_of(t);
  CHECK(c.within_count() > 0);
  for (std::size_t n = 1; n <= 4; ++n) {
    const auto s = solve(t, n);
    const long brute = fixtures::brute_parallelism(t, n);
    if (brute <= 0) {
      CHECK(s.status == SolveStatus::kInfeasible);
    } else {
      CHECK(s.parallelism == static_cast<std::size_t>(brute));
    }
    CHECK(check_parallelism(t, n, s).empty());
  }
}

TEST_CASE("branch-and-bound agrees with enumeration on random instances") {
  for (std::uint64_t seed = 1; seed <= 120; ++seed) {
    const Instance base = generate_random_small(seed, 1 + seed % 6, 10);
    for (Picometers h : {0, 500, 1200}) {
      const Instance x = apply_delta_policy(base, DeltaPolicy::Symmetric(h));
      const ConflictSet c = conflicts_of(x);
      for (std::size_t n = 1; n <= x.radii.size(); ++n) {
        const auto bnb = solve_max_parallelism(x, c, n);
        const auto oracle = oracle_max_parallelism(x, c, n);
        const long brute = fixtures::brute_parallelism(x, n);
        CHECK(bnb.status == oracle.status);
        CHECK(bnb.parallelism == oracle.parallelism);
        CHECK(bnb.selected_radii == oracle.selected_radii);
        if (brute > 0) {
          CHECK(bnb.status == SolveStatus::kOptimal);
          CHECK(bnb.parallelism == static_cast<std::size_t>(brute));
        } else {
          CHECK(bnb.status == SolveStatus::kInfeasible);
        }
        CHECK(check_parallelism(x, n, bnb).empty());
        SolveConfig exhaustive;
        exhaustive.method = SearchMethod::kExhaustive;
        CHECK(solve_max_parallelism(x, c, n, exhaustive) == oracle);
      }
    }
  }
}

TEST_CASE("P never increases with the half-width") {
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    const Instance base = generate_random_small(seed, 4, 10);
    for (std::size_t n = 1; n <= base.radii.size(); ++n) {
      std::size_t last = std::numeric_limits<std::size_t>::max();
      for (Picometers h = 0; h <= 2000; h += 250) {
        const auto s = solve(apply_delta_policy(base, DeltaPolicy::Symmetric(h)), n);
        const std::size_t p = s.has_incumbent ? s.parallelism : 0;
        CHECK(p <= last);
        last = p;
      }
    }
  }
}

TEST_CASE("time limit on a large instance reports a timeout status") {
  GenSpec spec;
  const Instance big = apply_delta_policy(generate(spec), DeltaPolicy::Symmetric(1000));
  SolveConfig config;
  config.time_limit_s = 1e-6;
  config.method = SearchMethod::kExhaustive;
  const auto s = solve(big, 8, config);
  CHECK(s.status == SolveStatus::kIncumbentTimeout);
  CHECK(check_parallelism(big, 8, s).empty());
}

TEST_CASE("repeated solves are identical") {
  const Instance x = apply_delta_policy(generate_random_small(7, 6, 10),
                                        DeltaPolicy::Symmetric(500));
  for (std::size_t n = 1; n <= 6; ++n) CHECK(solve(x, n) == solve(x, n));
}

TEST_CASE("checker rejects a corrupted solution") {
  const Instance t = fixtures::four_rings();
  auto s = solve(t, 3);
  s.selections[2].push_back(1);  // 1521.3 nm collides with radius 1 and 3
  std::sort(s.selections[2].begin(), s.selections[2].end());
  s.q[2] = s.selections[2].size();
  CHECK_FALSE(check_parallelism(t, 3, s).empty());
  auto wrong_p = solve(t, 3);
  wrong_p.parallelism = 5;
  CHECK_FALSE(check_parallelism(t, 3, wrong_p).empty());
}
