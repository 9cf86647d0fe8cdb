#include <doctest.h>

#include "fixtures.hpp"
#include "wronoc/generator.hpp"

using namespace wronoc;

TEST_CASE("mt19937_64 reference value") {
  // The C++ standard fixes the 10000th output of a default-seeded engine.
  std::mt19937_64 rng;
  rng.discard(9999);
  CHECK(rng() == 9981545732273789042ULL);
}

TEST_CASE("uniform_below stays in range and is reproducible") {
  std::mt19937_64 a(42);
  std::mt19937_64 b(42);
  for (int i = 0; i < 1000; ++i) {
    const std::uint64_t bound = 1 + static_cast<std::uint64_t>(i) * 7919;
    const std::uint64_t x = uniform_below(a, bound);
    CHECK(x < bound);
    CHECK(x == uniform_below(b, bound));
  }
  std::mt19937_64 c(1);
  CHECK(uniform_below(c, 1) == 0);
  CHECK_THROWS_AS(uniform_below(c, 0), std::invalid_argument);
}

TEST_CASE("default spec shape") {
  const Instance g = generate(GenSpec{});
  CHECK(g.radii.size() == 101);
  CHECK(g.total_resonances() == 1765);
  for (const auto& r : g.radii) {
    CHECK(r.resonances.size() >= 4);
    CHECK(r.resonances.size() <= 32);
  }
  CHECK(g.radii.front().resonances.size() == 5);
  CHECK(g.radii.back().resonances.size() == 30);
  CHECK(validate(g).empty());
  // The 5 um ring has 5 resonances about 25 nm apart.
  const auto& first = g.radii.front().resonances;
  for (std::size_t j = 1; j < first.size(); ++j) {
    const Picometers gap = first[j].nominal_pm - first[j - 1].nominal_pm;
    CHECK(gap > 22000);
    CHECK(gap < 30000);
  }
}

TEST_CASE("spacing shrinks as the ring grows") {
  const Instance g = generate(GenSpec{});
  double last = 1e18;
  for (const auto& r : g.radii) {
    const auto& res = r.resonances;
    const double mean = static_cast<double>(res.back().nominal_pm - res.front().nominal_pm) /
                        static_cast<double>(res.size() - 1);
    CHECK(mean < last);
    last = mean;
  }
}

TEST_CASE("generation is deterministic under a fixed seed") {
  GenSpec spec;
  spec.jitter_pm = 500;
  spec.seed = 99;
  CHECK(generate(spec) == generate(spec));
  GenSpec other = spec;
  other.seed = 100;
  CHECK_FALSE(generate(spec) == generate(other));
  CHECK(instance_digest(generate(GenSpec{})) == instance_digest(generate(GenSpec{})));
}

TEST_CASE("degenerate band lists every empty radius") {
  GenSpec spec;
  spec.band_lo_pm = 0;
  spec.band_hi_pm = 0;
  spec.r_max_pm = 6'000'000;
  try {
    generate(spec);
    FAIL("expected GenerationError");
  } catch (const GenerationError& e) {
    CHECK(e.empty_radii() == std::vector<RadiusId>{1, 2, 3, 4, 5});
  }
}

TEST_CASE("invalid spec is rejected") {
  GenSpec spec;
  spec.r_step_pm = 0;
  CHECK_THROWS_AS(generate(spec), std::invalid_argument);
  spec = GenSpec{};
  spec.r_min_pm = spec.r_max_pm + 1;
  CHECK_THROWS_AS(generate(spec), std::invalid_argument);
  spec = GenSpec{};
  spec.jitter_pm = -1;
  CHECK_THROWS_AS(generate(spec), std::invalid_argument);
}

TEST_CASE("random small instances") {
  CHECK(generate_random_small(5, 4, 10) == generate_random_small(5, 4, 10));
  CHECK(instance_digest(generate_random_small(5, 4, 10)) ==
        "sha256:361ced19587ed87834bb9ec1f076e78a786c1c50039ba33931a70f977dbd26a5");
  std::size_t with_collision = 0;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    const Instance x = generate_random_small(seed, 1 + seed % 6, 10);
    CHECK(validate(x).empty());
    CHECK(x.radii.size() == 1 + seed % 6);
    CHECK(x.max_resonances_per_radius() <= 10);
    bool collision = false;
    for (const auto& a : x.radii) {
      for (const auto& b : x.radii) {
        if (a.id >= b.id) continue;
        for (const auto& ra : a.resonances) {
          for (const auto& rb : b.resonances) collision = collision || ra.nominal_pm == rb.nominal_pm;
        }
      }
    }
    with_collision += collision;
  }
  CHECK(with_collision >= 30);
  CHECK_THROWS_AS(generate_random_small(1, 0, 5), std::invalid_argument);
  CHECK_THROWS_AS(generate_random_small(1, 7, 5), std::invalid_argument);
  CHECK_THROWS_AS(generate_random_small(1, 3, 13), std::invalid_argument);
}
