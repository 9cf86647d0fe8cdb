#include <doctest.h>

#include <sstream>

#include "fixtures.hpp"
#include "wronoc/generator.hpp"
#include "wronoc/model.hpp"

using namespace wronoc;

namespace {

bool has_rule(const std::vector<Violation>& violations, const std::string& rule) {
  for (const auto& v : violations) {
    if (v.rule == rule) return true;
  }
  return false;
}

std::vector<Violation> violations_of(const std::string& text) {
  try {
    parse_instance(text, DeltaPolicy::Explicit());
  } catch (const InstanceError& e) {
    return e.violations();
  }
  return {};
}

}  // namespace

TEST_CASE("four-ring instance loads") {
  const Instance t = fixtures::four_rings();
  REQUIRE(t.radii.size() == 4);
  CHECK(t.total_resonances() == 24);
  CHECK(t.max_resonances_per_radius() == 7);
  CHECK(t.radius(1).resonances.size() == 5);
  CHECK(t.radius(4).resonances.back().nominal_pm == 1604900);
  CHECK(t.min_nominal() == 1496400);
  CHECK(t.max_nominal() == 1610800);
  CHECK(validate(t).empty());
}

TEST_CASE("canonical format with explicit intervals and comments") {
  const std::string text =
      "# two rings\n"
      "label demo\n"
      "radius 2 6000000\n"
      "radius 1 5000000   # first\n"
      "resonance 1 1550000 1549000 1551000\n"
      "resonance 1 1500000\n"
      "resonance 2 1520000 1519500 1520500\n";
  const Instance x = parse_instance(text, DeltaPolicy::Explicit());
  CHECK(x.label == "demo");
  REQUIRE(x.radii.size() == 2);
  CHECK(x.radii[0].id == 1);
  CHECK(x.radii[1].id == 2);
  // resonances come back sorted
  CHECK(x.radii[0].resonances[0] == Resonance{1500000, 1500000, 1500000});
  CHECK(x.radii[0].resonances[1] == Resonance{1550000, 1549000, 1551000});
}

TEST_CASE("symmetric policy rewrites every interval") {
  const Instance t = fixtures::four_rings(1000);
  for (const auto& r : t.radii) {
    for (const auto& res : r.resonances) {
      CHECK(res.lmin_pm == res.nominal_pm - 1000);
      CHECK(res.lmax_pm == res.nominal_pm + 1000);
    }
  }
  CHECK(apply_delta_policy(t, DeltaPolicy::Symmetric(0)) == fixtures::four_rings(0));
  CHECK_THROWS_AS(apply_delta_policy(t, DeltaPolicy::Symmetric(-1)), std::invalid_argument);
}

TEST_CASE("lambda facts parse, several per line") {
  const std::string text =
      "% ASP facts\n"
      "lambda(1,1499000,1500000,1501000). lambda(1,1549000,1550000,1551000).\n"
      "lambda(3,1519000,1520000,1521000). % trailing comment\n";
  const Instance x = parse_instance(text, DeltaPolicy::Explicit());
  REQUIRE(x.radii.size() == 2);
  CHECK(x.radii[0].resonances.size() == 2);
  CHECK(x.radii[1].id == 3);
  CHECK(x.radii[1].radius_pm == 0);
}

TEST_CASE("ASP export round trips bit-exactly") {
  const Instance t = fixtures::four_rings(700);
  CHECK(parse_instance(export_asp_facts(t), DeltaPolicy::Explicit()) == t);
  CHECK(parse_instance(write_canonical(t), DeltaPolicy::Explicit()) == t);
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    GenSpec spec;
    spec.seed = seed;
    spec.jitter_pm = 300;
    spec.r_max_pm = 8'000'000;
    const Instance g = apply_delta_policy(generate(spec), DeltaPolicy::Symmetric(250));
    CHECK(parse_instance(export_asp_facts(g), DeltaPolicy::Explicit()) == g);
  }
}

TEST_CASE("ASP export text") {
  Instance x;
  x.label = "tiny";
  x.radii.push_back({7, 5000000, {{1500000, 1499000, 1501000}}});
  CHECK(export_asp_facts(x) ==
        "%! label tiny\n"
        "%! radius 7 5000000\n"
        "lambda(7,1499000,1500000,1501000).\n");
}

TEST_CASE("digest depends on content only") {
  const Instance a = fixtures::four_rings();
  const Instance b = parse_instance(export_asp_facts(a), DeltaPolicy::Explicit());
  CHECK(instance_digest(a) == instance_digest(b));
  CHECK(instance_digest(a).rfind("sha256:", 0) == 0);
  CHECK(instance_digest(a).size() == 7 + 64);
  CHECK(instance_digest(a) != instance_digest(fixtures::four_rings(1)));
}

TEST_CASE("syntax errors carry a line number") {
  try {
    parse_instance("radius 1 5000000\nresonance 1 abc\n", DeltaPolicy::Explicit());
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
  }
  CHECK_THROWS_AS(parse_instance("resonance 4 1500000\n", DeltaPolicy::Explicit()), ParseError);
  CHECK_THROWS_AS(parse_instance("rings 4\n", DeltaPolicy::Explicit()), ParseError);
  CHECK_THROWS_AS(parse_instance("lambda(1,2,3).\n", DeltaPolicy::Explicit()), ParseError);
  CHECK_THROWS_AS(parse_instance("radius 1 5 extra\n", DeltaPolicy::Explicit()), ParseError);
  CHECK_THROWS_AS(parse_instance("radius 0 5\n", DeltaPolicy::Explicit()), ParseError);
}

TEST_CASE("structural violations are named") {
  CHECK(has_rule(violations_of(""), "no radii"));
  CHECK(has_rule(violations_of("radius 1 5000000\n"), "empty radius"));
  CHECK(has_rule(violations_of("radius 1 5\nradius 1 6\nresonance 1 1500000\n"),
                 "duplicate id"));
  CHECK(has_rule(violations_of("radius 1 5\nresonance 1 1500000\nresonance 1 1500000\n"),
                 "duplicate nominal"));
  CHECK(has_rule(violations_of("radius 1 5\nresonance 1 1500000 1500001 1500002\n"),
                 "interval"));
  CHECK(has_rule(violations_of("radius 1 5\nresonance 1 -3\n"), "positive"));

  Instance unsorted;
  unsorted.radii.push_back({1, 5, {{1600000, 1600000, 1600000}, {1500000, 1500000, 1500000}}});
  CHECK(has_rule(validate(unsorted), "ordering"));
}

TEST_CASE("missing file is reported") {
  CHECK_THROWS_AS(load_instance("/nonexistent/instance.txt", DeltaPolicy::Explicit()),
                  std::runtime_error);
}

TEST_CASE("istream overload matches string overload") {
  const std::string text = write_canonical(fixtures::four_rings());
  std::istringstream in(text);
  CHECK(parse_instance(in, DeltaPolicy::Explicit()) ==
        parse_instance(text, DeltaPolicy::Explicit()));
}
