#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <istream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace wronoc {

// All wavelengths are integer picometers (1 nm = 1000 pm). No floating point
// enters any constraint check.
using Picometers = std::int64_t;
using RadiusId = std::int32_t;

struct Resonance {
  Picometers nominal_pm = 0;
  Picometers lmin_pm = 0;
  Picometers lmax_pm = 0;

  friend bool operator==(const Resonance&, const Resonance&) = default;
};

struct RadiusEntry {
  RadiusId id = 0;
  Picometers radius_pm = 0;  // physical ring radius, metadata only
  std::vector<Resonance> resonances;  // ascending by nominal

  friend bool operator==(const RadiusEntry&, const RadiusEntry&) = default;
};

// The radius/resonance table. Radii are kept in ascending id order by the
// parser; solvers assume a valid instance (see validate()).
struct Instance {
  std::vector<RadiusEntry> radii;
  std::string label;

  // Position of radius `id` in `radii`; throws std::out_of_range.
  std::size_t position_of(RadiusId id) const;
  const RadiusEntry& radius(RadiusId id) const { return radii[position_of(id)]; }

  std::size_t total_resonances() const;
  // Largest |Λ_r| over all radii.
  std::size_t max_resonances_per_radius() const;
  Picometers min_nominal() const;
  Picometers max_nominal() const;

  friend bool operator==(const Instance&, const Instance&) = default;
};

// Uncertainty model applied when an instance is loaded.
struct DeltaPolicy {
  enum class Mode { kExplicitIntervals, kSymmetricHalfWidth };

  Mode mode = Mode::kExplicitIntervals;
  Picometers half_width_pm = 0;  // used only in symmetric mode

  static DeltaPolicy Explicit() { return {}; }
  static DeltaPolicy Symmetric(Picometers half_width_pm) {
    return {Mode::kSymmetricHalfWidth, half_width_pm};
  }
};

struct Violation {
  std::string rule;     // "ordering", "duplicate id", "interval", ...
  std::string message;  // names the radius / resonance
};

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& what);
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

// Thrown when a syntactically fine file describes an invalid instance.
class InstanceError : public std::runtime_error {
 public:
  explicit InstanceError(std::vector<Violation> violations);
  const std::vector<Violation>& violations() const { return violations_; }

 private:
  std::vector<Violation> violations_;
};

// Accepts the canonical line format (`radius`, `resonance`, `label`
// directives, `#` comments) and ASP `lambda(R,Lmin,Lnom,Lmax).` facts, which
// may be mixed. Resonances are sorted ascending; in symmetric mode the file's
// intervals are replaced by nominal ∓ half_width.
Instance parse_instance(std::string_view text, const DeltaPolicy& policy);
Instance parse_instance(std::istream& in, const DeltaPolicy& policy);
Instance load_instance(const std::string& path, const DeltaPolicy& policy);

// Returns a copy with the policy applied (symmetric mode rewrites all
// intervals; explicit mode is the identity).
Instance apply_delta_policy(const Instance& instance, const DeltaPolicy& policy);

// Empty iff every structural invariant holds.
std::vector<Violation> validate(const Instance& instance);

// One `lambda(R,Lmin,Lnom,Lmax).` fact per resonance. Radius metadata and the
// label travel in `%!` comment lines so a re-parse is lossless.
std::string export_asp_facts(const Instance& instance);

// Canonical line format, readable by parse_instance.
std::string write_canonical(const Instance& instance);

// "sha256:<hex>" over the ASP export.
std::string instance_digest(const Instance& instance);

}  // namespace wronoc
