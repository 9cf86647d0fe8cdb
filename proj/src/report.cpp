#include "wronoc/report.hpp"

#include <iomanip>
#include <sstream>

namespace wronoc {

namespace {

Json carrier_json(const RadiusEntry& radius, std::size_t index) {
  Json c;
  c["index"] = index;
  c["nominal_pm"] = radius.resonances[index].nominal_pm;
  return c;
}

Json ref_json(const Instance& instance, const ResonanceRef& ref) {
  Json j;
  j["radius"] = ref.radius;
  j["index"] = ref.index;
  j["nominal_pm"] = instance.radius(ref.radius).resonances[ref.index].nominal_pm;
  return j;
}

}  // namespace

std::string format_nm(Picometers pm) {
  std::ostringstream out;
  if (pm < 0) {
    out << '-';
    pm = -pm;
  }
  out << pm / 1000;
  Picometers frac = pm % 1000;
  if (frac != 0) {
    int digits = 3;
    while (frac % 10 == 0) {
      frac /= 10;
      --digits;
    }
    out << '.' << std::setw(digits) << std::setfill('0') << frac;
  }
  return out.str();
}

Json to_json(const DeltaPolicy& policy) {
  Json j;
  if (policy.mode == DeltaPolicy::Mode::kSymmetricHalfWidth) {
    j["mode"] = "symmetric-half-width";
    j["half_width_pm"] = policy.half_width_pm;
  } else {
    j["mode"] = "explicit-intervals";
    j["half_width_pm"] = nullptr;
  }
  return j;
}

Json to_json(const Instance& instance) {
  Json j;
  j["label"] = instance.label;
  j["radii"] = Json::array();
  for (const auto& r : instance.radii) {
    Json radius;
    radius["id"] = r.id;
    radius["radius_pm"] = r.radius_pm;
    radius["resonances"] = Json::array();
    for (const auto& res : r.resonances) {
      Json x;
      x["nominal_pm"] = res.nominal_pm;
      x["lmin_pm"] = res.lmin_pm;
      x["lmax_pm"] = res.lmax_pm;
      radius["resonances"].push_back(std::move(x));
    }
    j["radii"].push_back(std::move(radius));
  }
  return j;
}

Json to_json(const Instance& instance, const ConflictSet& conflicts) {
  Json j;
  j["cross_pairs"] = conflicts.cross_count();
  j["within_pairs"] = conflicts.within_count();
  j["pairs"] = Json::array();
  for (const auto& pair : conflicts.pairs()) {
    Json p;
    p["kind"] = pair.kind == ConflictKind::kCross ? "cross" : "within";
    p["first"] = ref_json(instance, pair.first);
    p["second"] = ref_json(instance, pair.second);
    j["pairs"].push_back(std::move(p));
  }
  return j;
}

Json to_json(const Instance& instance, const ParallelismSolution& solution) {
  Json j;
  j["status"] = to_string(solution.status);
  j["has_incumbent"] = solution.has_incumbent;
  j["P"] = solution.parallelism;
  j["selected_radii"] = solution.selected_radii;
  j["radii"] = Json::array();
  for (RadiusId id : solution.selected_radii) {
    const auto& radius = instance.radius(id);
    Json r;
    r["id"] = id;
    r["q"] = solution.q.at(id);
    r["carriers"] = Json::array();
    for (std::size_t index : solution.selections.at(id)) {
      r["carriers"].push_back(carrier_json(radius, index));
    }
    j["radii"].push_back(std::move(r));
  }
  return j;
}

Json to_json(const Instance& instance, const SpacingProblem& problem,
             const SpacingSolution& solution) {
  Json j;
  j["status"] = to_string(solution.status);
  j["has_incumbent"] = solution.has_incumbent;
  j["mode"] = to_string(problem.mode);
  j["n_radii"] = problem.n_radii;
  j["n_lambda"] = problem.n_lambda;
  j["dist_pm"] = solution.dist_pm;
  j["selected_radii"] = solution.matrix.row_radii;
  j["matrix"] = Json::array();
  for (std::size_t row = 0; row < solution.matrix.rows.size(); ++row) {
    const auto& radius = instance.radius(solution.matrix.row_radii[row]);
    Json r;
    r["radius"] = radius.id;
    r["carriers"] = Json::array();
    for (std::size_t index : solution.matrix.rows[row]) {
      r["carriers"].push_back(carrier_json(radius, index));
    }
    j["matrix"].push_back(std::move(r));
  }
  return j;
}

std::string conflict_table(const Instance& instance, const ConflictSet& conflicts) {
  std::ostringstream out;
  out << std::left << std::setw(8) << "kind" << std::setw(8) << "r1" << std::setw(6) << "j1"
      << std::setw(12) << "nm" << std::setw(8) << "r2" << std::setw(6) << "j2" << "nm\n";
  for (const auto& pair : conflicts.pairs()) {
    const auto& a = instance.radius(pair.first.radius).resonances[pair.first.index];
    const auto& b = instance.radius(pair.second.radius).resonances[pair.second.index];
    out << std::setw(8) << (pair.kind == ConflictKind::kCross ? "cross" : "within")
        << std::setw(8) << pair.first.radius << std::setw(6) << pair.first.index << std::setw(12)
        << format_nm(a.nominal_pm) << std::setw(8) << pair.second.radius << std::setw(6)
        << pair.second.index << format_nm(b.nominal_pm) << '\n';
  }
  out << conflicts.cross_count() << " cross, " << conflicts.within_count() << " within\n";
  return out.str();
}

}  // namespace wronoc
