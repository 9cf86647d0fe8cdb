#include "wronoc/checker.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace wronoc {

namespace {

const RadiusEntry* find_radius(const Instance& instance, RadiusId id) {
  for (const auto& r : instance.radii) {
    if (r.id == id) return &r;
  }
  return nullptr;
}

bool overlaps(const Resonance& a, const Resonance& b) {
  return std::max(a.lmin_pm, b.lmin_pm) <= std::min(a.lmax_pm, b.lmax_pm);
}

template <typename... Parts>
std::string cat(const Parts&... parts) {
  std::ostringstream out;
  (out << ... << parts);
  return out.str();
}

}  // namespace

std::vector<std::string> check_parallelism(const Instance& instance, std::size_t n_radii,
                                           const ParallelismSolution& solution) {
  std::vector<std::string> out;
  if (solution.status == SolveStatus::kInfeasible || !solution.has_incumbent) {
    if (!solution.selected_radii.empty() || !solution.selections.empty()) {
      out.push_back("solution without incumbent carries selections");
    }
    return out;
  }
  const auto& radii = solution.selected_radii;
  if (radii.size() != n_radii) {
    out.push_back(cat("selected ", radii.size(), " radii, expected ", n_radii));
  }
  if (!std::is_sorted(radii.begin(), radii.end()) ||
      std::adjacent_find(radii.begin(), radii.end()) != radii.end()) {
    out.push_back("selected radii are not strictly ascending");
  }
  if (solution.selections.size() != radii.size() || solution.q.size() != radii.size()) {
    out.push_back("selections/q do not cover exactly the selected radii");
  }

  std::size_t min_q = 0;
  bool first = true;
  for (RadiusId r : radii) {
    const RadiusEntry* radius = find_radius(instance, r);
    if (radius == nullptr) {
      out.push_back(cat("radius ", r, " does not exist"));
      continue;
    }
    const auto sel_it = solution.selections.find(r);
    const auto q_it = solution.q.find(r);
    if (sel_it == solution.selections.end() || q_it == solution.q.end()) {
      out.push_back(cat("radius ", r, " has no selection"));
      continue;
    }
    const auto& sel = sel_it->second;
    if (sel.empty()) out.push_back(cat("radius ", r, " has an empty selection"));
    if (q_it->second != sel.size()) {
      out.push_back(cat("q[", r, "] = ", q_it->second, " but ", sel.size(), " selected"));
    }
    min_q = first ? sel.size() : std::min(min_q, sel.size());
    first = false;
    for (std::size_t k = 0; k < sel.size(); ++k) {
      if (sel[k] >= radius->resonances.size()) {
        out.push_back(cat("radius ", r, ": index ", sel[k], " out of range"));
        continue;
      }
      if (k > 0 && sel[k] <= sel[k - 1]) {
        out.push_back(cat("radius ", r, ": selection not strictly ascending"));
      }
      const Resonance& carrier = radius->resonances[sel[k]];
      for (std::size_t m = 0; m < k; ++m) {
        if (sel[m] < radius->resonances.size() &&
            overlaps(carrier, radius->resonances[sel[m]])) {
          out.push_back(cat("radius ", r, ": carriers ", sel[m], " and ", sel[k],
                            " overlap (within-radius fault)"));
        }
      }
      for (RadiusId other : radii) {
        if (other == r) continue;
        const RadiusEntry* other_radius = find_radius(instance, other);
        if (other_radius == nullptr) continue;
        for (std::size_t i = 0; i < other_radius->resonances.size(); ++i) {
          if (overlaps(carrier, other_radius->resonances[i])) {
            out.push_back(cat("carrier (", r, ",", sel[k], ") overlaps resonance (", other, ",",
                              i, ") of selected radius (routing fault)"));
          }
        }
      }
    }
  }
  if (!first && solution.parallelism != min_q) {
    out.push_back(cat("P = ", solution.parallelism, " but min q = ", min_q));
  }
  return out;
}

std::vector<std::string> check_spacing(const Instance& instance, const SpacingProblem& problem,
                                       const SpacingSolution& solution) {
  std::vector<std::string> out;
  if (solution.status == SolveStatus::kInfeasible || !solution.has_incumbent) {
    if (!solution.matrix.rows.empty()) out.push_back("solution without incumbent has carriers");
    return out;
  }
  const auto& m = solution.matrix;
  if (m.row_radii.size() != problem.n_radii || m.rows.size() != problem.n_radii) {
    out.push_back(cat("matrix has ", m.rows.size(), " rows, expected ", problem.n_radii));
    return out;
  }
  if (std::set<RadiusId>(m.row_radii.begin(), m.row_radii.end()).size() != m.row_radii.size()) {
    out.push_back("a radius appears in two rows");
  }

  struct Carrier {
    RadiusId radius;
    Picometers value;
  };
  std::vector<Carrier> carriers;
  std::vector<Picometers> first_column;
  for (std::size_t row = 0; row < m.rows.size(); ++row) {
    const RadiusEntry* radius = find_radius(instance, m.row_radii[row]);
    if (radius == nullptr) {
      out.push_back(cat("radius ", m.row_radii[row], " does not exist"));
      return out;
    }
    if (m.rows[row].size() != problem.n_lambda) {
      out.push_back(cat("row ", row, " has ", m.rows[row].size(), " carriers, expected ",
                        problem.n_lambda));
    }
    for (std::size_t k = 0; k < m.rows[row].size(); ++k) {
      const std::size_t j = m.rows[row][k];
      if (j >= radius->resonances.size()) {
        out.push_back(cat("row ", row, ": index ", j, " out of range"));
        return out;
      }
      if (k > 0 && j <= m.rows[row][k - 1]) {
        out.push_back(cat("row ", row, " is not strictly ascending"));
      }
      carriers.push_back({radius->id, radius->resonances[j].nominal_pm});
      if (k == 0) first_column.push_back(radius->resonances[j].nominal_pm);
    }
  }
  if (!std::is_sorted(first_column.begin(), first_column.end())) {
    out.push_back("first column is not ascending");
  }

  const bool single = problem.n_radii * problem.n_lambda == 1;
  if (single) {
    if (solution.dist_pm != instance.max_nominal() - instance.min_nominal()) {
      out.push_back("single-carrier dist must equal the instance span");
    }
    return out;
  }

  const Picometers dist = solution.dist_pm;
  if (dist < 0) out.push_back("negative dist");
  for (std::size_t a = 0; a < carriers.size(); ++a) {
    for (std::size_t b = a + 1; b < carriers.size(); ++b) {
      const Picometers gap = carriers[a].value > carriers[b].value
                                 ? carriers[a].value - carriers[b].value
                                 : carriers[b].value - carriers[a].value;
      if (gap < dist || gap == 0) {
        out.push_back(cat("carriers at ", carriers[a].value, " and ", carriers[b].value,
                          " are closer than ", dist, " pm"));
      }
    }
    for (RadiusId other : m.row_radii) {
      if (other == carriers[a].radius) continue;
      for (const auto& res : find_radius(instance, other)->resonances) {
        const Picometers gap = carriers[a].value > res.nominal_pm
                                   ? carriers[a].value - res.nominal_pm
                                   : res.nominal_pm - carriers[a].value;
        if (gap == 0) {
          out.push_back(cat("carrier at ", carriers[a].value, " equals a resonance of radius ",
                            other));
        } else if (problem.mode == SpacingMode::kRefined && gap < dist) {
          out.push_back(cat("carrier at ", carriers[a].value, " is within ", dist,
                            " pm of resonance ", res.nominal_pm, " of radius ", other));
        }
      }
    }
  }
  return out;
}

}  // namespace wronoc
