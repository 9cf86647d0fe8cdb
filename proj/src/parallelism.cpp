#include "wronoc/parallelism.hpp"

#include <boost/dynamic_bitset.hpp>

#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace wronoc {

namespace {

using Mask = boost::dynamic_bitset<std::uint64_t>;

std::vector<RadiusId> sorted_ids(const Instance& instance) {
  std::vector<RadiusId> ids;
  for (const auto& r : instance.radii) ids.push_back(r.id);
  std::sort(ids.begin(), ids.end());
  return ids;
}

ParallelismSolution build_solution(const Instance& instance, const ConflictSet& conflicts,
                                   std::vector<RadiusId> subset, bool trim) {
  std::sort(subset.begin(), subset.end());
  ParallelismSolution out;
  out.selected_radii = subset;
  out.has_incumbent = true;
  const auto evaluation = evaluate_subset(instance, conflicts, subset);
  std::size_t p = std::numeric_limits<std::size_t>::max();
  for (const auto& [id, set] : evaluation) p = std::min(p, set.count);
  out.parallelism = p;
  for (const auto& [id, set] : evaluation) {
    if (trim) {
      const auto usable = usable_resonances(instance, conflicts, subset, id);
      out.selections[id] = smallest_compatible_subset(instance, conflicts, usable, id, p);
    } else {
      out.selections[id] = set.witness;
    }
    out.q[id] = out.selections[id].size();
  }
  return out;
}

ParallelismSolution infeasible_solution() {
  ParallelismSolution out;
  out.status = SolveStatus::kInfeasible;
  return out;
}

ParallelismSolution timeout_without_incumbent() {
  ParallelismSolution out;
  out.status = SolveStatus::kIncumbentTimeout;
  out.has_incumbent = false;
  return out;
}

// Lexicographic enumeration of all subsets; the deadline may be null.
ParallelismSolution enumerate_subsets(const Instance& instance, const ConflictSet& conflicts,
                                      std::size_t n_radii, bool trim, Deadline* deadline) {
  const auto ids = sorted_ids(instance);
  if (n_radii > ids.size()) return infeasible_solution();

  std::vector<std::size_t> pick(n_radii);
  std::iota(pick.begin(), pick.end(), 0);
  std::vector<RadiusId> subset(n_radii);
  std::vector<RadiusId> best_subset;
  std::size_t best = 0;
  try {
    while (true) {
      if (deadline != nullptr) deadline->tick();
      for (std::size_t k = 0; k < n_radii; ++k) subset[k] = ids[pick[k]];
      const auto evaluation = evaluate_subset(instance, conflicts, subset);
      std::size_t p = std::numeric_limits<std::size_t>::max();
      for (const auto& [id, set] : evaluation) p = std::min(p, set.count);
      if (p > best) {
        best = p;
        best_subset = subset;
      }
      // Advance to the next combination in lexicographic order.
      std::size_t k = n_radii;
      while (k > 0 && pick[k - 1] == ids.size() - n_radii + (k - 1)) --k;
      if (k == 0) break;
      ++pick[k - 1];
      for (std::size_t m = k; m < n_radii; ++m) pick[m] = pick[m - 1] + 1;
    }
  } catch (const SearchTimeout&) {
    if (best_subset.empty()) return timeout_without_incumbent();
    auto out = build_solution(instance, conflicts, best_subset, trim);
    out.status = SolveStatus::kIncumbentTimeout;
    return out;
  }
  if (best_subset.empty()) return infeasible_solution();
  auto out = build_solution(instance, conflicts, best_subset, trim);
  out.status = SolveStatus::kOptimal;
  return out;
}

// Bitset view of the instance used by the branch-and-bound: per radius, the
// resonance order by right endpoint and, for every other radius, the mask of
// its resonances that a selection of that radius would forbid.
class MaskModel {
 public:
  MaskModel(const Instance& instance, const ConflictSet& conflicts) : instance_(instance) {
    const std::size_t n = instance.radii.size();
    by_lmax_.resize(n);
    full_.resize(n);
    cross_.assign(n, std::vector<Mask>(n));
    for (std::size_t p = 0; p < n; ++p) {
      const auto& res = instance.radii[p].resonances;
      auto& order = by_lmax_[p];
      order.resize(res.size());
      std::iota(order.begin(), order.end(), 0);
      std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return res[a].lmax_pm != res[b].lmax_pm ? res[a].lmax_pm < res[b].lmax_pm : a < b;
      });
      full_[p] = Mask(res.size());
      full_[p].set();
      for (std::size_t t = 0; t < n; ++t) cross_[p][t] = Mask(res.size());
    }
    for (const auto& pair : conflicts.pairs()) {
      if (pair.kind != ConflictKind::kCross) continue;
      const auto a = instance.position_of(pair.first.radius);
      const auto b = instance.position_of(pair.second.radius);
      cross_[a][b].set(pair.first.index);
      cross_[b][a].set(pair.second.index);
    }
  }

  std::size_t size() const { return full_.size(); }
  const Mask& full(std::size_t p) const { return full_[p]; }
  // Resonances of p blocked by selecting radius t.
  const Mask& blocked_by(std::size_t p, std::size_t t) const { return cross_[p][t]; }

  // Activity selection restricted to the set bits of `mask`.
  std::size_t mis(std::size_t p, const Mask& mask) const {
    const auto& res = instance_.radii[p].resonances;
    std::size_t count = 0;
    Picometers last_end = 0;
    for (std::size_t j : by_lmax_[p]) {
      if (!mask.test(j)) continue;
      if (count == 0 || res[j].lmin_pm > last_end) {
        ++count;
        last_end = res[j].lmax_pm;
      }
    }
    return count;
  }

 private:
  const Instance& instance_;
  std::vector<std::vector<std::size_t>> by_lmax_;
  std::vector<Mask> full_;
  std::vector<std::vector<Mask>> cross_;
};

struct Entry {
  std::size_t pos;
  Mask usable;
  std::size_t q;
};

// Depth-first search over radius subsets. In kMaximize mode every leaf that
// beats the incumbent replaces it and the threshold rises; in kFirstAtLeast
// mode the search stops at the first leaf whose smallest q reaches `floor`.
class SubsetSearch {
 public:
  enum class Mode { kMaximize, kFirstAtLeast };

  SubsetSearch(const MaskModel& model, Mode mode, std::size_t floor, std::size_t upper_bound,
               Deadline& deadline)
      : model_(model), mode_(mode), best_(floor), upper_bound_(upper_bound), deadline_(deadline) {}

  void run(std::vector<Entry> candidates, std::size_t n_radii) {
    std::vector<Entry> chosen;
    std::erase_if(candidates, [&](const Entry& e) { return !admissible(e.q); });
    dfs(chosen, candidates, n_radii);
  }

  std::size_t best() const { return best_; }
  const std::vector<std::size_t>& best_positions() const { return best_positions_; }
  bool found() const { return !best_positions_.empty(); }

 private:
  bool admissible(std::size_t q) const {
    if (q == 0) return false;
    return mode_ == Mode::kMaximize ? q > best_ : q >= best_;
  }
  bool done() const {
    return mode_ == Mode::kFirstAtLeast ? found() : (found() && best_ >= upper_bound_);
  }

  void dfs(std::vector<Entry>& chosen, const std::vector<Entry>& candidates,
           std::size_t needed) {
    for (std::size_t i = 0; i < candidates.size() && !done(); ++i) {
      if (candidates.size() - i < needed) return;
      deadline_.tick();
      const Entry& pick = candidates[i];
      if (!admissible(pick.q)) continue;

      // Selecting `pick` shrinks every chosen radius's usable set.
      std::vector<Entry> next_chosen;
      next_chosen.reserve(chosen.size() + 1);
      bool ok = true;
      for (const Entry& c : chosen) {
        Entry updated{c.pos, c.usable - model_.blocked_by(c.pos, pick.pos), 0};
        updated.q = model_.mis(c.pos, updated.usable);
        if (!admissible(updated.q)) {
          ok = false;
          break;
        }
        next_chosen.push_back(std::move(updated));
      }
      if (!ok) continue;
      next_chosen.push_back(pick);

      if (needed == 1) {
        std::size_t p = std::numeric_limits<std::size_t>::max();
        for (const Entry& c : next_chosen) p = std::min(p, c.q);
        best_ = p;
        best_positions_.clear();
        for (const Entry& c : next_chosen) best_positions_.push_back(c.pos);
        continue;
      }

      std::vector<Entry> next_candidates;
      for (std::size_t k = i + 1; k < candidates.size(); ++k) {
        const Entry& c = candidates[k];
        Entry updated{c.pos, c.usable - model_.blocked_by(c.pos, pick.pos), 0};
        updated.q = model_.mis(c.pos, updated.usable);
        if (admissible(updated.q)) next_candidates.push_back(std::move(updated));
      }
      if (next_candidates.size() + 1 < needed) continue;
      dfs(next_chosen, next_candidates, needed - 1);
    }
  }

  const MaskModel& model_;
  Mode mode_;
  std::size_t best_;
  std::size_t upper_bound_;
  Deadline& deadline_;
  std::vector<std::size_t> best_positions_;
};

std::vector<RadiusId> ids_of(const Instance& instance, const std::vector<std::size_t>& positions) {
  std::vector<RadiusId> ids;
  for (std::size_t p : positions) ids.push_back(instance.radii[p].id);
  std::sort(ids.begin(), ids.end());
  return ids;
}

ParallelismSolution branch_and_bound(const Instance& instance, const ConflictSet& conflicts,
                                     std::size_t n_radii, bool trim, Deadline& deadline) {
  if (n_radii > instance.radii.size()) return infeasible_solution();
  const MaskModel model(instance, conflicts);

  std::vector<Entry> roots;
  for (std::size_t p = 0; p < model.size(); ++p) {
    roots.push_back({p, model.full(p), model.mis(p, model.full(p))});
  }
  // P can never exceed the n_R-th largest standalone capacity.
  std::vector<std::size_t> caps;
  for (const auto& e : roots) caps.push_back(e.q);
  std::sort(caps.rbegin(), caps.rend());
  const std::size_t upper_bound = caps[n_radii - 1];

  // Pass 1: optimal value, exploring high-capacity radii first.
  std::vector<Entry> by_capacity = roots;
  std::stable_sort(by_capacity.begin(), by_capacity.end(), [&](const Entry& a, const Entry& b) {
    if (a.q != b.q) return a.q > b.q;
    return instance.radii[a.pos].id < instance.radii[b.pos].id;
  });
  SubsetSearch maximize(model, SubsetSearch::Mode::kMaximize, 0, upper_bound, deadline);
  try {
    maximize.run(by_capacity, n_radii);
  } catch (const SearchTimeout&) {
    if (!maximize.found()) return timeout_without_incumbent();
    auto out = build_solution(instance, conflicts, ids_of(instance, maximize.best_positions()), trim);
    out.status = SolveStatus::kIncumbentTimeout;
    return out;
  }
  if (!maximize.found()) return infeasible_solution();

  // Pass 2: lexicographically smallest subset reaching that value.
  std::vector<Entry> by_id = roots;
  std::stable_sort(by_id.begin(), by_id.end(), [&](const Entry& a, const Entry& b) {
    return instance.radii[a.pos].id < instance.radii[b.pos].id;
  });
  SubsetSearch first(model, SubsetSearch::Mode::kFirstAtLeast, maximize.best(), upper_bound,
                     deadline);
  std::vector<RadiusId> subset = ids_of(instance, maximize.best_positions());
  SolveStatus status = SolveStatus::kOptimal;
  try {
    first.run(by_id, n_radii);
    if (first.found()) subset = ids_of(instance, first.best_positions());
  } catch (const SearchTimeout&) {
    status = SolveStatus::kIncumbentTimeout;
  }
  auto out = build_solution(instance, conflicts, subset, trim);
  out.status = status;
  return out;
}

}  // namespace

std::string_view to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::kOptimal:
      return "optimal";
    case SolveStatus::kIncumbentTimeout:
      return "incumbent-timeout";
    case SolveStatus::kInfeasible:
      return "infeasible";
  }
  return "unknown";
}

std::string_view to_string(SearchMethod method) {
  return method == SearchMethod::kBranchAndBound ? "bnb" : "exhaustive";
}

std::map<RadiusId, CompatibleSet> evaluate_subset(const Instance& instance,
                                                  const ConflictSet& conflicts,
                                                  std::span<const RadiusId> subset) {
  if (subset.empty()) throw std::invalid_argument("subset must be non-empty");
  std::map<RadiusId, CompatibleSet> out;
  for (RadiusId r : subset) {
    const auto usable = usable_resonances(instance, conflicts, subset, r);
    out[r] = max_compatible_count(instance, conflicts, usable, r);
  }
  return out;
}

ParallelismSolution solve_max_parallelism(const Instance& instance,
                                          const ConflictSet& conflicts, std::size_t n_radii,
                                          const SolveConfig& config) {
  if (n_radii == 0) throw std::invalid_argument("n_radii must be at least 1");
  Deadline deadline(config.time_limit_s);
  if (config.method == SearchMethod::kExhaustive) {
    return enumerate_subsets(instance, conflicts, n_radii, config.trim_to_p, &deadline);
  }
  return branch_and_bound(instance, conflicts, n_radii, config.trim_to_p, deadline);
}

ParallelismSolution oracle_max_parallelism(const Instance& instance,
                                           const ConflictSet& conflicts,
                                           std::size_t n_radii) {
  if (n_radii == 0) throw std::invalid_argument("n_radii must be at least 1");
  return enumerate_subsets(instance, conflicts, n_radii, false, nullptr);
}

}  // namespace wronoc
