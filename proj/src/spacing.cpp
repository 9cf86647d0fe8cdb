#include "wronoc/spacing.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <set>
#include <stdexcept>

namespace wronoc {

namespace {

Picometers distance(Picometers a, Picometers b) { return a > b ? a - b : b - a; }

// Admissible carriers of one row radius at a fixed spacing.
struct RowCandidates {
  RadiusId id = 0;
  std::vector<Picometers> values;     // ascending nominal values
  std::vector<std::size_t> indices;   // matching indices into Λ_r
};

// Depth-first construction of the lexicographically smallest carrier matrix.
// Rows are opened in ascending first-carrier order and filled left to right,
// mirroring the symmetry-breaking order M_ij + Dist <= M_i,j+1 and
// M_i,1 + Dist <= M_i+1,1.
class MatrixSearch {
 public:
  MatrixSearch(std::vector<RowCandidates> rows, std::size_t n_lambda, Picometers dist,
               Deadline* deadline)
      : rows_(std::move(rows)),
        n_lambda_(n_lambda),
        dist_(dist),
        deadline_(deadline),
        opened_(rows_.size(), false) {}

  std::optional<CarrierMatrix> run() {
    for (const auto& row : rows_) {
      if (greedy_count(row.values, std::numeric_limits<Picometers>::min(), false) < n_lambda_) {
        return std::nullopt;
      }
    }
    if (!open_row(std::numeric_limits<Picometers>::min())) return std::nullopt;
    CarrierMatrix out;
    for (const auto& [row, picks] : matrix_) {
      out.row_radii.push_back(rows_[row].id);
      std::vector<std::size_t> indices;
      for (std::size_t k : picks) indices.push_back(rows_[row].indices[k]);
      out.rows.push_back(std::move(indices));
    }
    return out;
  }

 private:
  bool spaced(Picometers v) const {
    auto it = placed_.lower_bound(v);
    if (it != placed_.end() && *it - v < dist_) return false;
    if (it != placed_.end() && *it == v) return false;
    if (it != placed_.begin() && v - *std::prev(it) < dist_) return false;
    return true;
  }

  // Largest number of mutually `dist`-spaced values strictly above `after`
  // (and >= after + dist when `anchored`), each also spaced from everything
  // already placed.
  std::size_t greedy_count(const std::vector<Picometers>& values, Picometers after,
                           bool anchored) const {
    std::size_t count = 0;
    Picometers last = after;
    bool have_last = anchored;
    for (Picometers v : values) {
      if (v <= after) continue;
      if (have_last && v - last < dist_) continue;
      if (!spaced(v)) continue;
      ++count;
      last = v;
      have_last = true;
    }
    return count;
  }

  // Necessary conditions for completing the matrix from the current state.
  bool can_complete(Picometers row_last, Picometers row_first, std::size_t row_needed) {
    std::vector<Picometers> pool;
    if (row_needed > 0) {
      const auto& values = rows_[current_].values;
      if (greedy_count(values, row_last, true) < row_needed) return false;
      for (Picometers v : values) {
        if (v > row_last && v - row_last >= dist_ && spaced(v)) pool.push_back(v);
      }
    }
    std::size_t needed = row_needed;
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      if (opened_[r]) continue;
      if (greedy_count(rows_[r].values, row_first, false) < n_lambda_) return false;
      needed += n_lambda_;
      for (Picometers v : rows_[r].values) {
        if (v > row_first && spaced(v)) pool.push_back(v);
      }
    }
    if (needed <= 1) return true;
    std::sort(pool.begin(), pool.end());
    std::size_t count = 0;
    Picometers last = 0;
    for (Picometers v : pool) {
      if (count > 0 && (v == last || v - last < dist_)) continue;
      ++count;
      last = v;
    }
    return count >= needed;
  }

  bool open_row(Picometers prev_first) {
    if (matrix_.size() == rows_.size()) return true;
    struct Option {
      Picometers value;
      std::size_t row;
      std::size_t k;
    };
    std::vector<Option> options;
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      if (opened_[r]) continue;
      const auto& values = rows_[r].values;
      for (std::size_t k = 0; k < values.size(); ++k) {
        if (values[k] > prev_first) options.push_back({values[k], r, k});
      }
    }
    std::sort(options.begin(), options.end(),
              [](const Option& a, const Option& b) { return a.value < b.value; });
    for (const Option& opt : options) {
      if (deadline_ != nullptr) deadline_->tick();
      if (!spaced(opt.value)) continue;
      opened_[opt.row] = true;
      current_ = opt.row;
      placed_.insert(opt.value);
      matrix_.push_back({opt.row, {opt.k}});
      if (can_complete(opt.value, opt.value, n_lambda_ - 1) && fill_row(opt.value, opt.value)) {
        return true;
      }
      matrix_.pop_back();
      placed_.erase(opt.value);
      opened_[opt.row] = false;
    }
    return false;
  }

  bool fill_row(Picometers row_first, Picometers row_last) {
    // Index, not reference: open_row appends to matrix_.
    const std::size_t slot = matrix_.size() - 1;
    if (matrix_[slot].second.size() == n_lambda_) return open_row(row_first);
    const std::size_t row = matrix_[slot].first;
    const auto& values = rows_[row].values;
    for (std::size_t k = matrix_[slot].second.back() + 1; k < values.size(); ++k) {
      if (deadline_ != nullptr) deadline_->tick();
      const Picometers v = values[k];
      if (v - row_last < dist_ || !spaced(v)) continue;
      placed_.insert(v);
      matrix_[slot].second.push_back(k);
      current_ = row;
      const std::size_t left = n_lambda_ - matrix_[slot].second.size();
      if (can_complete(v, row_first, left) && fill_row(row_first, v)) return true;
      matrix_[slot].second.pop_back();
      placed_.erase(v);
    }
    return false;
  }

  std::vector<RowCandidates> rows_;
  std::size_t n_lambda_;
  Picometers dist_;
  Deadline* deadline_;
  std::vector<bool> opened_;
  std::size_t current_ = 0;
  std::set<Picometers> placed_;
  std::vector<std::pair<std::size_t, std::vector<std::size_t>>> matrix_;
};

bool admissible(const Instance& instance, std::span<const RadiusId> subset, RadiusId r,
                Picometers value, Picometers dist, SpacingMode mode) {
  for (RadiusId other : subset) {
    if (other == r) continue;
    for (const auto& res : instance.radius(other).resonances) {
      const Picometers gap = distance(value, res.nominal_pm);
      if (gap == 0) return false;
      if (mode == SpacingMode::kRefined && gap < dist) return false;
    }
  }
  return true;
}

std::optional<CarrierMatrix> feasible_impl(const Instance& instance,
                                           std::span<const RadiusId> subset,
                                           std::size_t n_lambda, Picometers dist,
                                           SpacingMode mode, Deadline* deadline) {
  if (dist < 0) throw std::invalid_argument("dist must be non-negative");
  if (n_lambda == 0) throw std::invalid_argument("n_lambda must be at least 1");
  std::vector<RowCandidates> rows;
  for (RadiusId r : subset) {
    const auto& radius = instance.radius(r);
    if (radius.resonances.size() < n_lambda) return std::nullopt;
    RowCandidates row{r, {}, {}};
    for (std::size_t j = 0; j < radius.resonances.size(); ++j) {
      const Picometers v = radius.resonances[j].nominal_pm;
      if (admissible(instance, subset, r, v, dist, mode)) {
        row.values.push_back(v);
        row.indices.push_back(j);
      }
    }
    if (row.values.size() < n_lambda) return std::nullopt;
    rows.push_back(std::move(row));
  }
  return MatrixSearch(std::move(rows), n_lambda, dist, deadline).run();
}

std::vector<RadiusId> sorted_ids(const Instance& instance) {
  std::vector<RadiusId> ids;
  for (const auto& r : instance.radii) ids.push_back(r.id);
  std::sort(ids.begin(), ids.end());
  return ids;
}

SpacingSolution infeasible() {
  SpacingSolution out;
  out.status = SolveStatus::kInfeasible;
  return out;
}

void check_problem(const SpacingProblem& problem) {
  if (problem.n_radii == 0) throw std::invalid_argument("n_radii must be at least 1");
  if (problem.n_lambda == 0) throw std::invalid_argument("n_lambda must be at least 1");
}

SpacingSolution single_carrier(const Instance& instance) {
  const RadiusId first = sorted_ids(instance).front();
  SpacingSolution out;
  out.matrix.row_radii = {first};
  out.matrix.rows = {{0}};
  out.dist_pm = single_carrier_dist(instance);
  out.status = SolveStatus::kOptimal;
  out.has_incumbent = true;
  return out;
}

class SubsetSearch {
 public:
  SubsetSearch(const Instance& instance, const SpacingProblem& problem, Deadline& deadline)
      : instance_(instance), problem_(problem), deadline_(deadline) {}

  void run(const std::vector<RadiusId>& ids) {
    ids_ = ids;
    std::vector<RadiusId> chosen;
    dfs(chosen, 0);
  }

  bool found() const { return best_.has_value(); }
  Picometers best() const { return *best_; }
  const CarrierMatrix& witness() const { return witness_; }

 private:
  Picometers threshold() const { return best_ ? *best_ + 1 : 0; }

  std::optional<CarrierMatrix> test(std::span<const RadiusId> subset, Picometers dist) {
    return feasible_impl(instance_, subset, problem_.n_lambda, dist, problem_.mode, &deadline_);
  }

  void dfs(std::vector<RadiusId>& chosen, std::size_t start) {
    if (chosen.size() == problem_.n_radii) {
      evaluate(chosen);
      return;
    }
    const std::size_t needed = problem_.n_radii - chosen.size();
    for (std::size_t i = start; i + needed <= ids_.size(); ++i) {
      deadline_.tick();
      chosen.push_back(ids_[i]);
      // Dropping radii only relaxes the cross constraints, so a partial
      // subset that cannot beat the incumbent has no completion that can.
      if (chosen.size() == problem_.n_radii || test(chosen, threshold()).has_value()) {
        dfs(chosen, i + 1);
      }
      chosen.pop_back();
    }
  }

  void evaluate(const std::vector<RadiusId>& subset) {
    const Picometers floor = threshold();
    const Picometers bound = dist_upper_bound(instance_, subset, problem_.n_lambda);
    if (bound < floor) return;
    std::vector<Picometers> ladder = distance_ladder(instance_, subset);
    std::erase_if(ladder, [&](Picometers d) { return d < floor || d > bound; });
    if (ladder.empty()) return;
    auto witness = test(subset, ladder.front());
    if (!witness) return;
    std::size_t lo = 0;
    std::size_t hi = ladder.size() - 1;
    while (lo < hi) {
      const std::size_t mid = lo + (hi - lo + 1) / 2;
      if (auto w = test(subset, ladder[mid])) {
        lo = mid;
        witness = std::move(w);
      } else {
        hi = mid - 1;
      }
    }
    best_ = ladder[lo];
    witness_ = std::move(*witness);
  }

  const Instance& instance_;
  const SpacingProblem& problem_;
  Deadline& deadline_;
  std::vector<RadiusId> ids_;
  std::optional<Picometers> best_;
  CarrierMatrix witness_;
};

// Row-major nominal values of a matrix with rows sorted by first carrier.
std::vector<Picometers> canonical_key(const Instance& instance, CarrierMatrix& matrix) {
  std::vector<std::size_t> order(matrix.rows.size());
  std::iota(order.begin(), order.end(), 0);
  const auto first_value = [&](std::size_t row) {
    return instance.radius(matrix.row_radii[row]).resonances[matrix.rows[row].front()].nominal_pm;
  };
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return first_value(a) < first_value(b); });
  CarrierMatrix sorted;
  std::vector<Picometers> key;
  for (std::size_t row : order) {
    sorted.row_radii.push_back(matrix.row_radii[row]);
    sorted.rows.push_back(matrix.rows[row]);
    for (std::size_t j : matrix.rows[row]) {
      key.push_back(instance.radius(matrix.row_radii[row]).resonances[j].nominal_pm);
    }
  }
  matrix = std::move(sorted);
  return key;
}

// Achieved spacing of a complete matrix, or nullopt when a carrier equals a
// resonance of another selected radius.
std::optional<Picometers> matrix_value(const Instance& instance, const CarrierMatrix& matrix,
                                       SpacingMode mode) {
  std::vector<std::pair<RadiusId, Picometers>> carriers;
  for (std::size_t row = 0; row < matrix.rows.size(); ++row) {
    const auto& res = instance.radius(matrix.row_radii[row]).resonances;
    for (std::size_t j : matrix.rows[row]) carriers.push_back({matrix.row_radii[row], res[j].nominal_pm});
  }
  Picometers value = std::numeric_limits<Picometers>::max();
  for (std::size_t a = 0; a < carriers.size(); ++a) {
    for (std::size_t b = a + 1; b < carriers.size(); ++b) {
      value = std::min(value, distance(carriers[a].second, carriers[b].second));
    }
    for (RadiusId other : matrix.row_radii) {
      if (other == carriers[a].first) continue;
      for (const auto& res : instance.radius(other).resonances) {
        const Picometers gap = distance(carriers[a].second, res.nominal_pm);
        if (gap == 0) return std::nullopt;
        if (mode == SpacingMode::kRefined) value = std::min(value, gap);
      }
    }
  }
  return value;
}

// Calls `visit` with every ascending k-combination of {0..n-1}.
template <typename Visit>
void for_each_combination(std::size_t n, std::size_t k, Visit&& visit) {
  if (k > n) return;
  std::vector<std::size_t> pick(k);
  std::iota(pick.begin(), pick.end(), 0);
  while (true) {
    visit(pick);
    std::size_t i = k;
    while (i > 0 && pick[i - 1] == n - k + (i - 1)) --i;
    if (i == 0) return;
    ++pick[i - 1];
    for (std::size_t m = i; m < k; ++m) pick[m] = pick[m - 1] + 1;
  }
}

}  // namespace

std::string_view to_string(SpacingMode mode) {
  return mode == SpacingMode::kBase ? "base" : "refined";
}

bool cross_constraint_ok(const Instance& instance, std::span<const RadiusId> subset,
                         RadiusId r, std::size_t carrier_index, Picometers dist,
                         SpacingMode mode) {
  const auto& radius = instance.radius(r);
  if (carrier_index >= radius.resonances.size()) {
    throw std::out_of_range("carrier index out of range");
  }
  return admissible(instance, subset, r, radius.resonances[carrier_index].nominal_pm, dist, mode);
}

std::optional<CarrierMatrix> feasible(const Instance& instance,
                                      std::span<const RadiusId> subset, std::size_t n_lambda,
                                      Picometers dist, SpacingMode mode) {
  return feasible_impl(instance, subset, n_lambda, dist, mode, nullptr);
}

std::vector<Picometers> distance_ladder(const Instance& instance,
                                        std::span<const RadiusId> subset) {
  std::vector<Picometers> values;
  for (RadiusId r : subset) {
    for (const auto& res : instance.radius(r).resonances) values.push_back(res.nominal_pm);
  }
  std::vector<Picometers> ladder{0};
  for (std::size_t a = 0; a < values.size(); ++a) {
    for (std::size_t b = a + 1; b < values.size(); ++b) {
      ladder.push_back(distance(values[a], values[b]));
    }
  }
  std::sort(ladder.begin(), ladder.end());
  ladder.erase(std::unique(ladder.begin(), ladder.end()), ladder.end());
  return ladder;
}

Picometers dist_upper_bound(const Instance& instance, std::span<const RadiusId> subset,
                            std::size_t n_lambda) {
  const std::size_t carriers = subset.size() * n_lambda;
  if (carriers < 2) throw std::invalid_argument("bound needs at least two carriers");
  Picometers lo = std::numeric_limits<Picometers>::max();
  Picometers hi = std::numeric_limits<Picometers>::min();
  for (RadiusId r : subset) {
    for (const auto& res : instance.radius(r).resonances) {
      lo = std::min(lo, res.nominal_pm);
      hi = std::max(hi, res.nominal_pm);
    }
  }
  return (hi - lo) / static_cast<Picometers>(carriers - 1);
}

Picometers single_carrier_dist(const Instance& instance) {
  return instance.max_nominal() - instance.min_nominal();
}

SpacingSolution solve_spacing(const Instance& instance, const SpacingProblem& problem,
                              const SolveConfig& config) {
  check_problem(problem);
  if (config.method == SearchMethod::kExhaustive) return oracle_spacing(instance, problem);
  if (problem.n_radii > instance.radii.size()) return infeasible();
  if (problem.n_radii * problem.n_lambda == 1) return single_carrier(instance);

  std::vector<RadiusId> ids;
  for (RadiusId id : sorted_ids(instance)) {
    if (instance.radius(id).resonances.size() >= problem.n_lambda) ids.push_back(id);
  }
  Deadline deadline(config.time_limit_s);
  SubsetSearch search(instance, problem, deadline);
  SolveStatus status = SolveStatus::kOptimal;
  try {
    search.run(ids);
  } catch (const SearchTimeout&) {
    status = SolveStatus::kIncumbentTimeout;
  }
  SpacingSolution out;
  if (!search.found()) {
    if (status == SolveStatus::kOptimal) return infeasible();
    out.status = status;
    return out;
  }
  out.matrix = search.witness();
  out.dist_pm = search.best();
  out.status = status;
  out.has_incumbent = true;
  return out;
}

SpacingSolution oracle_spacing(const Instance& instance, const SpacingProblem& problem) {
  check_problem(problem);
  const auto ids = sorted_ids(instance);
  if (problem.n_radii > ids.size()) return infeasible();
  if (problem.n_radii * problem.n_lambda == 1) return single_carrier(instance);

  std::optional<Picometers> best;
  std::vector<Picometers> best_key;
  CarrierMatrix best_matrix;
  for_each_combination(ids.size(), problem.n_radii, [&](const std::vector<std::size_t>& pick) {
    std::vector<RadiusId> subset;
    for (std::size_t p : pick) subset.push_back(ids[p]);
    // Per-subset optimum; only a strictly better subset replaces the best,
    // which keeps the lexicographically smallest subset among ties.
    std::optional<Picometers> local;
    std::vector<Picometers> local_key;
    CarrierMatrix local_matrix;
    std::vector<std::vector<std::size_t>> rows(subset.size());
    const auto recurse = [&](auto&& self, std::size_t row) -> void {
      if (row == subset.size()) {
        CarrierMatrix matrix{subset, rows};
        const auto value = matrix_value(instance, matrix, problem.mode);
        if (!value) return;
        auto key = canonical_key(instance, matrix);
        if (!local || *value > *local || (*value == *local && key < local_key)) {
          local = value;
          local_key = std::move(key);
          local_matrix = std::move(matrix);
        }
        return;
      }
      const std::size_t n = instance.radius(subset[row]).resonances.size();
      for_each_combination(n, problem.n_lambda, [&](const std::vector<std::size_t>& chosen) {
        rows[row] = chosen;
        self(self, row + 1);
      });
    };
    recurse(recurse, 0);
    if (local && (!best || *local > *best)) {
      best = local;
      best_key = std::move(local_key);
      best_matrix = std::move(local_matrix);
    }
  });
  if (!best) return infeasible();
  SpacingSolution out;
  out.matrix = std::move(best_matrix);
  out.dist_pm = *best;
  out.status = SolveStatus::kOptimal;
  out.has_incumbent = true;
  return out;
}

}  // namespace wronoc
