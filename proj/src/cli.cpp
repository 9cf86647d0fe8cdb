#include "wronoc/cli.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

#include "wronoc/bench.hpp"
#include "wronoc/checker.hpp"
#include "wronoc/conflict.hpp"
#include "wronoc/generator.hpp"
#include "wronoc/model.hpp"
#include "wronoc/parallelism.hpp"
#include "wronoc/report.hpp"
#include "wronoc/spacing.hpp"

namespace wronoc {

namespace {

// Raised when a solution fails the independent checker.
class InternalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string instance;
  std::optional<Picometers> delta;
  std::size_t n_radii = 0;
  std::size_t parallelism = 0;
  std::string mode = "base";
  std::string method = "bnb";
  double time_limit = 0.0;
  bool trim = false;
  std::string out;
  std::string format;
  // generate
  std::uint64_t seed = 1;
  GenSpec gen;
  // bench
  std::vector<std::string> instances;
  std::vector<std::size_t> grid_radii;
  std::vector<Picometers> grid_deltas;
  std::vector<int> phases{1};
  std::optional<std::size_t> bench_parallelism;
  bool generated = false;
};

DeltaPolicy policy_of(const Options& o) {
  return o.delta ? DeltaPolicy::Symmetric(*o.delta) : DeltaPolicy::Explicit();
}

SpacingMode mode_of(const Options& o) {
  return o.mode == "refined" ? SpacingMode::kRefined : SpacingMode::kBase;
}

SolveConfig config_of(const Options& o) {
  return {o.time_limit,
          o.method == "exhaustive" ? SearchMethod::kExhaustive : SearchMethod::kBranchAndBound,
          o.trim};
}

int exit_code(SolveStatus status) {
  switch (status) {
    case SolveStatus::kOptimal:
      return kExitOk;
    case SolveStatus::kInfeasible:
      return kExitInfeasible;
    case SolveStatus::kIncumbentTimeout:
      return kExitTimeout;
  }
  return kExitInternal;
}

void emit(const std::string& text, const Options& o, std::ostream& out) {
  if (o.out.empty()) {
    out << text;
    return;
  }
  std::ofstream file(o.out, std::ios::binary);
  if (!file) throw std::runtime_error("cannot write '" + o.out + "'");
  file << text;
}

Json command_echo(const std::string& name, const Options& o) {
  Json c;
  c["name"] = name;
  c["instance"] = o.instance;
  c["delta_policy"] = to_json(policy_of(o));
  if (name == "max-parallelism" || name == "spacing" || name == "pipeline") {
    c["n_radii"] = o.n_radii;
  }
  if (name == "spacing") c["parallelism"] = o.parallelism;
  if (name == "spacing" || name == "pipeline") c["mode"] = o.mode;
  if (name != "conflicts") {
    c["method"] = o.method;
    c["time_limit_s"] = o.time_limit;
  }
  if (name == "max-parallelism" || name == "pipeline") c["trim"] = o.trim;
  return c;
}

std::string document(const std::string& name, const Options& o, const Instance& instance,
                     std::string_view status, Json result, double wall_ms) {
  Json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["command"] = command_echo(name, o);
  doc["instance_digest"] = instance_digest(instance);
  doc["status"] = status;
  doc["result"] = std::move(result);
  doc["wall_time_ms"] = static_cast<std::int64_t>(wall_ms + 0.5);
  return doc.dump(2) + "\n";
}

void require_valid(const std::vector<std::string>& violations, const char* what) {
  if (violations.empty()) return;
  std::string text = std::string("internal error: ") + what + " failed verification:";
  for (const auto& v : violations) text += "\n  " + v;
  throw InternalError(text);
}

double ms_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
      .count();
}

int cmd_validate(const Options& o, std::ostream& out) {
  Json result;
  int code = kExitOk;
  std::optional<Instance> instance;
  try {
    instance = load_instance(o.instance, policy_of(o));
    result["valid"] = true;
    result["violations"] = Json::array();
    result["radii"] = instance->radii.size();
    result["resonances"] = instance->total_resonances();
    result["max_resonances_per_radius"] = instance->max_resonances_per_radius();
    result["instance_digest"] = instance_digest(*instance);
  } catch (const InstanceError& e) {
    result["valid"] = false;
    result["violations"] = Json::array();
    for (const auto& v : e.violations()) {
      Json x;
      x["rule"] = v.rule;
      x["message"] = v.message;
      result["violations"].push_back(std::move(x));
    }
    code = kExitUsage;
  }
  emit(result.dump(2) + "\n", o, out);
  return code;
}

int cmd_conflicts(const Options& o, std::ostream& out) {
  const auto start = std::chrono::steady_clock::now();
  const Instance instance = load_instance(o.instance, policy_of(o));
  const ConflictSet conflicts = conflicts_of(instance);
  if (o.format == "table") {
    emit(conflict_table(instance, conflicts), o, out);
  } else {
    emit(document("conflicts", o, instance, "ok", to_json(instance, conflicts), ms_since(start)),
         o, out);
  }
  return kExitOk;
}

int cmd_max_parallelism(const Options& o, std::ostream& out) {
  const auto start = std::chrono::steady_clock::now();
  const Instance instance = load_instance(o.instance, policy_of(o));
  const ConflictSet conflicts = conflicts_of(instance);
  const auto solution = solve_max_parallelism(instance, conflicts, o.n_radii, config_of(o));
  const double wall = ms_since(start);
  require_valid(check_parallelism(instance, o.n_radii, solution), "parallelism solution");
  emit(document("max-parallelism", o, instance, to_string(solution.status),
                to_json(instance, solution), wall),
       o, out);
  return exit_code(solution.status);
}

int cmd_spacing(const Options& o, std::ostream& out) {
  const auto start = std::chrono::steady_clock::now();
  const Instance instance = load_instance(o.instance, policy_of(o));
  const SpacingProblem problem{o.n_radii, o.parallelism, mode_of(o)};
  const auto solution = solve_spacing(instance, problem, config_of(o));
  const double wall = ms_since(start);
  require_valid(check_spacing(instance, problem, solution), "spacing solution");
  emit(document("spacing", o, instance, to_string(solution.status),
                to_json(instance, problem, solution), wall),
       o, out);
  return exit_code(solution.status);
}

int cmd_pipeline(const Options& o, std::ostream& out) {
  const auto start = std::chrono::steady_clock::now();
  const Instance instance = load_instance(o.instance, policy_of(o));
  const ConflictSet conflicts = conflicts_of(instance);
  const auto phase1 = solve_max_parallelism(instance, conflicts, o.n_radii, config_of(o));
  require_valid(check_parallelism(instance, o.n_radii, phase1), "parallelism solution");
  Json result;
  result["parallelism"] = to_json(instance, phase1);
  result["spacing"] = nullptr;
  SolveStatus status = phase1.status;
  if (phase1.has_incumbent) {
    const SpacingProblem problem{o.n_radii, phase1.parallelism, mode_of(o)};
    const auto phase2 = solve_spacing(instance, problem, config_of(o));
    require_valid(check_spacing(instance, problem, phase2), "spacing solution");
    result["spacing"] = to_json(instance, problem, phase2);
    if (status == SolveStatus::kOptimal) status = phase2.status;
  }
  emit(document("pipeline", o, instance, to_string(status), std::move(result), ms_since(start)),
       o, out);
  return exit_code(status);
}

int cmd_generate(Options o, std::ostream& out) {
  o.gen.seed = o.seed;
  const Instance instance = generate(o.gen);
  emit(write_canonical(instance), o, out);
  return kExitOk;
}

int cmd_export(const Options& o, std::ostream& out) {
  const Instance instance = load_instance(o.instance, policy_of(o));
  if (o.format == "json") {
    Json doc;
    doc["schema_version"] = kSchemaVersion;
    doc["instance_digest"] = instance_digest(instance);
    doc["instance"] = to_json(instance);
    emit(doc.dump(2) + "\n", o, out);
  } else {
    emit(export_asp_facts(instance), o, out);
  }
  return kExitOk;
}

int cmd_bench(const Options& o, std::ostream& out) {
  BenchGrid grid;
  for (const auto& path : o.instances) {
    Instance instance = load_instance(path, DeltaPolicy::Explicit());
    grid.instances.push_back({std::filesystem::path(path).stem().string(), std::move(instance)});
  }
  if (o.generated) grid.instances.push_back({"generated-default", generate(GenSpec{})});
  grid.n_radii = o.grid_radii;
  grid.deltas_pm = o.grid_deltas;
  grid.phases = o.phases;
  grid.parallelism = o.bench_parallelism;
  grid.mode = mode_of(o);
  grid.time_limit_s = o.time_limit;
  if (o.out.empty()) {
    run_bench(grid, out);
  } else {
    std::ofstream file(o.out, std::ios::binary);
    if (!file) throw std::runtime_error("cannot write '" + o.out + "'");
    run_bench(grid, file);
  }
  return kExitOk;
}

void add_instance(CLI::App* cmd, Options& o) {
  cmd->add_option("--instance", o.instance, "Instance file (canonical or lambda/4 facts)")
      ->required();
  cmd->add_option("--delta", o.delta,
                  "Symmetric uncertainty half-width in pm; omit to use the file's intervals")
      ->check(CLI::NonNegativeNumber);
}

void add_solver(CLI::App* cmd, Options& o) {
  cmd->add_option("--method", o.method, "bnb or exhaustive")
      ->check(CLI::IsMember({"bnb", "exhaustive"}));
  cmd->add_option("--time-limit", o.time_limit, "Seconds, 0 = unlimited")
      ->check(CLI::NonNegativeNumber);
  cmd->add_option("--out", o.out, "Write output to this file instead of stdout");
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact WRONoC parameter selection: parallelism and carrier spacing", "wronoc"};
  app.require_subcommand(1);
  Options o;

  auto* validate_cmd = app.add_subcommand("validate", "Check an instance file");
  add_instance(validate_cmd, o);
  validate_cmd->add_option("--out", o.out, "Output file");

  auto* conflicts_cmd = app.add_subcommand("conflicts", "List conflicting resonance pairs");
  add_instance(conflicts_cmd, o);
  conflicts_cmd->add_option("--format", o.format, "json or table")
      ->check(CLI::IsMember({"json", "table"}));
  conflicts_cmd->add_option("--out", o.out, "Output file");

  auto* parallel_cmd =
      app.add_subcommand("max-parallelism", "Maximize the minimum carriers per radius");
  add_instance(parallel_cmd, o);
  parallel_cmd->add_option("--n-radii", o.n_radii, "Number of radii to select")
      ->required()
      ->check(CLI::PositiveNumber);
  parallel_cmd->add_flag("--trim", o.trim, "Keep exactly P carriers per radius");
  add_solver(parallel_cmd, o);

  auto* spacing_cmd = app.add_subcommand("spacing", "Maximize the minimum carrier spacing");
  add_instance(spacing_cmd, o);
  spacing_cmd->add_option("--n-radii", o.n_radii, "Number of radii")
      ->required()
      ->check(CLI::PositiveNumber);
  spacing_cmd->add_option("--parallelism", o.parallelism, "Carriers per radius")
      ->required()
      ->check(CLI::PositiveNumber);
  spacing_cmd->add_option("--mode", o.mode, "base or refined")
      ->check(CLI::IsMember({"base", "refined"}));
  add_solver(spacing_cmd, o);

  auto* pipeline_cmd =
      app.add_subcommand("pipeline", "Maximize parallelism, then space carriers at that P");
  add_instance(pipeline_cmd, o);
  pipeline_cmd->add_option("--n-radii", o.n_radii, "Number of radii")
      ->required()
      ->check(CLI::PositiveNumber);
  pipeline_cmd->add_option("--mode", o.mode, "base or refined")
      ->check(CLI::IsMember({"base", "refined"}));
  pipeline_cmd->add_flag("--trim", o.trim, "Keep exactly P carriers per radius");
  add_solver(pipeline_cmd, o);

  auto* generate_cmd = app.add_subcommand("generate", "Write a synthetic instance");
  generate_cmd->add_option("--seed", o.seed, "PRNG seed (std::mt19937_64)");
  generate_cmd->add_option("--r-min-pm", o.gen.r_min_pm, "Smallest radius");
  generate_cmd->add_option("--r-max-pm", o.gen.r_max_pm, "Largest radius");
  generate_cmd->add_option("--r-step-pm", o.gen.r_step_pm, "Radius step");
  generate_cmd->add_option("--band-lo-pm", o.gen.band_lo_pm, "Band lower edge");
  generate_cmd->add_option("--band-hi-pm", o.gen.band_hi_pm, "Band upper edge");
  generate_cmd->add_option("--n-eff-milli", o.gen.n_eff_milli, "Effective index x 1000");
  generate_cmd->add_option("--jitter-pm", o.gen.jitter_pm, "Max uniform perturbation");
  generate_cmd->add_option("--out", o.out, "Output file");

  auto* bench_cmd = app.add_subcommand("bench", "Run a parameter grid and write CSV");
  bench_cmd->add_option("--instance", o.instances, "Instance files (repeatable)");
  bench_cmd->add_flag("--generated", o.generated, "Include the default generated instance");
  bench_cmd->add_option("--n-radii", o.grid_radii, "Comma-separated n_R values")
      ->delimiter(',');
  bench_cmd->add_option("--delta", o.grid_deltas, "Comma-separated half-widths (pm)")
      ->delimiter(',');
  bench_cmd->add_option("--phase", o.phases, "Comma-separated phases (1, 2)")
      ->delimiter(',')
      ->check(CLI::IsMember({1, 2}));
  bench_cmd->add_option("--parallelism", o.bench_parallelism,
                        "Phase-2 carriers per radius (default: phase-1 P)");
  bench_cmd->add_option("--mode", o.mode, "base or refined")
      ->check(CLI::IsMember({"base", "refined"}));
  bench_cmd->add_option("--time-limit", o.time_limit, "Seconds per cell, 0 = unlimited")
      ->check(CLI::NonNegativeNumber);
  bench_cmd->add_option("--out", o.out, "CSV file (default stdout)");

  auto* export_cmd = app.add_subcommand("export-asp", "Write lambda/4 facts or instance JSON");
  add_instance(export_cmd, o);
  o.format = "";
  export_cmd->add_option("--format", o.format, "asp (default) or json")
      ->check(CLI::IsMember({"asp", "json"}));
  export_cmd->add_option("--out", o.out, "Output file");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  try {
    if (*validate_cmd) return cmd_validate(o, out);
    if (*conflicts_cmd) return cmd_conflicts(o, out);
    if (*parallel_cmd) return cmd_max_parallelism(o, out);
    if (*spacing_cmd) return cmd_spacing(o, out);
    if (*pipeline_cmd) return cmd_pipeline(o, out);
    if (*generate_cmd) return cmd_generate(o, out);
    if (*bench_cmd) return cmd_bench(o, out);
    if (*export_cmd) return cmd_export(o, out);
  } catch (const InternalError& e) {
    err << e.what() << '\n';
    return kExitInternal;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  err << "error: no subcommand\n";
  return kExitUsage;
}

}  // namespace wronoc
