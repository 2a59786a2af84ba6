#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "speedsched/harness.hpp"
#include "speedsched/io.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace speedsched;

namespace {

constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitBudget = 3;

// Thrown for bad flag combinations detected after parsing.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::optional<std::uint64_t> env_seed() {
  const char* text = std::getenv("SPEEDSCHED_SEED");
  if (!text || !*text) return std::nullopt;
  try {
    std::size_t used = 0;
    auto value = std::stoull(text, &used, 0);
    if (used != std::string(text).size()) throw std::invalid_argument(text);
    return value;
  } catch (const std::exception&) {
    throw UsageError(std::string("SPEEDSCHED_SEED is not an unsigned integer: ") + text);
  }
}

// --seed beats SPEEDSCHED_SEED beats the fallback.
std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag, std::uint64_t fallback) {
  if (flag) return *flag;
  if (auto env = env_seed()) return *env;
  return fallback;
}

void emit(const std::string& out, const std::string& text) {
  if (out.empty() || out == "-") {
    std::cout << text;
  } else {
    write_text_file(out, text);
  }
}

std::string format_number(double x) {
  std::ostringstream s;
  s.precision(17);
  s << x;
  return s.str();
}

struct PartitionFlags {
  std::string algo = "ipr";
  double alpha = 0.5;
  double rho = 4.0;
  std::string solver = "exact";
  std::size_t m_hat = 0;
  std::uint64_t budget = kDefaultNodeBudget;

  void add_to(CLI::App* cmd) {
    cmd->add_option("--algo", algo, "ipr | lpt | one-consistent | binary")
        ->check(CLI::IsMember({"ipr", "lpt", "lpt-partition", "one-consistent", "binary"}));
    cmd->add_option("--alpha", alpha, "IPR consistency slack in (0, 1)");
    cmd->add_option("--rho", rho, "IPR bag size ratio target");
    cmd->add_option("--solver", solver, "initial partition solver: exact | lpt")
        ->check(CLI::IsMember({"exact", "lpt"}));
    cmd->add_option("--m-hat", m_hat, "predicted number of available machines (binary)");
    cmd->add_option("--budget", budget, "branch-and-bound node budget");
  }

  AlgorithmSpec spec() const {
    IprConfig cfg{alpha, rho, parse_solver(solver), budget};
    return AlgorithmSpec::parse(algo, cfg);
  }
};

// Binary instances are {"jobs", "m", "m_hat", "m0"}; a regular instance
// supplies m through its speed vectors.
std::size_t machines_of(const json& j) {
  if (j.contains("m")) return j.at("m").get<std::size_t>();
  if (j.contains("true_speeds")) return j.at("true_speeds").size();
  throw std::invalid_argument("input has neither 'm' nor 'true_speeds'");
}

std::size_t flag_or_field(std::size_t flag, const json& j, const char* key) {
  if (flag > 0) return flag;
  if (j.contains(key)) return j.at(key).get<std::size_t>();
  throw UsageError(std::string("--") + (std::string(key) == "m_hat" ? "m-hat" : key) +
                   " is required for the binary algorithm");
}

int cmd_gen(const std::string& kind, SyntheticConfig cfg, const std::string& job_dist,
            const std::string& speed_dist, std::optional<std::uint64_t> seed_flag,
            std::size_t count, std::size_t k, const std::string& out) {
  if (!job_dist.empty()) cfg.job_dist = Distribution::parse(job_dist);
  if (!speed_dist.empty()) cfg.speed_dist = Distribution::parse(speed_dist);
  if (count < 1) throw UsageError("--count must be >= 1");
  const std::uint64_t first = resolve_seed(seed_flag, 0);

  auto make = [&](std::uint64_t seed) -> json {
    if (kind == "prop1") return to_json(gen_prop1_instance(cfg.n, cfg.m));
    if (kind == "tradeoff") return to_json(gen_tradeoff_instance(cfg.m));
    if (kind == "binary-lb") {
      auto b = gen_binary_lb_instance(k);
      return {{"jobs", b.jobs}, {"m", b.m}, {"m_hat", b.m_hat}, {"m0", b.m0}};
    }
    cfg.seed = seed;
    return to_json(gen_synthetic(cfg));
  };

  if (count == 1) {
    emit(out, make(first).dump(2) + "\n");
    return 0;
  }
  if (out.empty() || out == "-") throw UsageError("--count > 1 needs --out <directory>");
  fs::create_directories(out);
  for (std::size_t i = 0; i < count; ++i) {
    const std::uint64_t seed = first + i;
    write_json_file(fs::path(out) / ("instance-" + std::to_string(seed) + ".json"), make(seed));
  }
  return 0;
}

int cmd_partition(const PartitionFlags& flags, const std::string& in, const std::string& out) {
  const json input = read_json_file(in);
  json result;
  if (flags.algo == "binary") {
    auto jobs = input.at("jobs").get<std::vector<double>>();
    const std::size_t m = machines_of(input);
    const std::size_t m_hat = flag_or_field(flags.m_hat, input, "m_hat");
    auto bp = binary_speed_partition(jobs, m, m_hat, parse_solver(flags.solver), flags.budget);
    result = to_json(bp.partition);
    result["algorithm"] = "binary";
    result["bag_loads"] = bag_loads(bp.partition, jobs);
  } else {
    const Instance inst = instance_from_json(input);
    const auto spec = flags.spec();
    Partition part = run_partitioner(spec, inst.jobs, inst.predicted_speeds, flags.budget);
    result = to_json(part);
    result["algorithm"] = spec.label();
    result["bag_loads"] = bag_loads(part, inst.jobs);
    result["beta"] = beta_ratio(part, inst.jobs);
  }
  emit(out, result.dump(2) + "\n");
  return 0;
}

int cmd_schedule(const std::string& in, const std::string& bags_path, const std::string& scheduler,
                 const std::string& speeds_kind, std::uint64_t budget, const std::string& out) {
  const Instance inst = instance_from_json(read_json_file(in));
  const Partition part = partition_from_json(read_json_file(bags_path));
  if (auto problem = validate_partition(part, inst.n(), inst.m())) {
    throw std::invalid_argument(bags_path + ": " + *problem);
  }
  const auto& speeds = speeds_kind == "predicted" ? inst.predicted_speeds : inst.true_speeds;
  const auto loads = bag_loads(part, inst.jobs);
  SolveResult res = scheduler == "capacity" ? capacity_robust_schedule(part, inst.jobs, speeds)
                                            : solve_schedule(parse_solver(scheduler), loads,
                                                             speeds, budget);
  json result = to_json(res.schedule);
  result["makespan"] = res.makespan;
  result["optimal"] = res.optimal;
  result["machine_loads"] = machine_loads(res.schedule, loads, speeds.size());
  emit(out, result.dump(2) + "\n");
  return 0;
}

int cmd_evaluate(const PartitionFlags& flags, const std::string& in, const std::string& scheduler,
                 const std::string& oracle, std::size_t m0_flag, const std::string& format,
                 const std::string& out) {
  const json input = read_json_file(in);
  std::string label;
  double alg = 0.0, reference = 0.0, ratio = 0.0;
  std::string oracle_kind = oracle;
  if (flags.algo == "binary") {
    auto jobs = input.at("jobs").get<std::vector<double>>();
    const std::size_t m = machines_of(input);
    const std::size_t m_hat = flag_or_field(flags.m_hat, input, "m_hat");
    const std::size_t m0 = flag_or_field(m0_flag, input, "m0");
    auto ev = evaluate_binary(jobs, m, m_hat, m0, parse_solver(flags.solver), flags.budget);
    label = "binary";
    alg = ev.algorithm_makespan;
    reference = ev.optimum;
    ratio = ev.ratio;
    oracle_kind = "exact";
  } else {
    const Instance inst = instance_from_json(input);
    const auto spec = flags.spec();
    auto ev = evaluate(inst, spec, parse_solver(scheduler), parse_oracle(oracle), flags.budget);
    label = spec.label();
    alg = ev.algorithm_makespan;
    reference = ev.reference;
    ratio = ev.ratio;
  }

  std::string text;
  if (format == "json") {
    text = json({{"algorithm", label},
                 {"algorithm_makespan", alg},
                 {"reference", reference},
                 {"ratio", ratio},
                 {"oracle_kind", oracle_kind}})
               .dump(2) +
           "\n";
  } else if (format == "csv") {
    text = "algorithm,algorithm_makespan,reference,ratio,oracle_kind\n" + label + "," +
           format_number(alg) + "," + format_number(reference) + "," + format_number(ratio) +
           "," + oracle_kind + "\n";
  } else {
    text = format_number(ratio) + "\n";
  }
  emit(out, text);
  return 0;
}

int cmd_experiment(const std::string& config_path, std::optional<std::uint64_t> seed_flag,
                   std::optional<std::size_t> threads, std::optional<std::size_t> instances,
                   const std::string& format, const std::string& out) {
  ExperimentConfig cfg = config_path.empty() ? ExperimentConfig::defaults()
                                             : ExperimentConfig::from_json(read_json_file(config_path));
  cfg.seed = resolve_seed(seed_flag, cfg.seed);
  if (threads) cfg.threads = *threads;
  if (instances) cfg.instances_per_point = *instances;
  cfg.validate();
  auto rows = run_experiment(cfg);
  emit(out, format == "json" ? rows_to_json(rows).dump(2) + "\n" : rows_to_csv(rows));
  return 0;
}

int cmd_verify(std::size_t trials, std::optional<std::uint64_t> seed_flag,
               const std::string& format, const std::string& out) {
  if (trials < 1) throw UsageError("--trials must be >= 1");
  auto report = verify_properties(resolve_seed(seed_flag, 7), trials);
  emit(out, format == "json" ? report.to_json().dump(2) + "\n" : report.to_text());
  return report.all_passed() ? 0 : kExitFailure;
}

int cmd_curves(const std::vector<double>& alphas, std::size_t points, const std::string& out) {
  std::vector<double> grid = alphas;
  if (grid.empty()) {
    if (points < 1) throw UsageError("--points must be >= 1");
    for (std::size_t i = 1; i <= points; ++i) {
      grid.push_back(static_cast<double>(i) / static_cast<double>(points + 1));
    }
  }
  emit(out, theory_csv(theory_curves(grid)));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-stage makespan scheduling with speed predictions"};
  app.require_subcommand(1);

  // gen
  auto* gen = app.add_subcommand("gen", "generate instances");
  std::string gen_kind = "synthetic", gen_job_dist, gen_speed_dist, gen_out;
  SyntheticConfig gen_cfg;
  std::optional<std::uint64_t> gen_seed;
  std::size_t gen_count = 1, gen_k = 1;
  gen->add_option("--kind", gen_kind, "synthetic | prop1 | tradeoff | binary-lb")
      ->check(CLI::IsMember({"synthetic", "prop1", "tradeoff", "binary-lb"}));
  gen->add_option("--n", gen_cfg.n, "number of jobs");
  gen->add_option("--m", gen_cfg.m, "number of machines");
  gen->add_option("--job-dist", gen_job_dist, "uniform:lo:hi or normal:mean:sigma");
  gen->add_option("--speed-dist", gen_speed_dist, "uniform:lo:hi or normal:mean:sigma");
  gen->add_option("--err-sigma", gen_cfg.err_sigma, "prediction error standard deviation");
  gen->add_option("--seed", gen_seed, "seed of the first instance");
  gen->add_option("--count", gen_count, "number of instances (seeds seed..seed+count-1)");
  gen->add_option("--k", gen_k, "size parameter of the binary-lb family");
  gen->add_option("--out", gen_out, "output file, or directory when --count > 1");

  // partition
  auto* partition = app.add_subcommand("partition", "split jobs into bags");
  PartitionFlags part_flags;
  std::string part_in, part_out;
  part_flags.add_to(partition);
  partition->add_option("--in", part_in, "instance JSON")->required()->check(CLI::ExistingFile);
  partition->add_option("--out", part_out, "bags JSON (default stdout)");

  // schedule
  auto* schedule = app.add_subcommand("schedule", "assign bags to machines");
  std::string sched_in, sched_bags, sched_out, sched_kind = "exact", sched_speeds = "true";
  std::uint64_t sched_budget = kDefaultNodeBudget;
  schedule->add_option("--in", sched_in, "instance JSON")->required()->check(CLI::ExistingFile);
  schedule->add_option("--bags", sched_bags, "bags JSON")->required()->check(CLI::ExistingFile);
  schedule->add_option("--scheduler", sched_kind, "exact | lpt | capacity")
      ->check(CLI::IsMember({"exact", "lpt", "capacity"}));
  schedule->add_option("--speeds", sched_speeds, "true | predicted")
      ->check(CLI::IsMember({"true", "predicted"}));
  schedule->add_option("--budget", sched_budget, "branch-and-bound node budget");
  schedule->add_option("--out", sched_out, "schedule JSON (default stdout)");

  // evaluate
  auto* evaluate_cmd = app.add_subcommand("evaluate", "approximation ratio of one algorithm");
  PartitionFlags eval_flags;
  std::string eval_in, eval_out, eval_scheduler = "exact", eval_oracle = "exact",
                                 eval_format = "text";
  std::size_t eval_m0 = 0;
  eval_flags.add_to(evaluate_cmd);
  evaluate_cmd->add_option("--in", eval_in, "instance JSON")->required()->check(CLI::ExistingFile);
  evaluate_cmd->add_option("--scheduler", eval_scheduler, "exact | lpt")
      ->check(CLI::IsMember({"exact", "lpt"}));
  evaluate_cmd->add_option("--oracle", eval_oracle, "exact | lower_bound")
      ->check(CLI::IsMember({"exact", "lower_bound"}));
  evaluate_cmd->add_option("--m0", eval_m0, "available machines (binary)");
  evaluate_cmd->add_option("--format", eval_format, "text | csv | json")
      ->check(CLI::IsMember({"text", "csv", "json"}));
  evaluate_cmd->add_option("--out", eval_out, "output file (default stdout)");

  // experiment
  auto* experiment = app.add_subcommand("experiment", "run a parameter sweep");
  std::string exp_config, exp_out, exp_format = "csv";
  std::optional<std::uint64_t> exp_seed;
  std::optional<std::size_t> exp_threads, exp_instances;
  experiment->add_option("--config", exp_config, "experiment JSON (default: built-in sweep)")
      ->check(CLI::ExistingFile);
  experiment->add_option("--seed", exp_seed, "override the config seed");
  experiment->add_option("--threads", exp_threads, "worker threads (0: all cores)");
  experiment->add_option("--instances", exp_instances, "override instances per point");
  experiment->add_option("--format", exp_format, "csv | json")
      ->check(CLI::IsMember({"csv", "json"}));
  experiment->add_option("--out", exp_out, "output file (default stdout)");

  // verify
  auto* verify = app.add_subcommand("verify", "run the property suite");
  std::size_t verify_trials = 200;
  std::optional<std::uint64_t> verify_seed;
  std::string verify_format = "text", verify_out;
  verify->add_option("--trials", verify_trials, "randomized trials per property");
  verify->add_option("--seed", verify_seed, "seed (default 7)");
  verify->add_option("--format", verify_format, "text | json")
      ->check(CLI::IsMember({"text", "json"}));
  verify->add_option("--out", verify_out, "report file (default stdout)");

  // curves
  auto* curves = app.add_subcommand("curves", "consistency/robustness bounds as CSV");
  std::vector<double> curve_alphas;
  std::size_t curve_points = 19;
  std::string curve_out;
  curves->add_option("--alphas", curve_alphas, "alpha values in (0, 1)")->delimiter(',');
  curves->add_option("--points", curve_points, "evenly spaced alphas when --alphas is absent");
  curves->add_option("--out", curve_out, "CSV file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*gen) {
      return cmd_gen(gen_kind, gen_cfg, gen_job_dist, gen_speed_dist, gen_seed, gen_count, gen_k,
                     gen_out);
    }
    if (*partition) return cmd_partition(part_flags, part_in, part_out);
    if (*schedule) {
      return cmd_schedule(sched_in, sched_bags, sched_kind, sched_speeds, sched_budget, sched_out);
    }
    if (*evaluate_cmd) {
      return cmd_evaluate(eval_flags, eval_in, eval_scheduler, eval_oracle, eval_m0, eval_format,
                          eval_out);
    }
    if (*experiment) {
      return cmd_experiment(exp_config, exp_seed, exp_threads, exp_instances, exp_format, exp_out);
    }
    if (*verify) return cmd_verify(verify_trials, verify_seed, verify_format, verify_out);
    if (*curves) return cmd_curves(curve_alphas, curve_points, curve_out);
  } catch (const BudgetError& e) {
    std::cerr << "error: node budget exhausted: " << e.what() << "\n";
    return kExitBudget;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const json::exception& e) {
    std::cerr << "error: malformed input: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitUsage;
}
