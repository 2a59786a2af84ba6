#include "speedsched/harness.hpp"

#include "speedsched/io.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <exception>
#include <mutex>
#include <numeric>
#include <sstream>
#include <thread>

namespace speedsched {

using nlohmann::json;

namespace {

std::string format_double(double value) {
  char buffer[64];
  auto [end, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, end);
}

void reject_unknown_keys(const json& j, std::initializer_list<const char*> known,
                         const char* where) {
  for (const auto& [key, _] : j.items()) {
    if (std::none_of(known.begin(), known.end(), [&](const char* k) { return key == k; })) {
      throw std::invalid_argument(std::string(where) + ": unknown field '" + key + "'");
    }
  }
}

}  // namespace

std::string to_string(SolverKind kind) { return kind == SolverKind::Exact ? "exact" : "lpt"; }
std::string to_string(OracleKind kind) {
  return kind == OracleKind::Exact ? "exact" : "lower_bound";
}

SolverKind parse_solver(const std::string& text) {
  if (text == "exact") return SolverKind::Exact;
  if (text == "lpt") return SolverKind::Lpt;
  throw std::invalid_argument("unknown solver '" + text + "' (expected exact|lpt)");
}

OracleKind parse_oracle(const std::string& text) {
  if (text == "exact") return OracleKind::Exact;
  if (text == "lower_bound" || text == "lower-bound") return OracleKind::LowerBound;
  throw std::invalid_argument("unknown oracle '" + text + "' (expected exact|lower_bound)");
}

std::string AlgorithmSpec::label() const {
  switch (kind) {
    case AlgorithmKind::Ipr:
      return "ipr[alpha=" + format_double(ipr.alpha) + ";rho=" + format_double(ipr.rho) +
             (ipr.initial_solver == SolverKind::Lpt ? ";init=lpt" : "") + "]";
    case AlgorithmKind::LptPartition:
      return "lpt-partition";
    case AlgorithmKind::OneConsistent:
      return "one-consistent";
  }
  return "unknown";
}

AlgorithmSpec AlgorithmSpec::parse(const std::string& name, const IprConfig& ipr) {
  AlgorithmSpec spec;
  spec.ipr = ipr;
  if (name == "ipr") {
    spec.kind = AlgorithmKind::Ipr;
    spec.ipr.validate();
  } else if (name == "lpt" || name == "lpt-partition") {
    spec.kind = AlgorithmKind::LptPartition;
  } else if (name == "one-consistent" || name == "consistent") {
    spec.kind = AlgorithmKind::OneConsistent;
  } else {
    throw std::invalid_argument("unknown algorithm '" + name +
                                "' (expected ipr|lpt-partition|one-consistent)");
  }
  return spec;
}

AlgorithmSpec AlgorithmSpec::from_json(const json& j) {
  reject_unknown_keys(j, {"name", "alpha", "rho", "initial_solver"}, "algorithm");
  IprConfig ipr;
  ipr.alpha = j.value("alpha", ipr.alpha);
  ipr.rho = j.value("rho", ipr.rho);
  if (j.contains("initial_solver")) ipr.initial_solver = parse_solver(j.at("initial_solver"));
  return parse(j.at("name").get<std::string>(), ipr);
}

json AlgorithmSpec::to_json() const {
  switch (kind) {
    case AlgorithmKind::Ipr:
      return {{"name", "ipr"},
              {"alpha", ipr.alpha},
              {"rho", ipr.rho},
              {"initial_solver", speedsched::to_string(ipr.initial_solver)}};
    case AlgorithmKind::LptPartition:
      return {{"name", "lpt-partition"}};
    case AlgorithmKind::OneConsistent:
      return {{"name", "one-consistent"},
              {"initial_solver", speedsched::to_string(ipr.initial_solver)}};
  }
  return {};
}

Partition run_partitioner(const AlgorithmSpec& algorithm, std::span<const double> jobs,
                          std::span<const double> predicted_speeds, std::uint64_t node_budget) {
  switch (algorithm.kind) {
    case AlgorithmKind::Ipr: {
      auto config = algorithm.ipr;
      config.node_budget = node_budget;
      return ipr(jobs, predicted_speeds, config).partition;
    }
    case AlgorithmKind::LptPartition:
      return lpt_partition(jobs, predicted_speeds.size());
    case AlgorithmKind::OneConsistent:
      return consistent_partition(jobs, predicted_speeds, algorithm.ipr.initial_solver,
                                  node_budget)
          .partition;
  }
  throw std::logic_error("unhandled algorithm");
}

double reference_makespan(const Instance& instance, OracleKind oracle,
                          std::uint64_t node_budget) {
  if (oracle == OracleKind::LowerBound) {
    return opt_lower_bound(instance.jobs, instance.true_speeds);
  }
  return exact_schedule(instance.jobs, instance.true_speeds, node_budget).makespan;
}

Evaluation evaluate(const Instance& instance, const AlgorithmSpec& algorithm,
                    SolverKind scheduler, OracleKind oracle, std::uint64_t node_budget) {
  instance.validate();
  try {
    Evaluation out;
    out.partition = run_partitioner(algorithm, instance.jobs, instance.predicted_speeds,
                                    node_budget);
    auto loads = bag_loads(out.partition, instance.jobs);
    out.algorithm_makespan =
        solve_schedule(scheduler, loads, instance.true_speeds, node_budget).makespan;
    out.reference = reference_makespan(instance, oracle, node_budget);
    out.ratio = out.algorithm_makespan / out.reference;
    return out;
  } catch (const BudgetError& e) {
    throw BudgetError(std::string(e.what()) + " on instance " + to_json(instance).dump());
  }
}

BinaryEvaluation evaluate_binary(std::span<const double> jobs, std::size_t m, std::size_t m_hat,
                                 std::size_t m0, SolverKind stage_one,
                                 std::uint64_t node_budget) {
  if (m0 < 1 || m0 > m) throw std::domain_error("need 1 <= m0 <= m");
  BinaryEvaluation out;
  out.partition = binary_speed_partition(jobs, m, m_hat, stage_one, node_budget).partition;
  out.merged_loads = merge_to_fit(bag_loads(out.partition, jobs), m0);
  out.algorithm_makespan = *std::max_element(out.merged_loads.begin(), out.merged_loads.end());
  std::vector<double> ones(m0, 1.0);
  out.optimum = exact_schedule(jobs, ones, node_budget).makespan;
  out.ratio = out.algorithm_makespan / out.optimum;
  return out;
}

std::string to_string(SweepParam param) {
  switch (param) {
    case SweepParam::ErrSigma: return "err_sigma";
    case SweepParam::N: return "n";
    case SweepParam::M: return "m";
    case SweepParam::JobSigma: return "job_sigma";
    case SweepParam::SpeedSigma: return "speed_sigma";
  }
  return "unknown";
}

SweepParam parse_sweep(const std::string& text) {
  for (auto p : {SweepParam::ErrSigma, SweepParam::N, SweepParam::M, SweepParam::JobSigma,
                 SweepParam::SpeedSigma}) {
    if (to_string(p) == text) return p;
  }
  throw std::invalid_argument("unknown sweep parameter '" + text + "'");
}

std::vector<double> ExperimentConfig::resolved_sweep_values() const {
  if (!sweep_values.empty()) return sweep_values;
  if (sweep != SweepParam::ErrSigma) {
    throw std::invalid_argument("sweep '" + to_string(sweep) + "' needs explicit sweep_values");
  }
  if (default_points < 2) throw std::invalid_argument("need at least two sweep points");
  std::vector<double> values;
  double top = base.speed_dist.mean();
  for (std::size_t k = 0; k < default_points; ++k) {
    values.push_back(top * static_cast<double>(k) / static_cast<double>(default_points - 1));
  }
  return values;
}

std::uint64_t instance_seed(std::uint64_t seed, std::size_t k) {
  return SplitMix64::mix(seed + static_cast<std::uint64_t>(k + 1) * SplitMix64::kGamma);
}

SyntheticConfig ExperimentConfig::point_config(double value, std::size_t instance) const {
  SyntheticConfig cfg = base;
  cfg.seed = instance_seed(seed, instance);
  switch (sweep) {
    case SweepParam::ErrSigma: cfg.err_sigma = value; break;
    case SweepParam::N: cfg.n = static_cast<std::size_t>(value); break;
    case SweepParam::M: cfg.m = static_cast<std::size_t>(value); break;
    case SweepParam::JobSigma:
      if (cfg.job_dist.kind != Distribution::Kind::Normal) {
        throw std::invalid_argument("job_sigma sweep needs a normal job distribution");
      }
      cfg.job_dist.b = value;
      break;
    case SweepParam::SpeedSigma:
      if (cfg.speed_dist.kind != Distribution::Kind::Normal) {
        throw std::invalid_argument("speed_sigma sweep needs a normal speed distribution");
      }
      cfg.speed_dist.b = value;
      break;
  }
  return cfg;
}

void ExperimentConfig::validate() const {
  if (instances_per_point < 1) throw std::invalid_argument("instances_per_point must be >= 1");
  if (algorithms.empty()) throw std::invalid_argument("no algorithms configured");
  for (double v : resolved_sweep_values()) point_config(v, 0).validate();
}

ExperimentConfig ExperimentConfig::defaults() {
  ExperimentConfig cfg;
  cfg.algorithms = {AlgorithmSpec::parse("ipr"), AlgorithmSpec::parse("lpt-partition"),
                    AlgorithmSpec::parse("one-consistent")};
  return cfg;
}

ExperimentConfig ExperimentConfig::from_json(const json& j) {
  if (!j.is_object()) throw std::invalid_argument("experiment config must be a JSON object");
  reject_unknown_keys(j,
                      {"n", "m", "job_dist", "speed_dist", "err_sigma", "sweep", "sweep_values",
                       "points", "algorithms", "instances_per_point", "scheduler", "oracle",
                       "seed", "node_budget", "threads"},
                      "experiment config");
  try {
    auto cfg = defaults();
    cfg.base.n = j.value("n", cfg.base.n);
    cfg.base.m = j.value("m", cfg.base.m);
    if (j.contains("job_dist")) cfg.base.job_dist = Distribution::parse(j.at("job_dist"));
    if (j.contains("speed_dist")) cfg.base.speed_dist = Distribution::parse(j.at("speed_dist"));
    cfg.base.err_sigma = j.value("err_sigma", cfg.base.err_sigma);
    if (j.contains("sweep")) cfg.sweep = parse_sweep(j.at("sweep"));
    cfg.sweep_values = j.value("sweep_values", cfg.sweep_values);
    cfg.default_points = j.value("points", cfg.default_points);
    if (j.contains("algorithms")) {
      cfg.algorithms.clear();
      for (const auto& a : j.at("algorithms")) {
        cfg.algorithms.push_back(a.is_string() ? AlgorithmSpec::parse(a.get<std::string>())
                                               : AlgorithmSpec::from_json(a));
      }
    }
    cfg.instances_per_point = j.value("instances_per_point", cfg.instances_per_point);
    if (j.contains("scheduler")) cfg.scheduler = parse_solver(j.at("scheduler"));
    if (j.contains("oracle")) cfg.oracle = parse_oracle(j.at("oracle"));
    cfg.seed = j.value("seed", cfg.seed);
    cfg.node_budget = j.value("node_budget", cfg.node_budget);
    cfg.threads = j.value("threads", cfg.threads);
    cfg.validate();
    return cfg;
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("experiment config: ") + e.what());
  }
}

json ExperimentConfig::to_json() const {
  json algos = json::array();
  for (const auto& a : algorithms) algos.push_back(a.to_json());
  json j = {{"n", base.n},
            {"m", base.m},
            {"job_dist", base.job_dist.to_string()},
            {"speed_dist", base.speed_dist.to_string()},
            {"err_sigma", base.err_sigma},
            {"sweep", to_string(sweep)},
            {"points", default_points},
            {"algorithms", algos},
            {"instances_per_point", instances_per_point},
            {"scheduler", to_string(scheduler)},
            {"oracle", to_string(oracle)},
            {"seed", seed},
            {"node_budget", node_budget},
            {"threads", threads}};
  if (!sweep_values.empty()) j["sweep_values"] = sweep_values;
  return j;
}

std::vector<ExperimentRow> run_experiment(const ExperimentConfig& config) {
  config.validate();
  const auto values = config.resolved_sweep_values();
  const std::size_t count = config.instances_per_point;
  const std::size_t algos = config.algorithms.size();
  std::size_t workers = config.threads ? config.threads : std::thread::hardware_concurrency();
  workers = std::clamp<std::size_t>(workers, 1, count);

  std::vector<ExperimentRow> rows;
  for (double value : values) {
    std::vector<std::vector<double>> ratios(count, std::vector<double>(algos, 0.0));
    std::vector<std::exception_ptr> errors(count);
    std::vector<std::string> failing_seed(count);
    std::atomic<std::size_t> next{0};

    auto work = [&] {
      for (std::size_t k = next++; k < count; k = next++) {
        auto cfg = config.point_config(value, k);
        try {
          auto inst = gen_synthetic(cfg);
          double reference = reference_makespan(inst, config.oracle, config.node_budget);
          for (std::size_t a = 0; a < algos; ++a) {
            auto part = run_partitioner(config.algorithms[a], inst.jobs, inst.predicted_speeds,
                                        config.node_budget);
            auto loads = bag_loads(part, inst.jobs);
            double span = solve_schedule(config.scheduler, loads, inst.true_speeds,
                                         config.node_budget)
                              .makespan;
            ratios[k][a] = span / reference;
          }
        } catch (...) {
          errors[k] = std::current_exception();
          failing_seed[k] = std::to_string(cfg.seed);
        }
      }
    };
    std::vector<std::thread> pool;
    for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(work);
    work();
    for (auto& t : pool) t.join();

    for (std::size_t k = 0; k < count; ++k) {
      if (!errors[k]) continue;
      try {
        std::rethrow_exception(errors[k]);
      } catch (const BudgetError& e) {
        throw BudgetError(std::string(e.what()) + " (instance seed " + failing_seed[k] + ")");
      } catch (const std::exception& e) {
        throw std::runtime_error(std::string(e.what()) + " (instance seed " + failing_seed[k] +
                                 ")");
      }
    }

    for (std::size_t a = 0; a < algos; ++a) {
      double sum = 0.0;
      for (std::size_t k = 0; k < count; ++k) sum += ratios[k][a];
      double mean = sum / static_cast<double>(count);
      double sq = 0.0;
      for (std::size_t k = 0; k < count; ++k) sq += (ratios[k][a] - mean) * (ratios[k][a] - mean);
      double sd = count > 1 ? std::sqrt(sq / static_cast<double>(count - 1)) : 0.0;
      rows.push_back({to_string(config.sweep), value, config.algorithms[a].label(), mean, sd,
                      count, to_string(config.oracle)});
    }
  }
  return rows;
}

std::string rows_to_csv(const std::vector<ExperimentRow>& rows) {
  std::string out = "sweep_param,sweep_value,algorithm,mean_ratio,std_ratio,n_instances,oracle_kind\n";
  for (const auto& r : rows) {
    out += r.sweep_param + "," + format_double(r.sweep_value) + "," + r.algorithm + "," +
           format_double(r.mean_ratio) + "," + format_double(r.std_ratio) + "," +
           std::to_string(r.n_instances) + "," + r.oracle_kind + "\n";
  }
  return out;
}

json rows_to_json(const std::vector<ExperimentRow>& rows) {
  json out = json::array();
  for (const auto& r : rows) {
    out.push_back({{"sweep_param", r.sweep_param},
                   {"sweep_value", r.sweep_value},
                   {"algorithm", r.algorithm},
                   {"mean_ratio", r.mean_ratio},
                   {"std_ratio", r.std_ratio},
                   {"n_instances", r.n_instances},
                   {"oracle_kind", r.oracle_kind}});
  }
  return out;
}

std::vector<TheoryRow> theory_curves(const std::vector<double>& alphas) {
  std::vector<TheoryRow> rows;
  for (double a : alphas) {
    if (!(a > 0.0 && a < 1.0)) throw std::domain_error("alpha must lie in (0, 1)");
    rows.push_back({a, 1.0 + a, 2.0 + 2.0 / a, 2.0 + 1.0 / a, 1.0 + 1.0 / a});
  }
  return rows;
}

std::string theory_csv(const std::vector<TheoryRow>& rows) {
  std::string out =
      "alpha,consistency,robustness_general,robustness_equal_size,robustness_infinitesimal\n";
  for (const auto& r : rows) {
    out += format_double(r.alpha) + "," + format_double(r.consistency) + "," +
           format_double(r.robustness_general) + "," + format_double(r.robustness_equal_size) +
           "," + format_double(r.robustness_infinitesimal) + "\n";
  }
  return out;
}

}  // namespace speedsched
