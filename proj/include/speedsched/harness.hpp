#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "speedsched/gen.hpp"
#include "speedsched/model.hpp"
#include "speedsched/partition.hpp"
#include "speedsched/solvers.hpp"

namespace speedsched {

enum class AlgorithmKind { Ipr, LptPartition, OneConsistent };
enum class OracleKind { Exact, LowerBound };

struct AlgorithmSpec {
  AlgorithmKind kind = AlgorithmKind::Ipr;
  IprConfig ipr;  // alpha / rho / initial solver, used by Ipr; solver also by OneConsistent

  // "ipr[alpha=0.5;rho=4]", "lpt-partition", "one-consistent"
  std::string label() const;
  // Accepts "ipr", "lpt", "lpt-partition", "one-consistent" (ipr takes config defaults).
  static AlgorithmSpec parse(const std::string& name, const IprConfig& ipr = {});
  static AlgorithmSpec from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;
};

std::string to_string(SolverKind kind);
std::string to_string(OracleKind kind);
SolverKind parse_solver(const std::string& text);
OracleKind parse_oracle(const std::string& text);

Partition run_partitioner(const AlgorithmSpec& algorithm, std::span<const double> jobs,
                          std::span<const double> predicted_speeds,
                          std::uint64_t node_budget = kDefaultNodeBudget);

// Optimal makespan (exact) or its certified lower bound on the true speeds.
double reference_makespan(const Instance& instance, OracleKind oracle,
                          std::uint64_t node_budget = kDefaultNodeBudget);

struct Evaluation {
  Partition partition;
  double algorithm_makespan = 0.0;
  double reference = 0.0;
  double ratio = 0.0;
};

// Partitions on (jobs, predicted), schedules the bags on the true speeds with
// `scheduler`, divides by the oracle value. BudgetError messages carry the
// instance as JSON.
Evaluation evaluate(const Instance& instance, const AlgorithmSpec& algorithm,
                    SolverKind scheduler, OracleKind oracle,
                    std::uint64_t node_budget = kDefaultNodeBudget);

struct BinaryEvaluation {
  Partition partition;
  std::vector<double> merged_loads;
  double algorithm_makespan = 0.0;
  double optimum = 0.0;
  double ratio = 0.0;
};

// {0,1}-speed pipeline: binary_speed_partition with prediction m_hat, then
// merge_to_fit onto the m0 available machines, one merged bag per machine.
BinaryEvaluation evaluate_binary(std::span<const double> jobs, std::size_t m, std::size_t m_hat,
                                 std::size_t m0, SolverKind stage_one = SolverKind::Exact,
                                 std::uint64_t node_budget = kDefaultNodeBudget);

enum class SweepParam { ErrSigma, N, M, JobSigma, SpeedSigma };
std::string to_string(SweepParam param);
SweepParam parse_sweep(const std::string& text);

struct ExperimentConfig {
  SyntheticConfig base;
  SweepParam sweep = SweepParam::ErrSigma;
  // Empty with an err_sigma sweep means `default_points` evenly spaced values
  // from 0 to the mean speed, endpoints included.
  std::vector<double> sweep_values;
  std::size_t default_points = 11;
  std::vector<AlgorithmSpec> algorithms;
  std::size_t instances_per_point = 100;
  SolverKind scheduler = SolverKind::Exact;
  OracleKind oracle = OracleKind::Exact;
  std::uint64_t seed = 0;
  std::uint64_t node_budget = kDefaultNodeBudget;
  std::size_t threads = 0;  // 0: hardware concurrency

  std::vector<double> resolved_sweep_values() const;
  SyntheticConfig point_config(double value, std::size_t instance) const;
  void validate() const;

  static ExperimentConfig defaults();  // n=12, m=4, IPR(0.5, 4) + both benchmarks
  static ExperimentConfig from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;
};

// Seed of the k-th instance at every sweep point (common random numbers).
std::uint64_t instance_seed(std::uint64_t seed, std::size_t k);

struct ExperimentRow {
  std::string sweep_param;
  double sweep_value = 0.0;
  std::string algorithm;
  double mean_ratio = 0.0;
  double std_ratio = 0.0;  // sample standard deviation, 0 for one instance
  std::size_t n_instances = 0;
  std::string oracle_kind;
};

std::vector<ExperimentRow> run_experiment(const ExperimentConfig& config);
std::string rows_to_csv(const std::vector<ExperimentRow>& rows);
nlohmann::json rows_to_json(const std::vector<ExperimentRow>& rows);

struct PropertyResult {
  std::string name;
  std::size_t passed = 0;
  std::size_t total = 0;
  std::optional<std::string> counterexample;

  bool ok() const { return total > 0 && passed == total; }
  // Counts one trial; stores the first failing witness.
  void record(bool pass, const std::string& witness);
};

struct MetricsReport {
  std::vector<PropertyResult> properties;

  bool all_passed() const;
  std::string to_text() const;
  nlohmann::json to_json() const;
};

// Randomized instance with n <= max_n, m <= max_m, drawn from the synthetic
// distribution families; predictions carry a random error level.
Instance random_instance(SplitMix64& rng, std::size_t max_n, std::size_t max_m);
// Arbitrary true speeds (unbounded prediction error) for `instance`.
std::vector<double> adversarial_speeds(SplitMix64& rng, const Instance& instance);

// Plain enumeration of all m^k assignments; the reference for exact_schedule.
double enumerate_optimum(std::span<const double> loads, std::span<const double> speeds);

namespace properties {

PropertyResult lpt_beta(std::uint64_t seed, std::size_t trials);
PropertyResult min_bag_bound(std::uint64_t seed, std::size_t trials);
PropertyResult ipr_bmin_monotone(std::uint64_t seed, std::size_t trials);
PropertyResult ipr_iterations(std::uint64_t seed, std::size_t trials);
PropertyResult ipr_beta(std::uint64_t seed, std::size_t trials);
PropertyResult ipr_consistency(std::uint64_t seed, std::size_t trials, double alpha);
PropertyResult ipr_robustness(std::uint64_t seed, std::size_t trials, double alpha);
PropertyResult unit_ipr_rho2(std::uint64_t seed, std::size_t trials);
PropertyResult fluid_ratio(std::uint64_t seed, std::size_t trials);
PropertyResult binary_ratio(std::uint64_t seed, std::size_t trials);
PropertyResult binary_bag_bound(std::uint64_t seed, std::size_t trials);
PropertyResult capacity_certificate(std::uint64_t seed, std::size_t trials);
PropertyResult exact_matches_enumeration(std::uint64_t seed, std::size_t trials);
PropertyResult exact_dominates_lpt(std::uint64_t seed, std::size_t trials);
PropertyResult lower_bound_valid(std::uint64_t seed, std::size_t trials);
PropertyResult merge_invariants(std::uint64_t seed, std::size_t trials);
PropertyResult synthetic_valid(std::uint64_t seed, std::size_t trials);
PropertyResult model_invariants(std::uint64_t seed, std::size_t trials);
PropertyResult prop1_ratio();
PropertyResult tradeoff_robustness();
PropertyResult binary_lower_bound();

}  // namespace properties

MetricsReport verify_properties(std::uint64_t seed, std::size_t trials);

struct TheoryRow {
  double alpha;
  double consistency;               // 1 + alpha
  double robustness_general;        // 2 + 2 / alpha
  double robustness_equal_size;     // 2 + 1 / alpha
  double robustness_infinitesimal;  // 1 + 1 / alpha
};

std::vector<TheoryRow> theory_curves(const std::vector<double>& alphas);
std::string theory_csv(const std::vector<TheoryRow>& rows);

}  // namespace speedsched
