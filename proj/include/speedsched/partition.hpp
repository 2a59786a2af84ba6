#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "speedsched/model.hpp"
#include "speedsched/solvers.hpp"

namespace speedsched {

struct IprConfig {
  double alpha = 0.5;  // consistency slack, in (0, 1)
  double rho = 4.0;    // bag size ratio target, >= 1
  SolverKind initial_solver = SolverKind::Exact;
  std::uint64_t node_budget = kDefaultNodeBudget;

  void validate() const;
};

struct ConsistentPartition {
  // Bags ordered by non-increasing load; bag k pairs with machine_order[k].
  Partition partition;
  // Machine indices sorted by non-increasing predicted speed (stable).
  std::vector<std::size_t> machine_order;
  // max_k p(B_k) / predicted[machine_order[k]]
  double opt_c_bar = 0.0;
};

ConsistentPartition consistent_partition(std::span<const double> jobs,
                                         std::span<const double> predicted_speeds,
                                         SolverKind solver,
                                         std::uint64_t node_budget = kDefaultNodeBudget);

// Classical LPT into k bags: longest job first, into the lightest bag.
Partition lpt_partition(std::span<const double> jobs, std::size_t k);

struct RebalanceStep {
  Assignment assignment;
  std::size_t min_collection = 0;
  std::size_t max_collection = 0;
  double min_load = 0.0;  // p(B_min)
  double total_load = 0.0;  // W: total load of M_max after insertion
  std::size_t bag_count = 0;  // ell = |M_max| after insertion
};

/// One LPT-Rebalance step. Moves the lightest bag into the collection owning
/// the heaviest bag with >= 2 jobs, then re-splits every job of that
/// collection into the same number of bags by LPT. Ties pick the lowest bag /
/// collection index. Throws std::invalid_argument when no bag has >= 2 jobs.
RebalanceStep lpt_rebalance(const Assignment& assignment, std::span<const double> jobs);

enum class IprStop {
  RatioReached,        // loop condition false
  ConsistencyGuard,    // next step would break (1 + alpha) consistency
  FixedPoint,          // rebalance left the assignment unchanged
};

struct IprState {
  Assignment assignment;
  double opt_c_bar = 0.0;
  std::size_t iterations = 0;  // accepted rebalances
  std::size_t attempts = 0;    // loop-body executions, including the rejected one
  std::vector<double> b_min_history;  // min bag load at every loop test
  std::vector<bool> all_nonempty_history;
  double last_total_load = 0.0;
  std::size_t last_bag_count = 0;
  IprStop stop = IprStop::RatioReached;
};

struct IprResult {
  Partition partition;
  // Final tentative assignment mapped back to the caller's machine indices.
  Schedule tentative;
  IprState state;
};

IprResult ipr(std::span<const double> jobs, std::span<const double> predicted_speeds,
              const IprConfig& config);

struct FluidIprResult {
  std::vector<double> loads;  // per bag, collection-major order
  std::size_t iterations = 0;
  std::vector<double> b_min_history;
};

// Divisible-load analogue of ipr(): every bag counts as splittable and a
// rebalance splits the collection's load equally.
FluidIprResult fluid_ipr(double total_load, std::span<const double> predicted_speeds,
                         double alpha, double rho = 2.0);

struct BinarySpeedPartition {
  Partition partition;
  std::vector<Partition> subsets;  // stage-1 subsets split into bags
  std::vector<double> subset_loads;
};

/// Two-stage partition for machines with speed 0 or 1. Stage 1 splits the
/// jobs over m_hat identical machines with `solver` (sorted by decreasing
/// load); stage 2 LPT-splits subset i into ceil(m / m_hat) bags for the first
/// (m mod m_hat) subsets and floor(m / m_hat) for the rest.
BinarySpeedPartition binary_speed_partition(std::span<const double> jobs, std::size_t m,
                                            std::size_t m_hat, SolverKind solver,
                                            std::uint64_t node_budget = kDefaultNodeBudget);

}  // namespace speedsched
