#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "speedsched/model.hpp"

namespace speedsched {

inline constexpr std::uint64_t kDefaultNodeBudget = 200'000'000;

struct SolveResult {
  Schedule schedule;
  double makespan = 0.0;
  bool optimal = false;
  std::uint64_t nodes_explored = 0;
};

enum class SolverKind { Exact, Lpt };

/// Greedy list scheduling on related machines.
///
/// Items are taken by decreasing load (ties: lower item index first). Each
/// item goes to the machine that minimizes the overall makespan after the
/// placement; ties go to the lowest machine index.
SolveResult lpt_schedule(std::span<const double> loads, std::span<const double> speeds);

/// Depth-first branch-and-bound over all item->machine assignments.
///
/// Seeded with the lpt_schedule incumbent. Prunes on the partial makespan,
/// the fractional bound (assigned + remaining) / sum(speeds), and on machines
/// that are interchangeable with an earlier one (same speed, same load).
/// Throws BudgetError once more than `node_budget` nodes were expanded.
SolveResult exact_schedule(std::span<const double> loads, std::span<const double> speeds,
                           std::uint64_t node_budget = kDefaultNodeBudget);

SolveResult solve_schedule(SolverKind kind, std::span<const double> loads,
                           std::span<const double> speeds,
                           std::uint64_t node_budget = kDefaultNodeBudget);

// max{ sum(p) / sum(s), max(p) / max(s) }
double opt_lower_bound(std::span<const double> jobs, std::span<const double> speeds);

// Bag index -> machine for the large singleton bags (single job heavier than
// every non-singleton bag).
using SingletonPlacement = std::map<std::size_t, std::size_t>;

std::vector<std::size_t> large_singleton_bags(const Partition& partition,
                                              std::span<const double> jobs);

// Places the large singletons the way an optimal schedule of just those jobs
// would. Any such placement keeps L_i / s_i <= optimal makespan.
SingletonPlacement default_singleton_placement(const Partition& partition,
                                               std::span<const double> jobs,
                                               std::span<const double> speeds,
                                               std::uint64_t node_budget = kDefaultNodeBudget);

/// Constructive schedule certifying that a partition is max{2, beta}-robust.
///
/// Speeds are rescaled so that sum(p) == sum(s). Large singleton bags follow
/// `placement`; every machine then gets the capacity max{2, beta} * s_i (plus
/// its singleton load L_i when L_i already exceeds that). The remaining bags
/// are placed by decreasing load onto the least-loaded machine that still has
/// room. Throws InvariantError if some bag does not fit.
SolveResult capacity_robust_schedule(const Partition& partition, std::span<const double> jobs,
                                     std::span<const double> speeds,
                                     const SingletonPlacement& placement);
SolveResult capacity_robust_schedule(const Partition& partition, std::span<const double> jobs,
                                     std::span<const double> speeds);

// Repeatedly merges the two smallest non-empty loads until at most
// `available` non-empty loads remain. The merged load takes the lower index.
std::vector<double> merge_to_fit(std::vector<double> loads, std::size_t available);

}  // namespace speedsched
