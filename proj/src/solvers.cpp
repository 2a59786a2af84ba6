#include "speedsched/solvers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

namespace speedsched {

namespace {

std::vector<std::size_t> decreasing_order(std::span<const double> loads) {
  std::vector<std::size_t> order(loads.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return loads[a] > loads[b]; });
  return order;
}

void require_nonnegative(std::span<const double> loads) {
  for (std::size_t i = 0; i < loads.size(); ++i) {
    if (!(loads[i] >= 0.0) || !std::isfinite(loads[i])) {
      throw std::domain_error("load[" + std::to_string(i) + "] must be non-negative");
    }
  }
}

void require_machines(std::span<const double> speeds) {
  if (speeds.empty()) throw std::domain_error("no machines");
  require_positive(speeds, "speeds");
}

class BranchAndBound {
public:
  BranchAndBound(std::span<const double> loads, std::span<const double> speeds,
                 std::uint64_t budget)
      : loads_(loads), speeds_(speeds), budget_(budget), order_(decreasing_order(loads)),
        machine_load_(speeds.size(), 0.0), current_(loads.size(), 0) {
    suffix_.assign(order_.size() + 1, 0.0);
    for (std::size_t k = order_.size(); k-- > 0;) suffix_[k] = suffix_[k + 1] + loads_[order_[k]];
  }

  SolveResult run() {
    auto incumbent = lpt_schedule(loads_, speeds_);
    best_ = incumbent.makespan;
    best_assignment_ = incumbent.schedule.bag_to_machine;
    search(0, 0.0);

    SolveResult result;
    result.schedule.bag_to_machine = best_assignment_;
    result.makespan = makespan(result.schedule, loads_, speeds_);
    result.optimal = true;
    result.nodes_explored = nodes_;
    return result;
  }

private:
  void search(std::size_t depth, double partial) {
    if (depth == order_.size()) {
      if (partial < best_) {
        best_ = partial;
        best_assignment_ = current_;
      }
      return;
    }
    // Room left on each machine below the incumbent must absorb the rest.
    double room = 0.0;
    for (std::size_t i = 0; i < speeds_.size(); ++i) {
      room += std::max(0.0, best_ * speeds_[i] - machine_load_[i]);
    }
    if (suffix_[depth] >= room && suffix_[depth] > 0.0) return;

    const auto item = order_[depth];
    const double load = loads_[item];
    for (std::size_t i = 0; i < speeds_.size(); ++i) {
      if (interchangeable_with_earlier(i)) continue;
      double finish = (machine_load_[i] + load) / speeds_[i];
      double next = std::max(partial, finish);
      if (next >= best_) continue;
      if (++nodes_ > budget_) {
        throw BudgetError("exact_schedule exceeded node budget of " + std::to_string(budget_));
      }
      machine_load_[i] += load;
      current_[item] = i;
      search(depth + 1, next);
      machine_load_[i] -= load;
    }
  }

  bool interchangeable_with_earlier(std::size_t i) const {
    for (std::size_t j = 0; j < i; ++j) {
      if (speeds_[j] == speeds_[i] && machine_load_[j] == machine_load_[i]) return true;
    }
    return false;
  }

  std::span<const double> loads_;
  std::span<const double> speeds_;
  std::uint64_t budget_;
  std::vector<std::size_t> order_;
  std::vector<double> suffix_;
  std::vector<double> machine_load_;
  std::vector<std::size_t> current_;
  std::vector<std::size_t> best_assignment_;
  double best_ = 0.0;
  std::uint64_t nodes_ = 0;
};

}  // namespace

SolveResult lpt_schedule(std::span<const double> loads, std::span<const double> speeds) {
  require_machines(speeds);
  require_nonnegative(loads);

  std::vector<double> machine_load(speeds.size(), 0.0);
  SolveResult result;
  result.schedule.bag_to_machine.assign(loads.size(), 0);
  double current = 0.0;
  for (auto item : decreasing_order(loads)) {
    std::size_t best_machine = 0;
    double best_value = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < speeds.size(); ++i) {
      double value = std::max(current, (machine_load[i] + loads[item]) / speeds[i]);
      if (value < best_value) {
        best_value = value;
        best_machine = i;
      }
    }
    machine_load[best_machine] += loads[item];
    result.schedule.bag_to_machine[item] = best_machine;
    current = best_value;
  }
  result.makespan = makespan(result.schedule, loads, speeds);
  return result;
}

SolveResult exact_schedule(std::span<const double> loads, std::span<const double> speeds,
                           std::uint64_t node_budget) {
  require_machines(speeds);
  require_nonnegative(loads);
  return BranchAndBound(loads, speeds, node_budget).run();
}

SolveResult solve_schedule(SolverKind kind, std::span<const double> loads,
                           std::span<const double> speeds, std::uint64_t node_budget) {
  return kind == SolverKind::Exact ? exact_schedule(loads, speeds, node_budget)
                                   : lpt_schedule(loads, speeds);
}

double opt_lower_bound(std::span<const double> jobs, std::span<const double> speeds) {
  require_machines(speeds);
  if (jobs.empty()) return 0.0;
  double total_p = std::accumulate(jobs.begin(), jobs.end(), 0.0);
  double total_s = std::accumulate(speeds.begin(), speeds.end(), 0.0);
  double max_p = *std::max_element(jobs.begin(), jobs.end());
  double max_s = *std::max_element(speeds.begin(), speeds.end());
  return std::max(total_p / total_s, max_p / max_s);
}

std::vector<std::size_t> large_singleton_bags(const Partition& partition,
                                              std::span<const double> jobs) {
  double max_multi = 0.0;
  for (const auto& bag : partition.bags) {
    if (bag.size() >= 2) max_multi = std::max(max_multi, bag_load(bag, jobs));
  }
  std::vector<std::size_t> large;
  for (std::size_t b = 0; b < partition.size(); ++b) {
    const auto& bag = partition.bags[b];
    if (bag.size() == 1 && bag_load(bag, jobs) > max_multi) large.push_back(b);
  }
  return large;
}

SingletonPlacement default_singleton_placement(const Partition& partition,
                                               std::span<const double> jobs,
                                               std::span<const double> speeds,
                                               std::uint64_t node_budget) {
  auto large = large_singleton_bags(partition, jobs);
  std::vector<double> large_loads;
  for (auto b : large) large_loads.push_back(bag_load(partition.bags[b], jobs));
  auto solved = exact_schedule(large_loads, speeds, node_budget);
  SingletonPlacement placement;
  for (std::size_t k = 0; k < large.size(); ++k) {
    placement[large[k]] = solved.schedule.bag_to_machine[k];
  }
  return placement;
}

SolveResult capacity_robust_schedule(const Partition& partition, std::span<const double> jobs,
                                     std::span<const double> speeds,
                                     const SingletonPlacement& placement) {
  require_machines(speeds);
  const std::size_t m = speeds.size();
  const auto loads = bag_loads(partition, jobs);

  auto large = large_singleton_bags(partition, jobs);
  if (large.size() != placement.size() ||
      !std::all_of(large.begin(), large.end(),
                   [&](std::size_t b) { return placement.count(b) == 1; })) {
    throw std::invalid_argument("placement must cover exactly the large singleton bags");
  }

  double total_p = std::accumulate(loads.begin(), loads.end(), 0.0);
  double total_s = std::accumulate(speeds.begin(), speeds.end(), 0.0);
  double scale = total_p > 0.0 ? total_p / total_s : 1.0;
  double factor = std::max(2.0, beta_ratio(partition, jobs));

  SolveResult result;
  result.schedule.bag_to_machine.assign(partition.size(), 0);
  std::vector<double> assigned(m, 0.0);
  std::vector<bool> placed(partition.size(), false);
  for (const auto& [bag, machine] : placement) {
    if (machine >= m) throw std::invalid_argument("placement targets unknown machine");
    result.schedule.bag_to_machine[bag] = machine;
    assigned[machine] += loads[bag];
    placed[bag] = true;
  }

  std::vector<double> capacity(m);
  for (std::size_t i = 0; i < m; ++i) {
    double base = factor * speeds[i] * scale;
    capacity[i] = assigned[i] > base ? base + assigned[i] : base;
  }

  std::vector<std::size_t> rest;
  for (auto b : decreasing_order(loads)) {
    if (!placed[b]) rest.push_back(b);
  }
  // Relative slack absorbs rounding from the speed rescaling only.
  constexpr double kSlack = 1e-12;
  for (auto b : rest) {
    std::size_t target = m;
    for (std::size_t i = 0; i < m; ++i) {
      if (assigned[i] + loads[b] > capacity[i] * (1.0 + kSlack)) continue;
      if (target == m || assigned[i] < assigned[target]) target = i;
    }
    if (target == m) {
      throw InvariantError("capacity schedule could not place bag " + std::to_string(b));
    }
    assigned[target] += loads[b];
    result.schedule.bag_to_machine[b] = target;
  }
  result.makespan = makespan(result.schedule, loads, speeds);
  return result;
}

SolveResult capacity_robust_schedule(const Partition& partition, std::span<const double> jobs,
                                     std::span<const double> speeds) {
  return capacity_robust_schedule(partition, jobs, speeds,
                                  default_singleton_placement(partition, jobs, speeds));
}

std::vector<double> merge_to_fit(std::vector<double> loads, std::size_t available) {
  if (available < 1) throw std::domain_error("merge_to_fit needs at least one machine");
  while (true) {
    std::vector<std::size_t> nonempty;
    for (std::size_t i = 0; i < loads.size(); ++i) {
      if (loads[i] > 0.0) nonempty.push_back(i);
    }
    if (nonempty.size() <= available) return loads;
    std::stable_sort(nonempty.begin(), nonempty.end(),
                     [&](std::size_t a, std::size_t b) { return loads[a] < loads[b]; });
    auto lo = std::min(nonempty[0], nonempty[1]);
    auto hi = std::max(nonempty[0], nonempty[1]);
    loads[lo] += loads[hi];
    loads.erase(loads.begin() + static_cast<std::ptrdiff_t>(hi));
  }
}

}  // namespace speedsched
