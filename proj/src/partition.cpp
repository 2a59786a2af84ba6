#include "speedsched/partition.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <string>

namespace speedsched {

namespace {

// LPT over a subset of jobs: longest first (ties: lower job index), each into
// the currently lightest bag (ties: lower bag index). Bag contents are sorted.
std::vector<Bag> lpt_split(std::vector<std::size_t> job_ids, std::span<const double> jobs,
                           std::size_t k) {
  std::sort(job_ids.begin(), job_ids.end());
  std::stable_sort(job_ids.begin(), job_ids.end(),
                   [&](std::size_t a, std::size_t b) { return jobs[a] > jobs[b]; });
  std::vector<Bag> bags(k);
  std::vector<double> load(k, 0.0);
  for (auto j : job_ids) {
    auto target = static_cast<std::size_t>(std::min_element(load.begin(), load.end()) -
                                           load.begin());
    bags[target].push_back(j);
    load[target] += jobs[j];
  }
  for (auto& bag : bags) std::sort(bag.begin(), bag.end());
  return bags;
}

// Collections compared as multisets of bags.
bool same_assignment(const Assignment& a, const Assignment& b) {
  if (a.collections.size() != b.collections.size()) return false;
  for (std::size_t i = 0; i < a.collections.size(); ++i) {
    auto x = a.collections[i];
    auto y = b.collections[i];
    std::sort(x.begin(), x.end());
    std::sort(y.begin(), y.end());
    if (x != y) return false;
  }
  return true;
}

std::size_t iteration_cap(std::size_t m) { return 8 * m * m + 64; }

}  // namespace

void IprConfig::validate() const {
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::domain_error("alpha must lie in (0, 1)");
  if (!(rho >= 1.0)) throw std::domain_error("rho must be >= 1");
}

ConsistentPartition consistent_partition(std::span<const double> jobs,
                                         std::span<const double> predicted_speeds,
                                         SolverKind solver, std::uint64_t node_budget) {
  if (predicted_speeds.empty()) throw std::domain_error("no machines");
  require_positive(jobs, "jobs");
  require_positive(predicted_speeds, "predicted_speeds");
  const std::size_t m = predicted_speeds.size();

  ConsistentPartition out;
  out.machine_order.resize(m);
  std::iota(out.machine_order.begin(), out.machine_order.end(), 0);
  std::stable_sort(out.machine_order.begin(), out.machine_order.end(),
                   [&](std::size_t a, std::size_t b) {
                     return predicted_speeds[a] > predicted_speeds[b];
                   });
  std::vector<double> sorted_speeds(m);
  for (std::size_t k = 0; k < m; ++k) sorted_speeds[k] = predicted_speeds[out.machine_order[k]];

  auto solved = solve_schedule(solver, jobs, sorted_speeds, node_budget);
  std::vector<Bag> bags(m);
  for (std::size_t j = 0; j < jobs.size(); ++j) bags[solved.schedule.bag_to_machine[j]].push_back(j);

  // Heavier bags onto faster machines never increases the makespan.
  std::vector<double> loads(m);
  for (std::size_t k = 0; k < m; ++k) loads[k] = bag_load(bags[k], jobs);
  std::vector<std::size_t> by_load(m);
  std::iota(by_load.begin(), by_load.end(), 0);
  std::stable_sort(by_load.begin(), by_load.end(),
                   [&](std::size_t a, std::size_t b) { return loads[a] > loads[b]; });

  for (std::size_t k = 0; k < m; ++k) {
    out.partition.bags.push_back(bags[by_load[k]]);
    out.opt_c_bar = std::max(out.opt_c_bar, loads[by_load[k]] / sorted_speeds[k]);
  }
  return out;
}

Partition lpt_partition(std::span<const double> jobs, std::size_t k) {
  if (k < 1) throw std::domain_error("lpt_partition needs at least one bag");
  std::vector<std::size_t> ids(jobs.size());
  std::iota(ids.begin(), ids.end(), 0);
  return Partition{lpt_split(std::move(ids), jobs, k)};
}

RebalanceStep lpt_rebalance(const Assignment& assignment, std::span<const double> jobs) {
  const auto partition = assignment.to_partition();
  const auto owner = assignment.bag_owner();
  if (partition.bags.empty()) throw std::invalid_argument("assignment has no bags");

  std::size_t min_bag = 0;
  double min_load = std::numeric_limits<double>::infinity();
  std::size_t max_collection = assignment.collections.size();
  double max_multi = -1.0;
  for (std::size_t b = 0; b < partition.size(); ++b) {
    double load = bag_load(partition.bags[b], jobs);
    if (load < min_load) {
      min_load = load;
      min_bag = b;
    }
    if (partition.bags[b].size() >= 2 && load > max_multi) {
      max_multi = load;
      max_collection = owner[b];
    }
  }
  if (max_collection == assignment.collections.size()) {
    throw std::invalid_argument("lpt_rebalance requires a bag with at least two jobs");
  }

  RebalanceStep step;
  step.assignment = assignment;
  step.min_collection = owner[min_bag];
  step.max_collection = max_collection;
  step.min_load = min_load;

  // Position of B_min inside its collection.
  std::size_t offset = min_bag;
  for (std::size_t i = 0; i < step.min_collection; ++i) offset -= assignment.collections[i].size();

  auto& source = step.assignment.collections[step.min_collection];
  Bag moved = source[offset];
  source.erase(source.begin() + static_cast<std::ptrdiff_t>(offset));
  auto& target = step.assignment.collections[max_collection];
  target.push_back(std::move(moved));

  std::vector<std::size_t> pooled;
  for (const auto& bag : target) pooled.insert(pooled.end(), bag.begin(), bag.end());
  step.bag_count = target.size();
  for (auto j : pooled) step.total_load += jobs[j];
  target = lpt_split(std::move(pooled), jobs, step.bag_count);
  return step;
}

IprResult ipr(std::span<const double> jobs, std::span<const double> predicted_speeds,
              const IprConfig& config) {
  config.validate();
  auto initial =
      consistent_partition(jobs, predicted_speeds, config.initial_solver, config.node_budget);
  const std::size_t m = predicted_speeds.size();
  std::vector<double> speed(m);
  for (std::size_t k = 0; k < m; ++k) speed[k] = predicted_speeds[initial.machine_order[k]];

  IprResult result;
  IprState& state = result.state;
  state.opt_c_bar = initial.opt_c_bar;
  for (auto& bag : initial.partition.bags) state.assignment.collections.push_back({std::move(bag)});

  while (true) {
    double min_load = std::numeric_limits<double>::infinity();
    double max_multi = -1.0;
    bool all_nonempty = true;
    for (const auto& collection : state.assignment.collections) {
      for (const auto& bag : collection) {
        double load = bag_load(bag, jobs);
        min_load = std::min(min_load, load);
        if (bag.empty()) all_nonempty = false;
        if (bag.size() >= 2) max_multi = std::max(max_multi, load);
      }
    }
    state.b_min_history.push_back(min_load);
    state.all_nonempty_history.push_back(all_nonempty);
    if (max_multi < 0.0 || !(max_multi > config.rho * min_load)) {
      state.stop = IprStop::RatioReached;
      break;
    }

    if (++state.attempts > iteration_cap(m)) {
      throw InvariantError("ipr exceeded " + std::to_string(iteration_cap(m)) + " iterations");
    }
    auto step = lpt_rebalance(state.assignment, jobs);
    if (same_assignment(step.assignment, state.assignment)) {
      state.stop = IprStop::FixedPoint;
      break;
    }
    double tentative = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      double load = 0.0;
      for (const auto& bag : step.assignment.collections[i]) load += bag_load(bag, jobs);
      tentative = std::max(tentative, load / speed[i]);
    }
    if (tentative > (1.0 + config.alpha) * state.opt_c_bar) {
      state.stop = IprStop::ConsistencyGuard;
      break;
    }
    state.assignment = std::move(step.assignment);
    state.last_total_load = step.total_load;
    state.last_bag_count = step.bag_count;
    ++state.iterations;
  }

  result.partition = state.assignment.to_partition();
  for (auto k : state.assignment.bag_owner()) {
    result.tentative.bag_to_machine.push_back(initial.machine_order[k]);
  }
  return result;
}

FluidIprResult fluid_ipr(double total_load, std::span<const double> predicted_speeds,
                         double alpha, double rho) {
  if (!(total_load > 0.0)) throw std::domain_error("total load must be positive");
  if (predicted_speeds.empty()) throw std::domain_error("no machines");
  require_positive(predicted_speeds, "predicted_speeds");
  IprConfig{alpha, rho}.validate();

  const std::size_t m = predicted_speeds.size();
  std::vector<double> speed(predicted_speeds.begin(), predicted_speeds.end());
  std::stable_sort(speed.begin(), speed.end(), std::greater<>());
  double speed_sum = std::accumulate(speed.begin(), speed.end(), 0.0);

  std::vector<std::vector<double>> collections(m);
  double opt_c_bar = 0.0;
  for (std::size_t k = 0; k < m; ++k) {
    collections[k].push_back(total_load * speed[k] / speed_sum);
    opt_c_bar = std::max(opt_c_bar, collections[k].front() / speed[k]);
  }

  FluidIprResult out;
  while (true) {
    std::size_t min_c = 0, min_pos = 0, max_c = 0;
    double min_load = std::numeric_limits<double>::infinity();
    double max_load = -1.0;
    for (std::size_t c = 0; c < m; ++c) {
      for (std::size_t p = 0; p < collections[c].size(); ++p) {
        double load = collections[c][p];
        if (load < min_load) {
          min_load = load;
          min_c = c;
          min_pos = p;
        }
        if (load > max_load) {
          max_load = load;
          max_c = c;
        }
      }
    }
    out.b_min_history.push_back(min_load);
    if (!(max_load > rho * min_load)) break;
    if (out.iterations >= iteration_cap(m)) {
      throw InvariantError("fluid_ipr exceeded iteration cap");
    }

    auto next = collections;
    next[min_c].erase(next[min_c].begin() + static_cast<std::ptrdiff_t>(min_pos));
    next[max_c].push_back(min_load);
    double pooled = std::accumulate(next[max_c].begin(), next[max_c].end(), 0.0);
    std::size_t ell = next[max_c].size();
    next[max_c].assign(ell, pooled / static_cast<double>(ell));

    double tentative = 0.0;
    for (std::size_t c = 0; c < m; ++c) {
      double load = std::accumulate(next[c].begin(), next[c].end(), 0.0);
      tentative = std::max(tentative, load / speed[c]);
    }
    if (tentative > (1.0 + alpha) * opt_c_bar) break;
    collections = std::move(next);
    ++out.iterations;
  }
  for (const auto& c : collections) out.loads.insert(out.loads.end(), c.begin(), c.end());
  return out;
}

BinarySpeedPartition binary_speed_partition(std::span<const double> jobs, std::size_t m,
                                            std::size_t m_hat, SolverKind solver,
                                            std::uint64_t node_budget) {
  if (m_hat < 1 || m_hat > m) throw std::domain_error("need 1 <= m_hat <= m");
  require_positive(jobs, "jobs");

  std::vector<double> ones(m_hat, 1.0);
  auto solved = solve_schedule(solver, jobs, ones, node_budget);
  std::vector<std::vector<std::size_t>> subsets(m_hat);
  for (std::size_t j = 0; j < jobs.size(); ++j) subsets[solved.schedule.bag_to_machine[j]].push_back(j);

  std::vector<double> loads(m_hat, 0.0);
  for (std::size_t i = 0; i < m_hat; ++i) {
    for (auto j : subsets[i]) loads[i] += jobs[j];
  }
  std::vector<std::size_t> order(m_hat);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return loads[a] > loads[b]; });

  const std::size_t base = m / m_hat;
  const std::size_t extra = m % m_hat;
  BinarySpeedPartition out;
  for (std::size_t rank = 0; rank < m_hat; ++rank) {
    auto i = order[rank];
    auto bags = lpt_split(subsets[i], jobs, rank < extra ? base + 1 : base);
    out.subset_loads.push_back(loads[i]);
    out.subsets.push_back(Partition{bags});
    for (auto& bag : bags) out.partition.bags.push_back(std::move(bag));
  }
  return out;
}

}  // namespace speedsched
