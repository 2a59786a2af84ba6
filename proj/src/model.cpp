#include "speedsched/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace speedsched {

void require_positive(std::span<const double> values, const char* what) {
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!(values[i] > 0.0) || !std::isfinite(values[i])) {
      throw std::domain_error(std::string(what) + "[" + std::to_string(i) +
                              "] must be a positive finite number");
    }
  }
}

void Instance::validate() const {
  if (true_speeds.size() != predicted_speeds.size()) {
    throw std::domain_error("true_speeds and predicted_speeds differ in length");
  }
  if (true_speeds.empty()) throw std::domain_error("instance has no machines");
  if (jobs.empty()) throw std::domain_error("instance has no jobs");
  require_positive(jobs, "jobs");
  require_positive(true_speeds, "true_speeds");
  for (std::size_t i = 0; i < predicted_speeds.size(); ++i) {
    if (!(predicted_speeds[i] >= 0.0) || !std::isfinite(predicted_speeds[i])) {
      throw std::domain_error("predicted_speeds[" + std::to_string(i) +
                              "] must be a non-negative finite number");
    }
  }
}

std::size_t Assignment::bag_count() const {
  std::size_t count = 0;
  for (const auto& c : collections) count += c.size();
  return count;
}

Partition Assignment::to_partition() const {
  Partition out;
  out.bags.reserve(bag_count());
  for (const auto& c : collections) {
    for (const auto& bag : c) out.bags.push_back(bag);
  }
  return out;
}

std::vector<std::size_t> Assignment::bag_owner() const {
  std::vector<std::size_t> owner;
  owner.reserve(bag_count());
  for (std::size_t i = 0; i < collections.size(); ++i) {
    owner.insert(owner.end(), collections[i].size(), i);
  }
  return owner;
}

double bag_load(const Bag& bag, std::span<const double> jobs) {
  double total = 0.0;
  for (auto j : bag) {
    if (j >= jobs.size()) {
      throw std::out_of_range("job index " + std::to_string(j) + " out of range");
    }
    total += jobs[j];
  }
  return total;
}

std::vector<double> bag_loads(const Partition& partition, std::span<const double> jobs) {
  std::vector<double> loads;
  loads.reserve(partition.size());
  for (const auto& bag : partition.bags) loads.push_back(bag_load(bag, jobs));
  return loads;
}

std::vector<double> machine_loads(const Schedule& schedule, std::span<const double> item_loads,
                                  std::size_t machine_count) {
  if (schedule.bag_to_machine.size() != item_loads.size()) {
    throw std::invalid_argument("schedule does not cover every bag");
  }
  std::vector<double> loads(machine_count, 0.0);
  for (std::size_t b = 0; b < item_loads.size(); ++b) {
    auto machine = schedule.bag_to_machine[b];
    if (machine >= machine_count) {
      throw std::out_of_range("bag " + std::to_string(b) + " mapped to unknown machine");
    }
    loads[machine] += item_loads[b];
  }
  return loads;
}

double makespan(const Schedule& schedule, std::span<const double> item_loads,
                std::span<const double> speeds) {
  require_positive(speeds, "speeds");
  auto loads = machine_loads(schedule, item_loads, speeds.size());
  double worst = 0.0;
  for (std::size_t i = 0; i < loads.size(); ++i) worst = std::max(worst, loads[i] / speeds[i]);
  return worst;
}

double makespan(const Schedule& schedule, const Partition& partition, const Instance& instance,
                bool use_predicted) {
  auto loads = bag_loads(partition, instance.jobs);
  return makespan(schedule, loads,
                  use_predicted ? instance.predicted_speeds : instance.true_speeds);
}

double beta_ratio(const Partition& partition, std::span<const double> jobs) {
  bool has_multi = false;
  double max_multi = 0.0;
  double min_load = std::numeric_limits<double>::infinity();
  for (const auto& bag : partition.bags) {
    double load = bag_load(bag, jobs);
    min_load = std::min(min_load, load);
    if (bag.size() >= 2) {
      has_multi = true;
      max_multi = std::max(max_multi, load);
    }
  }
  if (!has_multi) return 0.0;
  if (min_load == 0.0) return std::numeric_limits<double>::infinity();
  return max_multi / min_load;
}

double prediction_error(std::span<const double> predicted, std::span<const double> truth) {
  if (predicted.size() != truth.size()) {
    throw std::domain_error("speed vectors differ in length");
  }
  if (predicted.empty()) throw std::domain_error("speed vectors are empty");
  require_positive(predicted, "predicted");
  require_positive(truth, "true");
  double scale = *std::max_element(truth.begin(), truth.end()) /
                 *std::max_element(predicted.begin(), predicted.end());
  double eta = 1.0;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    double p = predicted[i] * scale;
    eta = std::max(eta, std::max(p, truth[i]) / std::min(p, truth[i]));
  }
  return eta;
}

std::optional<std::string> validate_partition(const Partition& partition, std::size_t n,
                                              std::size_t m) {
  if (partition.size() != m) {
    return "expected " + std::to_string(m) + " bags, found " + std::to_string(partition.size());
  }
  std::vector<bool> seen(n, false);
  for (std::size_t b = 0; b < partition.size(); ++b) {
    for (auto j : partition.bags[b]) {
      if (j >= n) {
        return "bag " + std::to_string(b) + " references job " + std::to_string(j) +
               " outside [0, " + std::to_string(n) + ")";
      }
      if (seen[j]) return "job " + std::to_string(j) + " duplicated";
      seen[j] = true;
    }
  }
  for (std::size_t j = 0; j < n; ++j) {
    if (!seen[j]) return "job " + std::to_string(j) + " uncovered";
  }
  return std::nullopt;
}

}  // namespace speedsched
