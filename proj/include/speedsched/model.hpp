#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace speedsched {

// A bag is an indivisible group of jobs, identified by 0-based job indices.
using Bag = std::vector<std::size_t>;

// Thrown when the exact solver runs out of its node budget. Never silently
// degrade to a heuristic answer.
class BudgetError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Thrown when a proven-impossible state is reached (e.g. the capacity schedule
// failing to place a bag).
class InvariantError : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

struct Instance {
  std::vector<double> jobs;              // processing times p_j > 0
  std::vector<double> true_speeds;       // s_i > 0
  std::vector<double> predicted_speeds;  // predictions, >= 0
  std::string name;
  std::optional<std::uint64_t> seed;

  std::size_t n() const { return jobs.size(); }
  std::size_t m() const { return true_speeds.size(); }

  // Throws std::domain_error on the first violated invariant.
  void validate() const;
};

struct Partition {
  std::vector<Bag> bags;

  std::size_t size() const { return bags.size(); }
  bool operator==(const Partition&) const = default;
};

// Collections M_1..M_m of bags, collection i tentatively runs on machine i.
// Global bag ids follow collection-major order.
struct Assignment {
  std::vector<std::vector<Bag>> collections;

  std::size_t bag_count() const;
  Partition to_partition() const;
  // Bag id -> collection index, consistent with to_partition() ordering.
  std::vector<std::size_t> bag_owner() const;
  bool operator==(const Assignment&) const = default;
};

struct Schedule {
  std::vector<std::size_t> bag_to_machine;
};

double bag_load(const Bag& bag, std::span<const double> jobs);
std::vector<double> bag_loads(const Partition& partition, std::span<const double> jobs);

// Per-machine summed loads; bags are summed in bag index order.
std::vector<double> machine_loads(const Schedule& schedule, std::span<const double> item_loads,
                                  std::size_t machine_count);

double makespan(const Schedule& schedule, std::span<const double> item_loads,
                std::span<const double> speeds);
double makespan(const Schedule& schedule, const Partition& partition, const Instance& instance,
                bool use_predicted);

// max load of a bag with >= 2 jobs over min bag load. 0 when every bag is a
// singleton or empty, +inf when the min load is 0 and a non-singleton exists.
double beta_ratio(const Partition& partition, std::span<const double> jobs);

// Rescales predictions so max(predicted) == max(true), then returns the
// largest per-machine ratio max/min. Always >= 1.
double prediction_error(std::span<const double> predicted, std::span<const double> truth);

// Empty optional when the partition is a valid m-bag partition of n jobs.
std::optional<std::string> validate_partition(const Partition& partition, std::size_t n,
                                              std::size_t m);

void require_positive(std::span<const double> values, const char* what);

}  // namespace speedsched
