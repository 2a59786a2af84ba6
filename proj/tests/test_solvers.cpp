#include <doctest.h>

#include <cmath>
#include <numeric>

#include "oracles.hpp"
#include "speedsched/solvers.hpp"

using namespace speedsched;
using V = std::vector<double>;

TEST_CASE("lpt_schedule hand traces") {
  auto r = lpt_schedule(V{4, 3, 2}, V{2, 1});
  CHECK(r.schedule.bag_to_machine == std::vector<std::size_t>{0, 1, 0});
  CHECK(machine_loads(r.schedule, V{4, 3, 2}, 2) == V{6, 3});
  CHECK(r.makespan == 3);

  auto single = lpt_schedule(V{1, 2, 3}, V{2});
  CHECK(single.makespan == 3);

  auto two = lpt_schedule(V{1, 1}, V{1, 1});
  CHECK(two.schedule.bag_to_machine == std::vector<std::size_t>{0, 1});
  CHECK(two.makespan == 1);
}

TEST_CASE("exact_schedule small optima") {
  CHECK(exact_schedule(V{3, 2, 2}, V{2, 1}).makespan == doctest::Approx(2.5));
  CHECK(exact_schedule(V{1}, V{1, 1}).makespan == 1);
  CHECK(exact_schedule(V{1, 1, 1, 1}, V{1, 1}).makespan == 2);
  auto r = exact_schedule(V{3, 2, 2}, V{2, 1});
  CHECK(r.optimal);
  CHECK(makespan(r.schedule, V{3, 2, 2}, V{2, 1}) == r.makespan);
}

TEST_CASE("exact_schedule handles empty and zero items") {
  CHECK(exact_schedule(V{}, V{1, 2}).makespan == 0);
  CHECK(exact_schedule(V{0, 0, 4}, V{1, 2}).makespan == 2);
}

TEST_CASE("exact_schedule agrees with brute force") {
  auto rng = SplitMix64::stream(2024, 1);
  for (int t = 0; t < 150; ++t) {
    std::size_t k = 1 + rng.next() % 7;
    std::size_t m = 1 + rng.next() % 3;
    auto loads = oracle::random_vector(rng, k, 0.5, 20);
    if (t % 3 == 0) {
      for (auto& x : loads) x = std::round(x / 4);
    }
    auto speeds = oracle::random_vector(rng, m, 0.5, 4);
    if (t % 4 == 0) std::fill(speeds.begin(), speeds.end(), 1.0);
    CAPTURE(t);
    CHECK(exact_schedule(loads, speeds).makespan ==
          doctest::Approx(oracle::brute_makespan(loads, speeds)).epsilon(1e-12));
    CHECK(exact_schedule(loads, speeds).makespan <= lpt_schedule(loads, speeds).makespan);
  }
}

TEST_CASE("exact_schedule budget") {
  V loads(30);
  std::iota(loads.begin(), loads.end(), 17.0);
  for (auto& x : loads) x = std::fmod(x * 7919.0, 101.0) + 0.37;
  CHECK_THROWS_AS(exact_schedule(loads, V{1, 1.1, 1.3, 1.7, 2.3}, 50), BudgetError);
}

TEST_CASE("opt_lower_bound") {
  CHECK(opt_lower_bound(V{3, 2, 2}, V{2, 1}) == doctest::Approx(7.0 / 3.0));
  CHECK(opt_lower_bound(V{1}, V{1}) == 1);
  CHECK(opt_lower_bound(V(9, 1.0), V{1, 1}) == 4.5);
  CHECK(opt_lower_bound(V(9, 1.0), V{1, 1}) <= exact_schedule(V(9, 1.0), V{1, 1}).makespan);
}

TEST_CASE("capacity_robust_schedule hand traces") {
  V p{2, 2, 2, 1, 2, 1};
  Partition part{{{0, 1}, {2, 3}, {4, 5}}};
  auto r = capacity_robust_schedule(part, p, V{4, 3, 3});
  CHECK(r.makespan == doctest::Approx(1.0));
  auto counts = machine_loads(r.schedule, V{1, 1, 1}, 3);
  CHECK(counts == V{1, 1, 1});

  auto one = capacity_robust_schedule(Partition{{{0, 1}}}, V{1, 1}, V{3});
  CHECK(one.makespan == doctest::Approx(2.0 / 3.0));

  auto r2 = capacity_robust_schedule(Partition{{{0}, {1}, {2}}}, V{2, 1, 1}, V{2, 1, 1});
  CHECK(r2.makespan == doctest::Approx(1.0));
}

TEST_CASE("capacity_robust_schedule with large singletons") {
  V p{10, 1, 1};
  Partition part{{{0}, {1, 2}}};
  CHECK(large_singleton_bags(part, p) == std::vector<std::size_t>{0});
  auto r = capacity_robust_schedule(part, p, V{1, 5});
  double opt = exact_schedule(p, V{1, 5}).makespan;
  CHECK(r.makespan <= 2.0 * opt + 1e-12);

  CHECK_THROWS_AS(capacity_robust_schedule(part, p, V{1, 5}, SingletonPlacement{}),
                  std::invalid_argument);
  CHECK_THROWS_AS(capacity_robust_schedule(part, p, V{1, 5}, SingletonPlacement{{0, 7}}),
                  std::invalid_argument);
}

TEST_CASE("capacity bound against brute force on random partitions") {
  auto rng = SplitMix64::stream(99, 2);
  for (int t = 0; t < 100; ++t) {
    std::size_t n = 1 + rng.next() % 7, m = 1 + rng.next() % 3;
    auto p = oracle::random_vector(rng, n, 0.1, 10);
    auto s = oracle::random_vector(rng, m, 0.05, 5);
    Partition part;
    part.bags.resize(m);
    for (std::size_t j = 0; j < n; ++j) part.bags[rng.next() % m].push_back(j);
    double beta = beta_ratio(part, p);
    auto r = capacity_robust_schedule(part, p, s);
    CAPTURE(t);
    CHECK(r.makespan <= std::max(2.0, beta) * oracle::brute_makespan(p, s) * (1 + 1e-9));
  }
}

TEST_CASE("merge_to_fit") {
  CHECK(merge_to_fit(V{4, 3, 2, 1}, 2) == V{4, 6});
  CHECK(merge_to_fit(V{4, 3}, 2) == V{4, 3});
  CHECK(merge_to_fit(V{1, 1, 1}, 1) == V{3});
  CHECK_THROWS_AS(merge_to_fit(V{1}, 0), std::domain_error);
}

TEST_CASE("solve_schedule dispatch") {
  CHECK(solve_schedule(SolverKind::Lpt, V{4, 3, 2}, V{2, 1}).makespan == 3);
  CHECK(solve_schedule(SolverKind::Exact, V{3, 2, 2}, V{2, 1}).makespan == doctest::Approx(2.5));
}
