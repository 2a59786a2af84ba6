#include <doctest.h>

#include <algorithm>

#include "oracles.hpp"
#include "speedsched/partition.hpp"

using namespace speedsched;
using V = std::vector<double>;

namespace {

std::vector<std::size_t> sizes(const Partition& p) {
  std::vector<std::size_t> out;
  for (const auto& b : p.bags) out.push_back(b.size());
  return out;
}

Bag iota_bag(std::size_t from, std::size_t count) {
  Bag b(count);
  for (std::size_t i = 0; i < count; ++i) b[i] = from + i;
  return b;
}

}  // namespace

TEST_CASE("consistent_partition") {
  auto c = consistent_partition(V(9, 1.0), V{8, 1}, SolverKind::Exact);
  CHECK(sizes(c.partition) == std::vector<std::size_t>{8, 1});
  CHECK(c.opt_c_bar == 1);
  CHECK(c.machine_order == std::vector<std::size_t>{0, 1});

  auto d = consistent_partition(V{3, 2, 2}, V{2, 1}, SolverKind::Exact);
  CHECK(bag_loads(d.partition, V{3, 2, 2}) == V{5, 2});
  CHECK(d.opt_c_bar == doctest::Approx(2.5));

  auto single = consistent_partition(V{1, 2, 3}, V{4}, SolverKind::Exact);
  REQUIRE(single.partition.size() == 1);
  CHECK(single.partition.bags[0].size() == 3);

  // machine order follows decreasing predicted speed
  auto e = consistent_partition(V(9, 1.0), V{1, 8}, SolverKind::Exact);
  CHECK(e.machine_order == std::vector<std::size_t>{1, 0});
  CHECK(sizes(e.partition) == std::vector<std::size_t>{8, 1});
}

TEST_CASE("consistent_partition is optimal for the predicted speeds") {
  auto rng = SplitMix64::stream(5, 3);
  for (int t = 0; t < 80; ++t) {
    std::size_t n = 1 + rng.next() % 7, m = 1 + rng.next() % 3;
    auto p = oracle::random_vector(rng, n, 0.5, 10);
    auto s = oracle::random_vector(rng, m, 0.5, 5);
    auto c = consistent_partition(p, s, SolverKind::Exact);
    CAPTURE(t);
    CHECK(c.opt_c_bar == doctest::Approx(oracle::brute_makespan(p, s)).epsilon(1e-12));
    CHECK_FALSE(validate_partition(c.partition, n, m));
  }
}

TEST_CASE("lpt_partition") {
  CHECK(bag_loads(lpt_partition(V{5, 4, 3, 3, 3}, 2), V{5, 4, 3, 3, 3}) == V{8, 10});
  CHECK(bag_loads(lpt_partition(V(5, 1.0), 2), V(5, 1.0)) == V{3, 2});
  auto wide = lpt_partition(V{2, 1}, 4);
  CHECK(sizes(wide) == std::vector<std::size_t>{1, 1, 0, 0});
}

TEST_CASE("lpt_rebalance moves the lightest bag and re-splits") {
  Assignment a{{{iota_bag(0, 8)}, {iota_bag(8, 1)}}};
  auto step = lpt_rebalance(a, V(9, 1.0));
  REQUIRE(step.assignment.collections[0].size() == 2);
  CHECK(step.assignment.collections[0][0].size() == 5);
  CHECK(step.assignment.collections[0][1].size() == 4);
  CHECK(step.assignment.collections[1].empty());
  CHECK(step.min_collection == 1);
  CHECK(step.max_collection == 0);
  CHECK(step.total_load == 9);
  CHECK(step.bag_count == 2);

  V p{6, 3, 3, 1};
  Assignment b{{{{0}}, {{1, 2}}, {{3}}}};
  auto s2 = lpt_rebalance(b, p);
  CHECK(s2.max_collection == 1);
  CHECK(s2.min_load == 1);
  REQUIRE(s2.assignment.collections[1].size() == 2);
  V loads;
  for (const auto& bag : s2.assignment.collections[1]) loads.push_back(bag_load(bag, p));
  std::sort(loads.begin(), loads.end());
  CHECK(loads == V{3, 4});
  CHECK(s2.assignment.collections[0].size() == 1);
  CHECK(s2.assignment.collections[2].empty());
}

TEST_CASE("lpt_rebalance inside one collection") {
  V p{4, 1, 1, 1};
  Assignment a{{{{0}, {1, 2, 3}}}};
  auto step = lpt_rebalance(a, p);
  CHECK(step.min_collection == 0);
  CHECK(step.max_collection == 0);
  CHECK(step.bag_count == 2);
  CHECK(step.total_load == 7);

  CHECK_THROWS_AS(lpt_rebalance(Assignment{{{{0}}, {{1}}}}, V{1, 1}), std::invalid_argument);
}

TEST_CASE("ipr hand traces") {
  IprConfig cfg{0.5, 4.0, SolverKind::Exact};
  auto r = ipr(V(9, 1.0), V{8, 1}, cfg);
  auto loads = bag_loads(r.partition, V(9, 1.0));
  std::sort(loads.rbegin(), loads.rend());
  CHECK(loads == V{5, 4});
  CHECK(r.state.iterations == 1);

  auto r2 = ipr(V(4, 1.0), V{3, 1}, cfg);
  CHECK(bag_loads(r2.partition, V(4, 1.0)) == V{3, 1});
  CHECK(r2.state.iterations == 0);
  CHECK(r2.state.stop == IprStop::RatioReached);

  auto r3 = ipr(V(10, 1.0), V{9, 1}, cfg);
  CHECK(bag_loads(r3.partition, V(10, 1.0)) == V{5, 5});
}

TEST_CASE("ipr consistency guard stops the loop") {
  // Guard: moving the unit bag onto the fast machine costs 11/10 > 1.05.
  IprConfig cfg{0.05, 1.0, SolverKind::Exact};
  auto r = ipr(V(11, 1.0), V{10, 1}, cfg);
  CHECK(r.state.stop == IprStop::ConsistencyGuard);
  CHECK(bag_loads(r.partition, V(11, 1.0)) == V{10, 1});
}

TEST_CASE("ipr tentative schedule maps to caller machine indices") {
  IprConfig cfg{0.5, 4.0, SolverKind::Exact};
  auto r = ipr(V{5, 1, 1}, V{1, 10}, cfg);
  double span = makespan(r.tentative, bag_loads(r.partition, V{5, 1, 1}), V{1, 10});
  CHECK(span <= 1.5 * r.state.opt_c_bar + 1e-12);
}

TEST_CASE("ipr config validation") {
  CHECK_THROWS_AS((IprConfig{0.0, 4.0}).validate(), std::domain_error);
  CHECK_THROWS_AS((IprConfig{1.0, 4.0}).validate(), std::domain_error);
  CHECK_THROWS_AS((IprConfig{0.5, 0.5}).validate(), std::domain_error);
  CHECK_NOTHROW((IprConfig{0.5, 1.0}).validate());
}

TEST_CASE("fluid_ipr") {
  auto a = fluid_ipr(9, V{8, 1}, 0.5);
  std::sort(a.loads.begin(), a.loads.end());
  CHECK(a.loads == V{4.5, 4.5});
  CHECK(a.iterations == 1);

  auto b = fluid_ipr(12, V{3, 3, 3, 3}, 0.5);
  CHECK(b.iterations == 0);
  CHECK(b.loads == V{3, 3, 3, 3});

  auto c = fluid_ipr(3, V{2, 1}, 0.5);
  CHECK(c.loads == V{2, 1});
}

TEST_CASE("binary_speed_partition") {
  auto a = binary_speed_partition(V{4, 3, 2, 1}, 4, 2, SolverKind::Exact);
  CHECK(a.subset_loads == V{5, 5});
  CHECK(bag_loads(a.partition, V{4, 3, 2, 1}) == V{4, 1, 3, 2});

  auto same = binary_speed_partition(V{4, 3, 2, 1}, 2, 2, SolverKind::Exact);
  CHECK(same.partition.size() == 2);
  CHECK(same.subset_loads == V{5, 5});

  auto b = binary_speed_partition(V(6, 1.0), 5, 2, SolverKind::Exact);
  CHECK(bag_loads(b.partition, V(6, 1.0)) == V{1, 1, 1, 2, 1});

  CHECK_THROWS_AS(binary_speed_partition(V{1}, 2, 0, SolverKind::Exact), std::domain_error);
  CHECK_THROWS_AS(binary_speed_partition(V{1}, 2, 3, SolverKind::Exact), std::domain_error);
}

TEST_CASE("partition outputs cover every job once") {
  auto rng = SplitMix64::stream(8, 4);
  for (int t = 0; t < 100; ++t) {
    std::size_t n = 1 + rng.next() % 10, m = 1 + rng.next() % 4;
    auto p = oracle::random_vector(rng, n, 0.1, 100);
    auto s = oracle::random_vector(rng, m, 0.1, 40);
    CAPTURE(t);
    CHECK_FALSE(validate_partition(lpt_partition(p, m), n, m));
    auto r = ipr(p, s, IprConfig{0.5, 4.0, SolverKind::Exact});
    CHECK_FALSE(validate_partition(r.partition, n, m));
    CHECK(beta_ratio(lpt_partition(p, m), p) <= 2.0 + 1e-12);
    CHECK(r.state.attempts <= m * m);
  }
}
