#include <doctest.h>

#include <cmath>
#include <limits>

#include "speedsched/model.hpp"

using namespace speedsched;

TEST_CASE("bag_load sums job sizes") {
  const std::vector<double> p{2, 3, 5};
  CHECK(bag_load({0, 1}, p) == 5);
  CHECK(bag_load({}, p) == 0);
  CHECK(bag_load({2}, p) == 5);
  CHECK_THROWS_AS(bag_load({3}, p), std::out_of_range);
}

TEST_CASE("makespan of a schedule") {
  const std::vector<double> loads{5, 2};
  CHECK(makespan(Schedule{{0, 1}}, loads, std::vector<double>{2, 1}) == doctest::Approx(2.5));
  CHECK(makespan(Schedule{{0, 0}}, loads, std::vector<double>{1}) == 7);
  // idle machine does not count
  CHECK(makespan(Schedule{{0, 0}}, loads, std::vector<double>{1, 1000}) == 7);
  CHECK(machine_loads(Schedule{{1, 1}}, loads, 3) == std::vector<double>{0, 7, 0});
}

TEST_CASE("makespan over an instance uses true or predicted speeds") {
  Instance inst{{5, 2}, {2, 1}, {1, 1}};
  Partition part{{{0}, {1}}};
  Schedule sched{{0, 1}};
  CHECK(makespan(sched, part, inst, false) == doctest::Approx(2.5));
  CHECK(makespan(sched, part, inst, true) == 5);
}

TEST_CASE("beta_ratio") {
  const std::vector<double> p{5, 2, 2, 3};
  CHECK(beta_ratio(Partition{{{0}, {1, 2}, {3}}}, p) == doctest::Approx(4.0 / 3.0));
  CHECK(beta_ratio(Partition{{{0}, {1}, {3}}}, p) == 0);
  CHECK(beta_ratio(Partition{{{0, 1}, {2}}}, std::vector<double>{1, 1, 1}) == 2);
  CHECK(std::isinf(beta_ratio(Partition{{{0, 1}, {}}}, std::vector<double>{1, 1})));
}

TEST_CASE("prediction_error") {
  CHECK(prediction_error(std::vector<double>{3, 1}, std::vector<double>{3, 1}) == 1);
  CHECK(prediction_error(std::vector<double>{4, 2}, std::vector<double>{2, 2}) == 2);
  CHECK(prediction_error(std::vector<double>{2, 1}, std::vector<double>{1, 2}) == 2);
  // scale free
  CHECK(prediction_error(std::vector<double>{40, 20}, std::vector<double>{2, 2}) == 2);
}

TEST_CASE("validate_partition") {
  CHECK_FALSE(validate_partition(Partition{{{0}, {1, 2}}}, 3, 2));
  auto dup = validate_partition(Partition{{{0}, {0, 1}}}, 2, 2);
  REQUIRE(dup);
  CHECK(dup->find("duplicated") != std::string::npos);
  auto missing = validate_partition(Partition{{{0}, {}}}, 2, 2);
  REQUIRE(missing);
  CHECK(missing->find("uncovered") != std::string::npos);
  CHECK(validate_partition(Partition{{{0, 1}}}, 2, 2));
  CHECK(validate_partition(Partition{{{0}, {5}}}, 2, 2));
}

TEST_CASE("instance validation") {
  Instance ok{{1, 2}, {1, 1}, {2, 1}};
  CHECK_NOTHROW(ok.validate());
  CHECK(ok.n() == 2);
  CHECK(ok.m() == 2);
  CHECK_THROWS_AS((Instance{{1}, {1, 1}, {1}}).validate(), std::domain_error);
  CHECK_THROWS_AS((Instance{{0}, {1}, {1}}).validate(), std::domain_error);
  CHECK_THROWS_AS((Instance{{1}, {-1}, {1}}).validate(), std::domain_error);
  CHECK_THROWS_AS((Instance{{}, {1}, {1}}).validate(), std::domain_error);
  CHECK_THROWS_AS((Instance{{1}, {1}, {std::nan("")}}).validate(), std::domain_error);
}

TEST_CASE("assignment flattening and ownership") {
  Assignment a{{{{0, 1}}, {}, {{2}, {3}}}};
  CHECK(a.bag_count() == 3);
  auto part = a.to_partition();
  REQUIRE(part.bags.size() == 3);
  CHECK(part.bags[2] == Bag{3});
  CHECK(a.bag_owner() == std::vector<std::size_t>{0, 2, 2});
}
