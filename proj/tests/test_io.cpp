#include <doctest.h>

#include <filesystem>

#include "speedsched/gen.hpp"
#include "speedsched/io.hpp"

using namespace speedsched;
using nlohmann::json;

TEST_CASE("instance json round trip") {
  SyntheticConfig cfg;
  cfg.seed = 9;
  auto inst = gen_synthetic(cfg);
  auto back = instance_from_json(json::parse(to_json(inst).dump()));
  CHECK(back.jobs == inst.jobs);
  CHECK(back.true_speeds == inst.true_speeds);
  CHECK(back.predicted_speeds == inst.predicted_speeds);
  CHECK(back.name == inst.name);
  CHECK(back.seed == inst.seed);
}

TEST_CASE("instance json rejects bad input") {
  CHECK_THROWS_AS(instance_from_json(json::parse(R"({"jobs":[1]})")), std::invalid_argument);
  CHECK_THROWS_AS(instance_from_json(json::parse(R"({"jobs":"x","true_speeds":[1],"predicted_speeds":[1]})")),
                  std::invalid_argument);
  CHECK_THROWS_AS(instance_from_json(json::parse(R"({"jobs":[1],"true_speeds":[1,2],"predicted_speeds":[1]})")),
                  std::domain_error);
}

TEST_CASE("partition and schedule json") {
  Partition p{{{0, 2}, {1}, {}}};
  CHECK(partition_from_json(to_json(p)) == p);
  Schedule s{{2, 0, 1}};
  CHECK(schedule_from_json(to_json(s)).bag_to_machine == s.bag_to_machine);
  CHECK_THROWS_AS(partition_from_json(json::parse(R"({"bags":[[-1]]})")), std::invalid_argument);
}

TEST_CASE("json files") {
  auto path = std::filesystem::temp_directory_path() / "speedsched_io_test.json";
  write_json_file(path, to_json(Partition{{{0}, {1}}}));
  CHECK(partition_from_json(read_json_file(path)).bags.size() == 2);
  write_text_file(path, "{not json");
  CHECK_THROWS_AS(read_json_file(path), std::invalid_argument);
  std::filesystem::remove(path);
  CHECK_THROWS_AS(read_json_file(path), std::invalid_argument);
}
