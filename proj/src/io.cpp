#include "speedsched/io.hpp"

#include <cstdint>
#include <fstream>
#include <stdexcept>

namespace speedsched {

using nlohmann::json;

namespace {

template <typename T>
T required(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw std::invalid_argument(std::string("missing field '") + key + "'");
  }
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("field '") + key + "': " + e.what());
  }
}

}  // namespace

json to_json(const Instance& instance) {
  json j = {{"jobs", instance.jobs},
            {"true_speeds", instance.true_speeds},
            {"predicted_speeds", instance.predicted_speeds}};
  if (!instance.name.empty()) j["name"] = instance.name;
  if (instance.seed) j["seed"] = *instance.seed;
  return j;
}

Instance instance_from_json(const json& j) {
  Instance inst;
  inst.jobs = required<std::vector<double>>(j, "jobs");
  inst.true_speeds = required<std::vector<double>>(j, "true_speeds");
  inst.predicted_speeds = required<std::vector<double>>(j, "predicted_speeds");
  if (j.contains("name")) inst.name = required<std::string>(j, "name");
  if (j.contains("seed")) inst.seed = required<std::uint64_t>(j, "seed");
  inst.validate();
  return inst;
}

json to_json(const Partition& partition) { return {{"bags", partition.bags}}; }

Partition partition_from_json(const json& j) {
  Partition p;
  for (const auto& bag : required<std::vector<std::vector<std::int64_t>>>(j, "bags")) {
    Bag& out = p.bags.emplace_back();
    for (auto job : bag) {
      if (job < 0) throw std::invalid_argument("negative job index in 'bags'");
      out.push_back(static_cast<std::size_t>(job));
    }
  }
  return p;
}

json to_json(const Schedule& schedule) { return {{"bag_to_machine", schedule.bag_to_machine}}; }

Schedule schedule_from_json(const json& j) {
  Schedule s;
  for (auto machine : required<std::vector<std::int64_t>>(j, "bag_to_machine")) {
    if (machine < 0) throw std::invalid_argument("negative machine index in 'bag_to_machine'");
    s.bag_to_machine.push_back(static_cast<std::size_t>(machine));
  }
  return s;
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(path.string() + ": " + e.what());
  }
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

void write_json_file(const std::filesystem::path& path, const json& j) {
  write_text_file(path, j.dump(2) + "\n");
}

}  // namespace speedsched
