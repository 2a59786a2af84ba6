#pragma once

#include <filesystem>
#include <string>

#include <nlohmann/json.hpp>

#include "speedsched/model.hpp"

namespace speedsched {

// Instance: {"jobs": [..], "true_speeds": [..], "predicted_speeds": [..],
//            "name": "..."?, "seed": u64?}
nlohmann::json to_json(const Instance& instance);
Instance instance_from_json(const nlohmann::json& j);

// Partition: {"bags": [[0-based job indices], ...]}
nlohmann::json to_json(const Partition& partition);
Partition partition_from_json(const nlohmann::json& j);

// Schedule: {"bag_to_machine": [..]} plus optional extras.
nlohmann::json to_json(const Schedule& schedule);
Schedule schedule_from_json(const nlohmann::json& j);

nlohmann::json read_json_file(const std::filesystem::path& path);
void write_json_file(const std::filesystem::path& path, const nlohmann::json& j);
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace speedsched
