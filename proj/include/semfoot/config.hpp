#pragma once

#include <string>

#include "semfoot/curriculum.hpp"
#include "semfoot/foothold.hpp"
#include "semfoot/scenario.hpp"
#include "semfoot/simulator.hpp"

namespace semfoot {

/// Every tunable in one place; loadable from a JSON file whose keys mirror the field names.
/// Missing keys keep their defaults.
struct Settings {
  SimConfig sim;  // includes behaviour params and reward weights
  SearchConfig search;
  ObstacleSizeRange sizes;
  ClassTable classes;
  CommandBounds command_bounds;
  DensitySchedule density_schedule;
};

Settings load_settings(const std::string& path);
Settings parse_settings(const std::string& json_text);
std::string dump_settings(const Settings& settings);

}  // namespace semfoot
