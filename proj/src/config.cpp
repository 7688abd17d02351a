#include "semfoot/config.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace semfoot {

using nlohmann::json;

namespace {

template <class T>
void read(const json& j, const char* key, T& field) {
  if (j.contains(key)) field = j.at(key).get<T>();
}

void read_params(const json& j, BehaviorParams& p) {
  read(j, "base_height", p.base_height);
  read(j, "swing_height", p.swing_height);
  read(j, "phase_offsets", p.phase_offsets);
  read(j, "frequency", p.frequency);
  read(j, "duty", p.duty);
  read(j, "stance_width", p.stance_width);
  read(j, "stance_length", p.stance_length);
}

json write_params(const BehaviorParams& p) {
  return {{"base_height", p.base_height}, {"swing_height", p.swing_height}, {"phase_offsets", p.phase_offsets},
          {"frequency", p.frequency},     {"duty", p.duty},                 {"stance_width", p.stance_width},
          {"stance_length", p.stance_length}};
}

void read_reward(const json& j, RewardConfig& r) {
  read(j, "w_vel", r.w_vel);
  read(j, "w_sem", r.w_sem);
  read(j, "c_penalty", r.c_penalty);
  read(j, "sigma_v", r.sigma_v);
  read(j, "sigma_w", r.sigma_w);
  read(j, "sigma_foot", r.sigma_foot);
  read(j, "delta_z", r.delta_z);
  if (j.contains("penalty_weights")) {
    r.penalty_weights.clear();
    for (const auto& [name, w] : j.at("penalty_weights").items()) r.penalty_weights.emplace_back(name, w.get<double>());
  }
}

json write_reward(const RewardConfig& r) {
  json weights = json::object();
  for (const auto& [name, w] : r.penalty_weights) weights[name] = w;
  return {{"w_vel", r.w_vel},           {"w_sem", r.w_sem},     {"c_penalty", r.c_penalty},
          {"sigma_v", r.sigma_v},       {"sigma_w", r.sigma_w}, {"sigma_foot", r.sigma_foot},
          {"delta_z", r.delta_z},       {"penalty_weights", weights}};
}

}  // namespace

Settings parse_settings(const std::string& text) {
  Settings s;
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::runtime_error(std::string("settings: ") + e.what());
  }
  try {
    if (root.contains("gait")) read_params(root.at("gait"), s.sim.params);
    if (root.contains("reward")) read_reward(root.at("reward"), s.sim.reward);
    if (root.contains("search")) {
      const auto& j = root.at("search");
      read(j, "side", s.search.side);
      read(j, "spacing", s.search.spacing);
      read(j, "w_dev", s.search.w_dev);
      read(j, "w_col", s.search.w_col);
      read(j, "foot_radius", s.search.foot_radius);
    }
    if (root.contains("sim")) {
      const auto& j = root.at("sim");
      read(j, "dt", s.sim.dt);
      read(j, "max_time", s.sim.max_time);
      read(j, "geo_height_threshold", s.sim.geo_height_threshold);
      read(j, "perception_limited", s.sim.perception_limited);
      read(j, "swing_lag_tau", s.sim.swing_lag_tau);
      read(j, "velocity_noise", s.sim.velocity_noise);
      read(j, "noise_seed", s.sim.noise_seed);
      read(j, "map_noise_amplitude", s.sim.map_noise.amplitude);
      read(j, "map_noise_seed", s.sim.map_noise.seed);
      if (j.contains("map_offset")) {
        auto off = j.at("map_offset").get<std::array<double, 2>>();
        s.sim.map_spec.offset = {off[0], off[1]};
      }
    }
    if (root.contains("obstacles")) {
      const auto& j = root.at("obstacles");
      read(j, "half_extent_min", s.sizes.half_extent_min);
      read(j, "half_extent_max", s.sizes.half_extent_max);
      read(j, "height_min", s.sizes.height_min);
      read(j, "height_max", s.sizes.height_max);
    }
    if (root.contains("classes")) {
      std::vector<SemanticClass> classes;
      for (const auto& c : root.at("classes"))
        classes.push_back({c.at("id").get<int>(), c.at("name").get<std::string>(), c.at("cost").get<double>(),
                           c.value("fragile", false)});
      s.classes = ClassTable(std::move(classes));
    }
    if (root.contains("command_bounds")) {
      const auto& j = root.at("command_bounds");
      read(j, "vx", s.command_bounds.vx);
      read(j, "vy", s.command_bounds.vy);
      read(j, "wz", s.command_bounds.wz);
    }
    if (root.contains("density_schedule")) {
      const auto& j = root.at("density_schedule");
      read(j, "current", s.density_schedule.current);
      read(j, "max", s.density_schedule.max);
      read(j, "step", s.density_schedule.step);
      read(j, "promote_threshold", s.density_schedule.promote_threshold);
    }
  } catch (const json::exception& e) {
    throw std::runtime_error(std::string("settings: ") + e.what());
  }
  s.sim.validate();
  s.search.validate();
  s.density_schedule.validate();
  return s;
}

Settings load_settings(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open settings file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_settings(ss.str());
}

std::string dump_settings(const Settings& s) {
  json classes = json::array();
  for (const auto& c : s.classes.classes())
    classes.push_back({{"id", c.id}, {"name", c.name}, {"cost", c.cost}, {"fragile", c.fragile}});
  json root = {
      {"gait", write_params(s.sim.params)},
      {"reward", write_reward(s.sim.reward)},
      {"search",
       {{"side", s.search.side},
        {"spacing", s.search.spacing},
        {"w_dev", s.search.w_dev},
        {"w_col", s.search.w_col},
        {"foot_radius", s.search.foot_radius}}},
      {"sim",
       {{"dt", s.sim.dt},
        {"max_time", s.sim.max_time},
        {"geo_height_threshold", s.sim.geo_height_threshold},
        {"perception_limited", s.sim.perception_limited},
        {"swing_lag_tau", s.sim.swing_lag_tau},
        {"velocity_noise", s.sim.velocity_noise},
        {"noise_seed", s.sim.noise_seed},
        {"map_noise_amplitude", s.sim.map_noise.amplitude},
        {"map_noise_seed", s.sim.map_noise.seed},
        {"map_offset", {s.sim.map_spec.offset.x, s.sim.map_spec.offset.y}}}},
      {"obstacles",
       {{"half_extent_min", s.sizes.half_extent_min},
        {"half_extent_max", s.sizes.half_extent_max},
        {"height_min", s.sizes.height_min},
        {"height_max", s.sizes.height_max}}},
      {"classes", classes},
      {"command_bounds", {{"vx", s.command_bounds.vx}, {"vy", s.command_bounds.vy}, {"wz", s.command_bounds.wz}}},
      {"density_schedule",
       {{"current", s.density_schedule.current},
        {"max", s.density_schedule.max},
        {"step", s.density_schedule.step},
        {"promote_threshold", s.density_schedule.promote_threshold}}},
  };
  return root.dump(2) + "\n";
}

}  // namespace semfoot
