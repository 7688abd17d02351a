#include "semfoot/simulator.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <ostream>
#include <stdexcept>
#include <string>

namespace semfoot {

const char* to_string(PolicyKind kind) {
  switch (kind) {
    case PolicyKind::Blind: return "blind";
    case PolicyKind::GeometricProxy: return "geo";
    case PolicyKind::Semantic: return "sem";
  }
  return "?";
}

PolicyKind parse_policy_kind(std::string_view text) {
  if (text == "blind") return PolicyKind::Blind;
  if (text == "geo" || text == "geometric_proxy" || text == "geometric") return PolicyKind::GeometricProxy;
  if (text == "sem" || text == "semantic") return PolicyKind::Semantic;
  throw std::invalid_argument("unknown policy '" + std::string(text) + "'");
}

const char* to_string(Termination t) {
  switch (t) {
    case Termination::Running: return "running";
    case Termination::Success: return "success";
    case Termination::Trip: return "trip";
    case Termination::Timeout: return "timeout";
  }
  return "?";
}

void SimConfig::validate() const {
  if (!(dt > 0.0)) throw std::invalid_argument("time step must be positive");
  if (!(max_time > 0.0)) throw std::invalid_argument("max_time must be positive");
  if (!(swing_lag_tau >= 0.0)) throw std::invalid_argument("swing lag must be nonnegative");
  if (!(velocity_noise >= 0.0)) throw std::invalid_argument("velocity noise must be nonnegative");
  params.validate();
  reward.validate();
  map_spec.validate();
}

Pose2D integrate_pose(const Pose2D& pose, Vec2 v, double wz, double duration) {
  const double dyaw = wz * duration;
  Vec2 d_body;
  if (std::abs(dyaw) < 1e-12) {
    d_body = {v.x * duration, v.y * duration};
  } else {
    const double s = std::sin(dyaw) / wz;
    const double c = (1.0 - std::cos(dyaw)) / wz;
    d_body = {s * v.x - c * v.y, c * v.x + s * v.y};
  }
  const Vec2 p = body_to_world(pose, d_body);
  return Pose2D(p.x, p.y, pose.yaw + dyaw);
}

Simulator::Simulator(const World& world, Policy policy, SimConfig config)
    : world_(world), policy_(policy), config_(std::move(config)) {
  config_.validate();
  policy_.search.validate();
}

bool Simulator::needs_map() const {
  return policy_.kind == PolicyKind::GeometricProxy ||
         (policy_.kind == PolicyKind::Semantic && config_.perception_limited);
}

LegPlan Simulator::plan_for(Leg leg, const VelocityCommand& cmd, const Pose2D& touchdown_pose,
                            const DualMap* map) const {
  const auto& params = config_.params;
  const auto& search = policy_.search;
  const double r = search.foot_radius;
  auto ground_truth = [&](Vec2 p) { return collision_indicator(p, touchdown_pose, world_, r); };

  switch (policy_.kind) {
    case PolicyKind::Blind:
      return raibert_leg(params, cmd, leg, search, ground_truth);
    case PolicyKind::GeometricProxy: {
      const MapQuery q{MapQuery::Channel::ElevationAbove, config_.geo_height_threshold};
      return plan_leg(params, cmd, leg, search, [&](Vec2 p) {
        return collision_indicator_from_map(*map, body_to_world(touchdown_pose, p), r, q);
      });
    }
    case PolicyKind::Semantic:
      if (config_.perception_limited) {
        const MapQuery q{MapQuery::Channel::SemanticCost, 0.0};
        return plan_leg(params, cmd, leg, search, [&](Vec2 p) {
          return collision_indicator_from_map(*map, body_to_world(touchdown_pose, p), r, q);
        });
      }
      return plan_leg(params, cmd, leg, search, ground_truth);
  }
  throw std::logic_error("unhandled policy kind");
}

void Simulator::start_swing(RobotState& s, Leg leg, const VelocityCommand& cmd, const DualMap* map) const {
  const std::size_t i = index(leg);
  const double remaining =
      (1.0 - s.gait.swing_progress[i]) * swing_duration(config_.params.frequency, config_.params.duty);
  const Pose2D touchdown = integrate_pose(s.base, {cmd.vx, cmd.vy}, cmd.wz, remaining);
  const LegPlan plan = plan_for(leg, cmd, touchdown, map);
  s.swing_origin[i] = s.feet_world[i].xy();
  s.swing_origin_height[i] = s.feet_world[i].z;
  s.swing_target[i] = body_to_world(touchdown, plan.target);
  s.swing_target_height[i] = world_.surface_at(s.swing_target[i]).height;
  s.swing_lift[i] = 0.0;
  s.planned_free[i] = plan.collision_free;
}

void Simulator::place_swing_foot(RobotState& s, Leg leg, double lift) const {
  const std::size_t i = index(leg);
  const double phi = s.gait.swing_progress[i];
  const Vec2 xy = s.swing_origin[i] + phi * (s.swing_target[i] - s.swing_origin[i]);
  const double baseline = s.swing_origin_height[i] + phi * (s.swing_target_height[i] - s.swing_origin_height[i]);
  s.swing_lift[i] = lift;
  s.feet_world[i] = {xy.x, xy.y, baseline + lift};
}

RobotState Simulator::initial_state(const VelocityCommand& cmd, const Pose2D& start) const {
  RobotState s;
  s.base = start;
  s.base_height = config_.params.base_height;
  s.gait = gait_at(0.0, config_.params);
  for (Leg leg : kAllLegs) {
    const Vec2 p = body_to_world(start, nominal_stance(config_.params, leg));
    s.feet_world[index(leg)] = {p.x, p.y, world_.surface_at(p).height};
  }
  std::optional<DualMap> map;
  if (needs_map()) map = sample_dual_map(world_, s.base, config_.map_spec, config_.map_noise, Execution::Serial);
  for (Leg leg : kAllLegs) {
    const std::size_t i = index(leg);
    if (s.gait.in_contact[i]) continue;
    start_swing(s, leg, cmd, map ? &*map : nullptr);
    const double ref = swing_reference_height(s.gait.swing_progress[i], config_.params.swing_height,
                                              config_.reward.delta_z);
    place_swing_foot(s, leg, ref);
  }
  return s;
}

StepOutcome Simulator::step(const RobotState& state, const VelocityCommand& cmd) const {
  const double dt = config_.dt;
  const auto& params = config_.params;
  StepOutcome out;
  RobotState& s = out.new_state;
  s = state;

  // Base: realised twist is the command plus optional hashed noise.
  Vec2 v{cmd.vx, cmd.vy};
  if (config_.velocity_noise > 0.0) {
    const std::uint64_t h = mix_seed(config_.noise_seed ^ mix_seed(state.step_index));
    v.x += config_.velocity_noise * (2.0 * unit_interval(h) - 1.0);
    v.y += config_.velocity_noise * (2.0 * unit_interval(mix_seed(h)) - 1.0);
  }
  s.base = integrate_pose(state.base, v, cmd.wz, dt);
  s.velocity = v;
  s.wz = cmd.wz;
  s.time = state.time + dt;
  s.step_index = state.step_index + 1;
  s.gait = advance(state.gait, params, dt);

  std::optional<DualMap> map;
  bool trip = false;
  for (Leg leg : kAllLegs) {
    const std::size_t i = index(leg);
    const bool was_contact = state.gait.in_contact[i];
    const bool is_contact = s.gait.in_contact[i];
    if (is_contact) {
      if (!was_contact) {
        const Vec2 t = s.swing_target[i];
        s.feet_world[i] = {t.x, t.y, world_.surface_at(t).height};
        s.swing_lift[i] = 0.0;
        out.touchdown[i] = true;
        out.foot_collisions[i] = world_.any_covering(t, policy_.search.foot_radius);
      }
      continue;
    }
    if (was_contact) {
      if (needs_map() && !map)
        map = sample_dual_map(world_, state.base, config_.map_spec, config_.map_noise, Execution::Serial);
      start_swing(s, leg, cmd, map ? &*map : nullptr);
    }
    const double ref = swing_reference_height(s.gait.swing_progress[i], params.swing_height, config_.reward.delta_z);
    double lift = ref;
    if (config_.swing_lag_tau > 0.0) {
      const double alpha = dt / (config_.swing_lag_tau + dt);
      lift = s.swing_lift[i] + alpha * (ref - s.swing_lift[i]);
    }
    place_swing_foot(s, leg, lift);

    const Vec3& f = s.feet_world[i];
    const Surface ground = world_.surface_at(f.xy());
    if (f.z < ground.height) {
      out.stub_events[i] = true;
      trip = trip || ground.rigid;
    }
  }

  // Rewards for this step.
  {
    const auto& rc = config_.reward;
    const double r_vel = velocity_tracking(v, cmd, s.wz, rc);
    PerLeg<Vec2> feet_xy;
    PerLeg<double> lifts;
    for (std::size_t i = 0; i < kNumLegs; ++i) {
      feet_xy[i] = s.feet_world[i].xy();
      lifts[i] = s.swing_lift[i];
    }
    const double r_sem = semantic_foothold_tracking(feet_xy, s.swing_target, s.gait, rc);
    const double clearance = clearance_penalty(lifts, s.gait, params, rc);
    const double torque_proxy = squared_norm(v - state.velocity) / (dt * dt);
    const double underside = s.base_height - config_.body_depth;
    double base_hits = 0.0;
    const double hl = 0.5 * config_.body_length;
    const double hw = 0.5 * config_.body_width;
    for (Vec2 corner : {Vec2{0, 0}, Vec2{hl, hw}, Vec2{hl, -hw}, Vec2{-hl, hw}, Vec2{-hl, -hw}})
      if (world_.surface_at(body_to_world(s.base, corner)).height > underside) base_hits += 1.0;
    out.reward = total_reward({r_vel, r_sem,
                               {{penalty::kClearance, clearance},
                                {penalty::kTorqueProxy, torque_proxy},
                                {penalty::kBaseCollision, base_hits}}},
                              rc);
  }

  const double length = world_.track().length;
  out.distance = std::clamp(s.base.x, 0.0, length);
  if (trip) {
    out.terminated = Termination::Trip;
  } else if (s.base.x >= length - 1e-9) {
    out.terminated = Termination::Success;
    out.distance = length;
  } else if (s.time >= config_.max_time - 1e-9) {
    out.terminated = Termination::Timeout;
  }
  return out;
}

namespace {

void put(std::ostream& out, double v) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  out.write(buf, res.ptr - buf);
}

void trajectory_header(std::ostream& out) {
  out << "t,x,y,yaw";
  for (Leg leg : kAllLegs) {
    const std::string n = leg_name(leg);
    out << ',' << n << "_x," << n << "_y," << n << "_z";
  }
  for (Leg leg : kAllLegs) out << ",contact_" << leg_name(leg);
  for (Leg leg : kAllLegs) out << ",collision_" << leg_name(leg);
  out << '\n';
}

void trajectory_row(std::ostream& out, const RobotState& s, const PerLeg<bool>& collisions) {
  put(out, s.time);
  for (double v : {s.base.x, s.base.y, s.base.yaw}) {
    out << ',';
    put(out, v);
  }
  for (const auto& f : s.feet_world)
    for (double v : {f.x, f.y, f.z}) {
      out << ',';
      put(out, v);
    }
  for (bool c : s.gait.in_contact) out << ',' << (c ? 1 : 0);
  for (bool c : collisions) out << ',' << (c ? 1 : 0);
  out << '\n';
}

void reward_header(std::ostream& out, const RewardBreakdown& sample) {
  out << "step,r_vel,r_sem";
  for (const auto& [name, v] : sample.penalties) out << ',' << name;
  out << ",total\n";
}

void reward_row(std::ostream& out, std::uint64_t step, const RewardBreakdown& b) {
  out << step << ',';
  put(out, b.r_vel);
  out << ',';
  put(out, b.r_sem);
  for (const auto& [name, v] : b.penalties) {
    out << ',';
    put(out, v);
  }
  out << ',';
  put(out, b.total);
  out << '\n';
}

}  // namespace

TrialResult run_trial(const World& world, const Policy& policy, const VelocityCommand& cmd,
                      const SimConfig& config, TrialLogs logs) {
  const Simulator sim(world, policy, config);
  RobotState state = sim.initial_state(cmd);
  TrialResult result;
  result.seed = world.track().seed;
  result.policy = policy.kind;
  result.density = world.track().density;

  if (logs.trajectory) {
    trajectory_header(*logs.trajectory);
    trajectory_row(*logs.trajectory, state, PerLeg<bool>{});
  }
  bool reward_header_done = false;
  for (;;) {
    StepOutcome o = sim.step(state, cmd);
    for (std::size_t i = 0; i < kNumLegs; ++i) {
      if (o.touchdown[i]) ++result.total_steps;
      if (o.foot_collisions[i]) ++result.colliding_steps;
    }
    if (logs.trajectory) trajectory_row(*logs.trajectory, o.new_state, o.foot_collisions);
    if (logs.rewards) {
      if (!reward_header_done) {
        reward_header(*logs.rewards, o.reward);
        reward_header_done = true;
      }
      reward_row(*logs.rewards, o.new_state.step_index, o.reward);
    }
    state = std::move(o.new_state);
    result.distance = o.distance;
    if (o.terminated != Termination::Running) {
      result.termination = o.terminated;
      break;
    }
  }
  result.success = result.termination == Termination::Success;
  result.time = state.time;
  return result;
}

}  // namespace semfoot
