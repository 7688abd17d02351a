#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string_view>

#include "semfoot/foothold.hpp"
#include "semfoot/gait.hpp"
#include "semfoot/gridmap.hpp"
#include "semfoot/reward.hpp"
#include "semfoot/scenario.hpp"

namespace semfoot {

enum class PolicyKind : std::uint8_t { Blind, GeometricProxy, Semantic };

const char* to_string(PolicyKind kind);
/// Accepts blind / geo / geometric_proxy / sem / semantic.
PolicyKind parse_policy_kind(std::string_view text);

/// How swing targets are chosen. Blind uses the Raibert point, the geometric proxy searches against
/// elevation cells above a threshold, the semantic policy searches against obstacle footprints.
struct Policy {
  PolicyKind kind = PolicyKind::Semantic;
  SearchConfig search;
};

enum class Termination : std::uint8_t { Running, Success, Trip, Timeout };
const char* to_string(Termination t);

struct SimConfig {
  double dt = 0.02;          // 50 Hz
  double max_time = 30.0;    // s
  BehaviorParams params;
  RewardConfig reward;
  GridSpec map_spec;
  HeightNoise map_noise;
  double geo_height_threshold = 0.04;  // m, elevation cells above this count as obstacles
  bool perception_limited = false;     // semantic policy queries the sampled semantic map
  double swing_lag_tau = 0.0;          // s, first-order lag of the swing height; 0 tracks exactly
  double velocity_noise = 0.0;         // m/s, zero-mean uniform noise on the realised base velocity
  std::uint64_t noise_seed = 0;
  double body_length = 0.5;            // m, base footprint used by the base-collision penalty
  double body_width = 0.3;
  double body_depth = 0.1;             // m, base underside sits this far below base_height

  void validate() const;
};

struct RobotState {
  Pose2D base;
  double base_height = 0.32;
  PerLeg<Vec3> feet_world{};
  GaitState gait;
  PerLeg<Vec2> swing_origin{};
  PerLeg<double> swing_origin_height{};
  PerLeg<Vec2> swing_target{};
  PerLeg<double> swing_target_height{};
  PerLeg<double> swing_lift{};  // foot height above the swing baseline
  PerLeg<bool> planned_free{true, true, true, true};
  Vec2 velocity{};              // realised body-frame velocity of the last step
  double wz = 0.0;
  double time = 0.0;
  std::uint64_t step_index = 0;
};

struct StepOutcome {
  RobotState new_state;
  PerLeg<bool> touchdown{};
  PerLeg<bool> foot_collisions{};  // touchdown inside a dilated footprint
  PerLeg<bool> stub_events{};      // swing foot below an obstacle top inside its footprint
  Termination terminated = Termination::Running;
  double distance = 0.0;
  RewardBreakdown reward;
};

class Simulator {
 public:
  Simulator(const World& world, Policy policy, SimConfig config);

  /// Feet at their nominal stance corners around `start`; legs already in swing get a plan.
  RobotState initial_state(const VelocityCommand& cmd, const Pose2D& start = {}) const;

  /// One control step. Pure in (state, cmd): noise is hashed from the step index.
  StepOutcome step(const RobotState& state, const VelocityCommand& cmd) const;

  const World& world() const { return world_; }
  const Policy& policy() const { return policy_; }
  const SimConfig& config() const { return config_; }

  /// Body-frame plan for one leg given the pose the robot is expected to have at touchdown.
  LegPlan plan_for(Leg leg, const VelocityCommand& cmd, const Pose2D& touchdown_pose, const DualMap* map) const;

 private:
  void start_swing(RobotState& s, Leg leg, const VelocityCommand& cmd, const DualMap* map) const;
  void place_swing_foot(RobotState& s, Leg leg, double lift) const;
  bool needs_map() const;

  const World& world_;
  Policy policy_;
  SimConfig config_;
};

/// Pose after moving with a body-frame twist for `duration` seconds (exact arc).
Pose2D integrate_pose(const Pose2D& pose, Vec2 v_body, double wz, double duration);

struct TrialResult {
  std::uint64_t seed = 0;
  PolicyKind policy = PolicyKind::Semantic;
  double density = 0.0;
  double distance = 0.0;
  bool success = false;
  std::uint64_t total_steps = 0;      // footsteps (touchdowns)
  std::uint64_t colliding_steps = 0;  // touchdowns inside a dilated footprint
  Termination termination = Termination::Running;
  double time = 0.0;

  friend bool operator==(const TrialResult&, const TrialResult&) = default;
};

/// Optional CSV sinks for run_trial.
struct TrialLogs {
  std::ostream* trajectory = nullptr;  // t, base pose, 4 foot xyz, contact flags, collision flags
  std::ostream* rewards = nullptr;     // step, r_vel, r_sem, penalties, total
};

/// Steps until success, trip or timeout. `config.max_time` bounds the run.
TrialResult run_trial(const World& world, const Policy& policy, const VelocityCommand& cmd,
                      const SimConfig& config, TrialLogs logs = {});

}  // namespace semfoot
