#pragma once

#include <string>
#include <utility>
#include <vector>

#include "semfoot/foothold.hpp"
#include "semfoot/gait.hpp"
#include "semfoot/geometry.hpp"

namespace semfoot {

/// Names of the built-in penalty terms.
namespace penalty {
inline constexpr const char* kClearance = "clearance";
inline constexpr const char* kTorqueProxy = "torque_proxy";
inline constexpr const char* kBaseCollision = "base_collision";
}  // namespace penalty

struct RewardConfig {
  double w_vel = 1.0;
  double w_sem = 0.5;
  double c_penalty = 0.1;
  double sigma_v = 0.25;
  double sigma_w = 0.25;
  double sigma_foot = 0.0025;
  double delta_z = kSwingSafetyMargin;
  /// Weight per named penalty; each term contributes -weight * cost.
  std::vector<std::pair<std::string, double>> penalty_weights{
      {penalty::kClearance, 10.0}, {penalty::kTorqueProxy, 0.01}, {penalty::kBaseCollision, 1.0}};

  void validate() const;
  double weight(const std::string& name) const;  // 0 when the term is not configured
};

struct RewardBreakdown {
  double r_vel = 0.0;
  double r_sem = 0.0;
  double r_primary = 0.0;
  std::vector<std::pair<std::string, double>> penalties;  // nonpositive contributions
  double r_penalty = 0.0;
  double total = 0.0;
};

/// exp(-|v - v_cmd|^2 / sigma_v) + exp(-(wz - wz_cmd)^2 / sigma_w), in (0, 2].
double velocity_tracking(Vec2 v_xy, const VelocityCommand& cmd, double wz, const RewardConfig& cfg);

/// Gradient of velocity_tracking with respect to v_xy.
Vec2 velocity_tracking_gradient(Vec2 v_xy, const VelocityCommand& cmd, const RewardConfig& cfg);

/// Sum over swinging legs of exp(-|p_foot - p_target|^2 / sigma_foot), in [0, 4].
/// Feet and targets must be expressed in the same frame.
double semantic_foothold_tracking(const PerLeg<Vec2>& foot_pos, const PerLeg<Vec2>& targets,
                                  const GaitState& gait, const RewardConfig& cfg);
double semantic_foothold_tracking(const PerLeg<Vec2>& foot_pos, const FootholdPlan& plan,
                                  const GaitState& gait, const RewardConfig& cfg);

/// Sum over swinging legs of max(0, z_ref(phi) - z_foot)^2. Heights are measured from the swing baseline.
double clearance_penalty(const PerLeg<double>& foot_heights, const GaitState& gait,
                         const BehaviorParams& params, const RewardConfig& cfg);

/// r_primary * exp(c_penalty * r_penalty). Rejects r_penalty > 0.
double compose_total(double r_primary, double r_penalty, double c_penalty);

struct RewardInputs {
  double r_vel = 0.0;
  double r_sem = 0.0;
  /// Nonnegative raw cost per named penalty term.
  std::vector<std::pair<std::string, double>> penalty_costs;
};

/// Weights the penalty costs, aggregates and composes the multiplicative total.
/// Throws std::invalid_argument when the aggregated penalty comes out positive.
RewardBreakdown total_reward(const RewardInputs& inputs, const RewardConfig& cfg);

}  // namespace semfoot
