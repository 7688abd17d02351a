#include "semfoot/reward.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace semfoot {

void RewardConfig::validate() const {
  if (!(sigma_v > 0.0) || !(sigma_w > 0.0) || !(sigma_foot > 0.0))
    throw std::invalid_argument("reward sigmas must be positive");
  if (!(c_penalty > 0.0)) throw std::invalid_argument("c_penalty must be positive");
  if (!(delta_z >= 0.0)) throw std::invalid_argument("delta_z must be nonnegative");
}

double RewardConfig::weight(const std::string& name) const {
  auto it = std::find_if(penalty_weights.begin(), penalty_weights.end(),
                         [&](const auto& kv) { return kv.first == name; });
  return it == penalty_weights.end() ? 0.0 : it->second;
}

double velocity_tracking(Vec2 v_xy, const VelocityCommand& cmd, double wz, const RewardConfig& cfg) {
  const double lin = squared_norm(v_xy - Vec2{cmd.vx, cmd.vy});
  const double ang = (wz - cmd.wz) * (wz - cmd.wz);
  return std::exp(-lin / cfg.sigma_v) + std::exp(-ang / cfg.sigma_w);
}

Vec2 velocity_tracking_gradient(Vec2 v_xy, const VelocityCommand& cmd, const RewardConfig& cfg) {
  const Vec2 e = v_xy - Vec2{cmd.vx, cmd.vy};
  const double k = -2.0 / cfg.sigma_v * std::exp(-squared_norm(e) / cfg.sigma_v);
  return k * e;
}

double semantic_foothold_tracking(const PerLeg<Vec2>& foot_pos, const PerLeg<Vec2>& targets,
                                  const GaitState& gait, const RewardConfig& cfg) {
  double r = 0.0;
  for (std::size_t i = 0; i < kNumLegs; ++i)
    if (!gait.in_contact[i]) r += std::exp(-squared_norm(foot_pos[i] - targets[i]) / cfg.sigma_foot);
  return r;
}

double semantic_foothold_tracking(const PerLeg<Vec2>& foot_pos, const FootholdPlan& plan,
                                  const GaitState& gait, const RewardConfig& cfg) {
  PerLeg<Vec2> targets;
  for (std::size_t i = 0; i < kNumLegs; ++i) targets[i] = plan.legs[i].target;
  return semantic_foothold_tracking(foot_pos, targets, gait, cfg);
}

double clearance_penalty(const PerLeg<double>& foot_heights, const GaitState& gait,
                         const BehaviorParams& params, const RewardConfig& cfg) {
  double c = 0.0;
  for (std::size_t i = 0; i < kNumLegs; ++i) {
    if (gait.in_contact[i]) continue;
    const double ref = swing_reference_height(gait.swing_progress[i], params.swing_height, cfg.delta_z);
    const double gap = std::max(0.0, ref - foot_heights[i]);
    c += gap * gap;
  }
  return c;
}

double compose_total(double r_primary, double r_penalty, double c_penalty) {
  if (r_penalty > 0.0) throw std::invalid_argument("aggregated penalty must be nonpositive");
  return r_primary * std::exp(c_penalty * r_penalty);
}

RewardBreakdown total_reward(const RewardInputs& in, const RewardConfig& cfg) {
  RewardBreakdown b;
  b.r_vel = in.r_vel;
  b.r_sem = in.r_sem;
  b.r_primary = cfg.w_vel * in.r_vel + cfg.w_sem * in.r_sem;
  for (const auto& [name, cost] : in.penalty_costs) {
    const double contribution = -cfg.weight(name) * cost;
    b.penalties.emplace_back(name, contribution);
    b.r_penalty += contribution;
  }
  b.total = compose_total(b.r_primary, b.r_penalty, cfg.c_penalty);
  return b;
}

}  // namespace semfoot
