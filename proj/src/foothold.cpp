#include "semfoot/foothold.hpp"

#include <cmath>
#include <stdexcept>

namespace semfoot {

double SearchConfig::collision_weight_bound() const {
  return w_dev * spacing * side * std::numbers::sqrt2;
}

void SearchConfig::validate() const {
  if (side < 1 || side % 2 == 0) throw std::invalid_argument("search grid side must be odd and >= 1");
  if (!(spacing > 0.0)) throw std::invalid_argument("search grid spacing must be positive");
  if (!(w_dev >= 0.0)) throw std::invalid_argument("deviation weight must be nonnegative");
  if (!(foot_radius >= 0.0)) throw std::invalid_argument("foot radius must be nonnegative");
  if (!(w_col > collision_weight_bound()))
    throw std::invalid_argument("collision weight must exceed w_dev * spacing * M * sqrt(2)");
}

Vec2 nominal_stance(const BehaviorParams& params, Leg leg) {
  return {is_front(leg) ? 0.5 * params.stance_length : -0.5 * params.stance_length,
          is_left(leg) ? 0.5 * params.stance_width : -0.5 * params.stance_width};
}

Vec2 raibert_position(const BehaviorParams& params, const VelocityCommand& cmd, Leg leg) {
  const double half_stance = 0.5 * stance_duration(params.frequency, params.duty);
  const Vec2 nom = nominal_stance(params, leg);
  return {nom.x + half_stance * cmd.vx, nom.y + half_stance * cmd.wz * nom.x};
}

bool collision_indicator(Vec2 p_body, const Pose2D& base, const World& world, double foot_radius) {
  return world.any_covering(body_to_world(base, p_body), foot_radius);
}

bool collision_indicator_from_map(const DualMap& map, Vec2 p_world, double foot_radius, const MapQuery& query) {
  const GridSpec& spec = map.spec();
  const Vec2 p = world_to_body(map.center(), p_world);
  const double r = std::max(0.0, foot_radius);
  // Cells whose closed extent meets [p - r, p + r] on each axis.
  const double u0 = (p.x - r - spec.offset.x + 0.5 * spec.span_x) / spec.resolution;
  const double u1 = (p.x + r - spec.offset.x + 0.5 * spec.span_x) / spec.resolution;
  const double v0 = (p.y - r - spec.offset.y + 0.5 * spec.span_y) / spec.resolution;
  const double v1 = (p.y + r - spec.offset.y + 0.5 * spec.span_y) / spec.resolution;
  const int r0 = std::max(0, static_cast<int>(std::ceil(u0)) - 1);
  const int r1 = std::min(spec.rows - 1, static_cast<int>(std::floor(u1)));
  const int c0 = std::max(0, static_cast<int>(std::ceil(v0)) - 1);
  const int c1 = std::min(spec.cols - 1, static_cast<int>(std::floor(v1)));
  for (int row = r0; row <= r1; ++row) {
    for (int col = c0; col <= c1; ++col) {
      const bool flagged = query.channel == MapQuery::Channel::SemanticCost
                               ? map.semantic.cost_at(row, col) > 0.0
                               : map.elevation.at(row, col) > query.height_threshold;
      if (flagged) return true;
    }
  }
  return false;
}

double foothold_cost(Vec2 candidate, Vec2 raibert, bool collision, const SearchConfig& cfg) {
  return cfg.w_dev * norm(candidate - raibert) + (collision ? cfg.w_col : 0.0);
}

LegPlan raibert_leg(const BehaviorParams& params, const VelocityCommand& cmd, Leg leg,
                    const SearchConfig& cfg, const CollisionFn& collides) {
  LegPlan plan;
  plan.nominal = nominal_stance(params, leg);
  plan.raibert = raibert_position(params, cmd, leg);
  plan.target = plan.raibert;
  const bool hit = collides(plan.target);
  plan.cost = foothold_cost(plan.target, plan.raibert, hit, cfg);
  plan.collision_free = !hit;
  return plan;
}

LegPlan plan_leg(const BehaviorParams& params, const VelocityCommand& cmd, Leg leg,
                 const SearchConfig& cfg, const CollisionFn& collides) {
  LegPlan plan;
  plan.nominal = nominal_stance(params, leg);
  plan.raibert = raibert_position(params, cmd, leg);

  const int half = cfg.side / 2;
  double best_cost = 0.0;
  double best_dev = 0.0;
  bool best_hit = true;
  bool have_best = false;
  for (int i = -half; i <= half; ++i) {
    for (int j = -half; j <= half; ++j) {
      const Vec2 cand{plan.raibert.x + i * cfg.spacing, plan.raibert.y + j * cfg.spacing};
      const bool hit = collides(cand);
      const double cost = foothold_cost(cand, plan.raibert, hit, cfg);
      const double dev = norm(cand - plan.raibert);
      // Row-major scan order already gives the index tie-break; only strict improvements win.
      if (!have_best || cost < best_cost || (cost == best_cost && dev < best_dev)) {
        have_best = true;
        best_cost = cost;
        best_dev = dev;
        best_hit = hit;
        plan.target = cand;
      }
    }
  }
  plan.cost = best_cost;
  plan.collision_free = !best_hit;
  return plan;
}

FootholdPlan select_target(const BehaviorParams& params, const VelocityCommand& cmd,
                           const SearchConfig& cfg, const CollisionFn& collides) {
  cfg.validate();
  FootholdPlan plan;
  for (Leg leg : kAllLegs) plan.legs[index(leg)] = plan_leg(params, cmd, leg, cfg, collides);
  return plan;
}

FootholdPlan select_target(const BehaviorParams& params, const VelocityCommand& cmd, const Pose2D& base,
                           const World& world, const SearchConfig& cfg) {
  return select_target(params, cmd, cfg, [&](Vec2 p) {
    return collision_indicator(p, base, world, cfg.foot_radius);
  });
}

}  // namespace semfoot
