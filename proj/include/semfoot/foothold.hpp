#pragma once

#include <functional>

#include "semfoot/gait.hpp"
#include "semfoot/geometry.hpp"
#include "semfoot/gridmap.hpp"
#include "semfoot/scenario.hpp"

namespace semfoot {

struct VelocityCommand {
  double vx = 0.0;  // m/s
  double vy = 0.0;  // m/s
  double wz = 0.0;  // rad/s

  friend bool operator==(const VelocityCommand&, const VelocityCommand&) = default;
};

struct CommandBounds {
  double vx = 1.0;
  double vy = 0.5;
  double wz = 1.0;

  bool contains(const VelocityCommand& c) const {
    return std::abs(c.vx) <= vx && std::abs(c.vy) <= vy && std::abs(c.wz) <= wz;
  }
};

/// Localised candidate grid around the Raibert point, and the cost weights.
struct SearchConfig {
  int side = 7;              // M, odd
  double spacing = 0.025;    // m between candidates
  double w_dev = 1.0;
  double w_col = 10.0;
  double foot_radius = 0.02; // m, obstacle footprints are dilated by this

  /// Smallest w_col for which a free candidate always beats a colliding one:
  /// w_dev * spacing * M * sqrt(2) (strictly above the largest possible deviation cost).
  double collision_weight_bound() const;
  /// Throws std::invalid_argument on an even/nonpositive side, nonpositive spacing or w_col at/below the bound.
  void validate() const;
};

struct LegPlan {
  Vec2 nominal;
  Vec2 raibert;
  Vec2 target;
  double cost = 0.0;
  bool collision_free = true;
};

struct FootholdPlan {
  PerLeg<LegPlan> legs{};
};

/// Stance corner from width and length: front +l/2, rear -l/2, left +w/2, right -w/2.
Vec2 nominal_stance(const BehaviorParams& params, Leg leg);

/// Nominal stance shifted by the linear (x) and yaw-rate (y) Raibert offsets.
Vec2 raibert_position(const BehaviorParams& params, const VelocityCommand& cmd, Leg leg);

/// 1 when the world image of `p_body` lies in any obstacle footprint dilated by `foot_radius`
/// (boundary included). Virtual and rigid obstacles are treated alike.
bool collision_indicator(Vec2 p_body, const Pose2D& base, const World& world, double foot_radius);

/// Which map channel a map-based collision query reads.
struct MapQuery {
  enum class Channel { SemanticCost, ElevationAbove } channel = Channel::SemanticCost;
  double height_threshold = 0.04;  // used by ElevationAbove
};

/// Collision query through a sampled map: true when any cell overlapping the square of half-size
/// `foot_radius` around `p_world` is flagged by `query`. Cells outside the window read as free.
bool collision_indicator_from_map(const DualMap& map, Vec2 p_world, double foot_radius, const MapQuery& query);

/// J = w_dev * |candidate - raibert| + w_col * collision.
double foothold_cost(Vec2 candidate, Vec2 raibert, bool collision, const SearchConfig& cfg);

/// Body-frame point -> collides?
using CollisionFn = std::function<bool(Vec2 p_body)>;

/// Searches the M x M grid around the Raibert point of one leg. Ties on cost go to the smaller
/// deviation, then the smaller row-major index (rows along body x).
LegPlan plan_leg(const BehaviorParams& params, const VelocityCommand& cmd, Leg leg,
                 const SearchConfig& cfg, const CollisionFn& collides);

/// Raibert point only, no search (blind baseline); cost and flag still reported.
LegPlan raibert_leg(const BehaviorParams& params, const VelocityCommand& cmd, Leg leg,
                    const SearchConfig& cfg, const CollisionFn& collides);

FootholdPlan select_target(const BehaviorParams& params, const VelocityCommand& cmd,
                           const SearchConfig& cfg, const CollisionFn& collides);

/// Ground-truth variant: collisions are tested against `world` with `base` as the body pose.
FootholdPlan select_target(const BehaviorParams& params, const VelocityCommand& cmd, const Pose2D& base,
                           const World& world, const SearchConfig& cfg);

}  // namespace semfoot
