#include "semfoot/geometry.hpp"

namespace semfoot {

double normalize_angle(double a) {
  constexpr double pi = std::numbers::pi;
  if (a > -pi && a <= pi) return a;
  double r = std::remainder(a, 2.0 * pi);  // [-pi, pi]
  if (r <= -pi) r += 2.0 * pi;
  return r;
}

Vec2 body_to_world(const Pose2D& base, Vec2 p_body) {
  const double c = std::cos(base.yaw);
  const double s = std::sin(base.yaw);
  return {base.x + c * p_body.x - s * p_body.y, base.y + s * p_body.x + c * p_body.y};
}

Vec2 world_to_body(const Pose2D& base, Vec2 p_world) {
  const double c = std::cos(base.yaw);
  const double s = std::sin(base.yaw);
  const double dx = p_world.x - base.x;
  const double dy = p_world.y - base.y;
  return {c * dx + s * dy, -s * dx + c * dy};
}

const char* leg_name(Leg leg) {
  switch (leg) {
    case Leg::FL: return "FL";
    case Leg::FR: return "FR";
    case Leg::RL: return "RL";
    case Leg::RR: return "RR";
  }
  return "?";
}

}  // namespace semfoot
