#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>

namespace semfoot {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  friend constexpr Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
  friend constexpr Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
  friend constexpr Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
  friend constexpr bool operator==(Vec2, Vec2) = default;
};

inline double norm(Vec2 v) { return std::hypot(v.x, v.y); }
inline double squared_norm(Vec2 v) { return v.x * v.x + v.y * v.y; }

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  constexpr Vec2 xy() const { return {x, y}; }
  friend constexpr bool operator==(Vec3, Vec3) = default;
};

/// Wraps an angle into (-pi, pi].
double normalize_angle(double a);

/// Planar robot base pose in the world frame.
struct Pose2D {
  double x = 0.0;
  double y = 0.0;
  double yaw = 0.0;

  Pose2D() = default;
  Pose2D(double x_, double y_, double yaw_) : x(x_), y(y_), yaw(normalize_angle(yaw_)) {}

  friend bool operator==(const Pose2D&, const Pose2D&) = default;
};

Vec2 body_to_world(const Pose2D& base, Vec2 p_body);
Vec2 world_to_body(const Pose2D& base, Vec2 p_world);

/// Leg ordering used everywhere: front-left, front-right, rear-left, rear-right.
enum class Leg : std::uint8_t { FL = 0, FR = 1, RL = 2, RR = 3 };
inline constexpr std::size_t kNumLegs = 4;
inline constexpr std::array<Leg, kNumLegs> kAllLegs{Leg::FL, Leg::FR, Leg::RL, Leg::RR};

constexpr std::size_t index(Leg leg) { return static_cast<std::size_t>(leg); }
constexpr bool is_front(Leg leg) { return leg == Leg::FL || leg == Leg::FR; }
constexpr bool is_left(Leg leg) { return leg == Leg::FL || leg == Leg::RL; }
const char* leg_name(Leg leg);

template <class T>
using PerLeg = std::array<T, kNumLegs>;

/// Counter-based mixing (splitmix64 finalizer); used to derive independent seeds.
constexpr std::uint64_t mix_seed(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Maps a 64-bit hash to [0, 1).
constexpr double unit_interval(std::uint64_t h) {
  return static_cast<double>(h >> 11) * 0x1.0p-53;
}

}  // namespace semfoot
