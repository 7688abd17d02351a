#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "semfoot/geometry.hpp"

namespace semfoot {

/// Whether an obstacle is only perceived (virtual) or also physically interacts (rigid).
enum class ObstacleMode : std::uint8_t { Virtual, Rigid };

const char* to_string(ObstacleMode mode);
ObstacleMode parse_obstacle_mode(std::string_view text);

struct SemanticClass {
  int id = 0;
  std::string name;
  double cost = 0.0;
  bool fragile = false;

  friend bool operator==(const SemanticClass&, const SemanticClass&) = default;
};

/// Class table; id 0 is always ground with zero cost.
class ClassTable {
 public:
  ClassTable();  // ground, box, cable, device
  explicit ClassTable(std::vector<SemanticClass> classes);

  const std::vector<SemanticClass>& classes() const { return classes_; }
  const SemanticClass& at(int id) const;
  bool contains(int id) const;
  std::vector<int> obstacle_ids() const;  // every id except ground

  friend bool operator==(const ClassTable&, const ClassTable&) = default;

 private:
  std::vector<SemanticClass> classes_;
};

struct Obstacle {
  Vec2 center;
  Vec2 half_extents;
  double height = 0.0;
  int class_id = 1;
  ObstacleMode mode = ObstacleMode::Rigid;

  /// Inside-or-on test against the footprint grown by `dilation` on every side.
  bool contains(Vec2 p, double dilation = 0.0) const {
    return std::abs(p.x - center.x) <= half_extents.x + dilation &&
           std::abs(p.y - center.y) <= half_extents.y + dilation;
  }
  bool overlaps(const Obstacle& o) const {
    return std::abs(center.x - o.center.x) <= half_extents.x + o.half_extents.x &&
           std::abs(center.y - o.center.y) <= half_extents.y + o.half_extents.y;
  }

  friend bool operator==(const Obstacle&, const Obstacle&) = default;
};

/// Header data of a track. The track spans x in [0, length], y in [-width/2, width/2].
struct TrackInfo {
  std::uint64_t seed = 0;
  double length = 10.0;
  double width = 2.0;
  ObstacleMode mode = ObstacleMode::Rigid;
  bool stacking = false;  // footprints may overlap; heights add up where they do
  double density = 0.0;   // requested obstacles per m^2

  friend bool operator==(const TrackInfo&, const TrackInfo&) = default;
};

class ObstacleIndex;

/// What the ground looks like at one point.
struct Surface {
  double height = 0.0;      // top of the (possibly stacked) obstacle column, 0 on bare ground
  double cost = 0.0;        // highest semantic cost among covering obstacles
  int class_id = 0;         // class carrying that cost
  bool rigid = false;       // at least one covering obstacle is rigid
};

/// Ground plane plus axis-aligned box obstacles. Immutable once constructed.
class World {
 public:
  World();
  World(TrackInfo track, ClassTable classes, std::vector<Obstacle> obstacles);

  const TrackInfo& track() const { return track_; }
  const ClassTable& classes() const { return classes_; }
  const std::vector<Obstacle>& obstacles() const { return obstacles_; }

  /// Obstacles whose footprint dilated by `dilation` contains `p`, in storage order.
  std::vector<std::size_t> covering(Vec2 p, double dilation = 0.0) const;
  bool any_covering(Vec2 p, double dilation) const;
  Surface surface_at(Vec2 p) const;

  friend bool operator==(const World& a, const World& b) {
    return a.track_ == b.track_ && a.classes_ == b.classes_ && a.obstacles_ == b.obstacles_;
  }

 private:
  template <class Fn>
  void visit_near(Vec2 p, double dilation, Fn&& fn) const;

  TrackInfo track_;
  ClassTable classes_;
  std::vector<Obstacle> obstacles_;
  std::shared_ptr<const ObstacleIndex> index_;
};

/// Defaults keep every obstacle below the swing plateau (s_feet * sqrt(sin(pi*phi)) + delta_z >= 0.065 m
/// for phi in [0.08, 0.92] with the default gait), so trips come from footholds at or next to obstacles.
struct ObstacleSizeRange {
  double half_extent_min = 0.02;
  double half_extent_max = 0.06;
  double height_min = 0.01;
  double height_max = 0.06;
};

struct TrackOptions {
  double density = 0.0;  // obstacles per m^2
  std::uint64_t seed = 0;
  double length = 10.0;
  double width = 2.0;
  ObstacleMode mode = ObstacleMode::Rigid;
  bool allow_stacking = false;
  ObstacleSizeRange sizes;
  double start_clear = 1.0;
  double end_clear = 0.5;
  int max_attempts_per_obstacle = 20000;
  ClassTable classes;
};

/// Raised when disjoint placement cannot be completed within the attempt budget.
class PlacementError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

World generate_track(const TrackOptions& options);

/// Parse failure; `line()` is 1-based, `field()` names the offending field.
class ParseError : public std::runtime_error {
 public:
  ParseError(int line, std::string field, const std::string& message);
  int line() const { return line_; }
  const std::string& field() const { return field_; }

 private:
  int line_;
  std::string field_;
};

void write_world(std::ostream& out, const World& world);
World read_world(std::istream& in);
void save_world(const std::string& path, const World& world);
World load_world(const std::string& path);

}  // namespace semfoot
