#include "semfoot/scenario.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <random>
#include <sstream>

namespace semfoot {

const char* to_string(ObstacleMode mode) {
  return mode == ObstacleMode::Rigid ? "rigid" : "virtual";
}

ObstacleMode parse_obstacle_mode(std::string_view text) {
  if (text == "rigid") return ObstacleMode::Rigid;
  if (text == "virtual") return ObstacleMode::Virtual;
  throw std::invalid_argument("unknown obstacle mode '" + std::string(text) + "'");
}

// ---------------------------------------------------------------------------
// ClassTable

ClassTable::ClassTable()
    : classes_{{0, "ground", 0.0, false},
               {1, "box", 5.0, false},
               {2, "cable", 10.0, true},
               {3, "device", 10.0, true}} {}

ClassTable::ClassTable(std::vector<SemanticClass> classes) : classes_(std::move(classes)) {
  std::sort(classes_.begin(), classes_.end(),
            [](const SemanticClass& a, const SemanticClass& b) { return a.id < b.id; });
  if (classes_.empty() || classes_.front().id != 0 || classes_.front().cost != 0.0)
    throw std::invalid_argument("class table must contain ground (id 0, cost 0)");
  for (std::size_t i = 0; i < classes_.size(); ++i) {
    if (i > 0 && classes_[i].id == classes_[i - 1].id)
      throw std::invalid_argument("duplicate class id " + std::to_string(classes_[i].id));
    if (!(classes_[i].cost >= 0.0))
      throw std::invalid_argument("class cost must be nonnegative");
    if (i > 0 && classes_[i].cost <= 0.0)
      throw std::invalid_argument("obstacle class '" + classes_[i].name + "' needs a positive cost");
  }
}

const SemanticClass& ClassTable::at(int id) const {
  auto it = std::lower_bound(classes_.begin(), classes_.end(), id,
                             [](const SemanticClass& c, int v) { return c.id < v; });
  if (it == classes_.end() || it->id != id)
    throw std::out_of_range("unknown class id " + std::to_string(id));
  return *it;
}

bool ClassTable::contains(int id) const {
  return std::any_of(classes_.begin(), classes_.end(), [id](const auto& c) { return c.id == id; });
}

std::vector<int> ClassTable::obstacle_ids() const {
  std::vector<int> ids;
  for (const auto& c : classes_)
    if (c.id != 0) ids.push_back(c.id);
  return ids;
}

// ---------------------------------------------------------------------------
// ObstacleIndex: uniform bucket grid, each footprint padded by kPad when bucketed
// so that any dilated query up to kPad only has to look in one bucket.

class ObstacleIndex {
 public:
  static constexpr double kCell = 0.2;
  static constexpr double kPad = 0.1;

  explicit ObstacleIndex(const std::vector<Obstacle>& obstacles) {
    if (obstacles.empty()) return;
    double x0 = obstacles[0].center.x, x1 = x0, y0 = obstacles[0].center.y, y1 = y0;
    for (const auto& o : obstacles) {
      x0 = std::min(x0, o.center.x - o.half_extents.x - kPad);
      x1 = std::max(x1, o.center.x + o.half_extents.x + kPad);
      y0 = std::min(y0, o.center.y - o.half_extents.y - kPad);
      y1 = std::max(y1, o.center.y + o.half_extents.y + kPad);
    }
    origin_ = {x0, y0};
    nx_ = static_cast<int>(std::floor((x1 - x0) / kCell)) + 1;
    ny_ = static_cast<int>(std::floor((y1 - y0) / kCell)) + 1;
    buckets_.resize(static_cast<std::size_t>(nx_) * ny_);
    for (std::size_t k = 0; k < obstacles.size(); ++k) {
      const auto& o = obstacles[k];
      const int i0 = cell_x(o.center.x - o.half_extents.x - kPad);
      const int i1 = cell_x(o.center.x + o.half_extents.x + kPad);
      const int j0 = cell_y(o.center.y - o.half_extents.y - kPad);
      const int j1 = cell_y(o.center.y + o.half_extents.y + kPad);
      for (int i = i0; i <= i1; ++i)
        for (int j = j0; j <= j1; ++j) buckets_[bucket(i, j)].push_back(static_cast<std::uint32_t>(k));
    }
  }

  /// Candidate list for a point, or nullptr when the point is outside every padded footprint.
  const std::vector<std::uint32_t>* candidates(Vec2 p) const {
    if (buckets_.empty()) return nullptr;
    const int i = cell_x(p.x);
    const int j = cell_y(p.y);
    if (i < 0 || j < 0 || i >= nx_ || j >= ny_) return nullptr;
    return &buckets_[bucket(i, j)];
  }

 private:
  int cell_x(double x) const {
    return std::clamp(static_cast<int>(std::floor((x - origin_.x) / kCell)), -1, nx_);
  }
  int cell_y(double y) const {
    return std::clamp(static_cast<int>(std::floor((y - origin_.y) / kCell)), -1, ny_);
  }
  std::size_t bucket(int i, int j) const { return static_cast<std::size_t>(i) * ny_ + j; }

  Vec2 origin_;
  int nx_ = 0;
  int ny_ = 0;
  std::vector<std::vector<std::uint32_t>> buckets_;
};

// ---------------------------------------------------------------------------
// World

World::World() : index_(std::make_shared<ObstacleIndex>(obstacles_)) {}

World::World(TrackInfo track, ClassTable classes, std::vector<Obstacle> obstacles)
    : track_(track), classes_(std::move(classes)), obstacles_(std::move(obstacles)) {
  if (!(track_.length > 0.0) || !(track_.width > 0.0))
    throw std::invalid_argument("track dimensions must be positive");
  for (const auto& o : obstacles_) {
    if (!(o.half_extents.x > 0.0) || !(o.half_extents.y > 0.0))
      throw std::invalid_argument("obstacle half extents must be positive");
    if (!(o.height > 0.0)) throw std::invalid_argument("obstacle height must be positive");
    if (o.class_id == 0 || !classes_.contains(o.class_id))
      throw std::invalid_argument("obstacle uses unknown class id " + std::to_string(o.class_id));
  }
  index_ = std::make_shared<ObstacleIndex>(obstacles_);
}

template <class Fn>
void World::visit_near(Vec2 p, double dilation, Fn&& fn) const {
  if (dilation > ObstacleIndex::kPad) {
    for (std::size_t k = 0; k < obstacles_.size(); ++k)
      if (obstacles_[k].contains(p, dilation) && !fn(k)) return;
    return;
  }
  const auto* cand = index_->candidates(p);
  if (cand == nullptr) return;
  for (std::uint32_t k : *cand)
    if (obstacles_[k].contains(p, dilation) && !fn(k)) return;
}

std::vector<std::size_t> World::covering(Vec2 p, double dilation) const {
  std::vector<std::size_t> out;
  visit_near(p, dilation, [&](std::size_t k) {
    out.push_back(k);
    return true;
  });
  std::sort(out.begin(), out.end());
  return out;
}

bool World::any_covering(Vec2 p, double dilation) const {
  bool hit = false;
  visit_near(p, dilation, [&](std::size_t) {
    hit = true;
    return false;
  });
  return hit;
}

Surface World::surface_at(Vec2 p) const {
  Surface s;
  visit_near(p, 0.0, [&](std::size_t k) {
    const Obstacle& o = obstacles_[k];
    s.height = track_.stacking ? s.height + o.height : std::max(s.height, o.height);
    const double cost = classes_.at(o.class_id).cost;
    if (cost > s.cost || (cost == s.cost && o.class_id < s.class_id)) {
      s.cost = cost;
      s.class_id = o.class_id;
    }
    s.rigid = s.rigid || o.mode == ObstacleMode::Rigid;
    return true;
  });
  return s;
}

// ---------------------------------------------------------------------------
// Generation

World generate_track(const TrackOptions& opt) {
  if (!(opt.density >= 0.0)) throw std::invalid_argument("density must be nonnegative");
  if (!(opt.length > 0.0) || !(opt.width > 0.0))
    throw std::invalid_argument("track dimensions must be positive");
  const auto& sz = opt.sizes;
  if (!(sz.half_extent_min > 0.0) || sz.half_extent_max < sz.half_extent_min ||
      !(sz.height_min > 0.0) || sz.height_max < sz.height_min)
    throw std::invalid_argument("invalid obstacle size range");
  const double x_lo = opt.start_clear;
  const double x_hi = opt.length - opt.end_clear;
  if (x_hi - x_lo < 2.0 * sz.half_extent_max || opt.width < 2.0 * sz.half_extent_max)
    throw std::invalid_argument("track too small for the obstacle size range");

  const auto count = static_cast<std::size_t>(std::llround(opt.density * opt.length * opt.width));
  const std::vector<int> class_ids = opt.classes.obstacle_ids();
  if (count > 0 && class_ids.empty())
    throw std::invalid_argument("class table has no obstacle classes");

  std::mt19937_64 rng(opt.seed);
  auto uniform = [&rng](double lo, double hi) { return lo + (hi - lo) * unit_interval(rng()); };

  std::vector<Obstacle> placed;
  placed.reserve(count);
  for (std::size_t n = 0; n < count; ++n) {
    Obstacle o;
    o.class_id = class_ids[std::min(class_ids.size() - 1,
                                    static_cast<std::size_t>(unit_interval(rng()) * class_ids.size()))];
    o.half_extents = {uniform(sz.half_extent_min, sz.half_extent_max),
                      uniform(sz.half_extent_min, sz.half_extent_max)};
    o.height = uniform(sz.height_min, sz.height_max);
    o.mode = opt.mode;
    bool ok = false;
    for (int attempt = 0; attempt < opt.max_attempts_per_obstacle && !ok; ++attempt) {
      o.center = {uniform(x_lo + o.half_extents.x, x_hi - o.half_extents.x),
                  uniform(-0.5 * opt.width + o.half_extents.y, 0.5 * opt.width - o.half_extents.y)};
      ok = opt.allow_stacking ||
           std::none_of(placed.begin(), placed.end(), [&](const Obstacle& p) { return p.overlaps(o); });
    }
    if (!ok)
      throw PlacementError("could not place obstacle " + std::to_string(n + 1) + " of " +
                           std::to_string(count) + " without overlap; density " +
                           std::to_string(opt.density) + " is too high for disjoint placement");
    placed.push_back(o);
  }

  TrackInfo info{opt.seed, opt.length, opt.width, opt.mode, opt.allow_stacking, opt.density};
  return World(info, opt.classes, std::move(placed));
}

// ---------------------------------------------------------------------------
// Scenario file
//
//   semfoot-scenario 1
//   seed <u64>
//   track <length> <width>
//   mode <rigid|virtual>
//   stacking <0|1>
//   density <obstacles per m^2>
//   classes <n>
//   class <id> <name> <cost> <fragile 0|1>        (n lines)
//   obstacles <m>
//   obstacle <cx> <cy> <hx> <hy> <height> <class> <mode>   (m lines)

namespace {

constexpr int kFormatVersion = 1;

std::string fmt_double(double v) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);  // shortest round-trip form
  return std::string(buf, res.ptr);
}

class LineReader {
 public:
  explicit LineReader(std::istream& in) : in_(in) {}

  /// Next non-empty, non-comment line split on whitespace; empty vector at EOF.
  std::vector<std::string> next() {
    std::string raw;
    while (std::getline(in_, raw)) {
      ++line_;
      if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
      std::istringstream ss(raw);
      std::vector<std::string> tok;
      for (std::string t; ss >> t;) tok.push_back(t);
      if (!tok.empty()) return tok;
    }
    ++line_;
    return {};
  }

  std::vector<std::string> expect(std::string_view keyword, std::size_t n_values) {
    auto tok = next();
    if (tok.empty()) throw ParseError(line_, std::string(keyword), "unexpected end of file");
    if (tok[0] != keyword)
      throw ParseError(line_, std::string(keyword), "expected '" + std::string(keyword) + "', got '" + tok[0] + "'");
    if (tok.size() != n_values + 1)
      throw ParseError(line_, std::string(keyword),
                       "expected " + std::to_string(n_values) + " value(s), got " + std::to_string(tok.size() - 1));
    return tok;
  }

  int line() const { return line_; }

  double number(const std::string& text, const char* field) const {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(v))
      throw ParseError(line_, field, "invalid number '" + text + "'");
    return v;
  }

  template <class Int>
  Int integer(const std::string& text, const char* field) const {
    Int v = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || ptr != text.data() + text.size())
      throw ParseError(line_, field, "invalid integer '" + text + "'");
    return v;
  }

  bool flag(const std::string& text, const char* field) const {
    if (text == "0") return false;
    if (text == "1") return true;
    throw ParseError(line_, field, "expected 0 or 1, got '" + text + "'");
  }

  ObstacleMode mode(const std::string& text, const char* field) const {
    try {
      return parse_obstacle_mode(text);
    } catch (const std::invalid_argument&) {
      throw ParseError(line_, field, "expected 'rigid' or 'virtual', got '" + text + "'");
    }
  }

 private:
  std::istream& in_;
  int line_ = 0;
};

}  // namespace

ParseError::ParseError(int line, std::string field, const std::string& message)
    : std::runtime_error("line " + std::to_string(line) + ", field '" + field + "': " + message),
      line_(line),
      field_(std::move(field)) {}

void write_world(std::ostream& out, const World& world) {
  const auto& t = world.track();
  out << "semfoot-scenario " << kFormatVersion << '\n'
      << "seed " << t.seed << '\n'
      << "track " << fmt_double(t.length) << ' ' << fmt_double(t.width) << '\n'
      << "mode " << to_string(t.mode) << '\n'
      << "stacking " << (t.stacking ? 1 : 0) << '\n'
      << "density " << fmt_double(t.density) << '\n'
      << "classes " << world.classes().classes().size() << '\n';
  for (const auto& c : world.classes().classes())
    out << "class " << c.id << ' ' << c.name << ' ' << fmt_double(c.cost) << ' ' << (c.fragile ? 1 : 0) << '\n';
  out << "obstacles " << world.obstacles().size() << '\n';
  for (const auto& o : world.obstacles())
    out << "obstacle " << fmt_double(o.center.x) << ' ' << fmt_double(o.center.y) << ' '
        << fmt_double(o.half_extents.x) << ' ' << fmt_double(o.half_extents.y) << ' '
        << fmt_double(o.height) << ' ' << o.class_id << ' ' << to_string(o.mode) << '\n';
}

World read_world(std::istream& in) {
  LineReader r(in);
  auto tok = r.expect("semfoot-scenario", 1);
  if (r.integer<int>(tok[1], "version") != kFormatVersion)
    throw ParseError(r.line(), "version", "unsupported version " + tok[1]);

  TrackInfo t;
  tok = r.expect("seed", 1);
  t.seed = r.integer<std::uint64_t>(tok[1], "seed");
  tok = r.expect("track", 2);
  t.length = r.number(tok[1], "length");
  t.width = r.number(tok[2], "width");
  if (!(t.length > 0.0) || !(t.width > 0.0))
    throw ParseError(r.line(), "track", "dimensions must be positive");
  tok = r.expect("mode", 1);
  t.mode = r.mode(tok[1], "mode");
  tok = r.expect("stacking", 1);
  t.stacking = r.flag(tok[1], "stacking");
  tok = r.expect("density", 1);
  t.density = r.number(tok[1], "density");

  tok = r.expect("classes", 1);
  const auto n_classes = r.integer<std::size_t>(tok[1], "classes");
  std::vector<SemanticClass> classes;
  for (std::size_t i = 0; i < n_classes; ++i) {
    tok = r.expect("class", 4);
    classes.push_back({r.integer<int>(tok[1], "class.id"), tok[2], r.number(tok[3], "class.cost"),
                       r.flag(tok[4], "class.fragile")});
  }
  ClassTable table;
  try {
    table = ClassTable(std::move(classes));
  } catch (const std::invalid_argument& e) {
    throw ParseError(r.line(), "classes", e.what());
  }

  tok = r.expect("obstacles", 1);
  const auto n_obstacles = r.integer<std::size_t>(tok[1], "obstacles");
  std::vector<Obstacle> obstacles;
  obstacles.reserve(n_obstacles);
  for (std::size_t i = 0; i < n_obstacles; ++i) {
    tok = r.expect("obstacle", 7);
    Obstacle o;
    o.center = {r.number(tok[1], "obstacle.cx"), r.number(tok[2], "obstacle.cy")};
    o.half_extents = {r.number(tok[3], "obstacle.hx"), r.number(tok[4], "obstacle.hy")};
    if (!(o.half_extents.x > 0.0) || !(o.half_extents.y > 0.0))
      throw ParseError(r.line(), "obstacle.half_extents", "must be positive");
    o.height = r.number(tok[5], "obstacle.height");
    if (!(o.height > 0.0)) throw ParseError(r.line(), "obstacle.height", "must be positive");
    o.class_id = r.integer<int>(tok[6], "obstacle.class");
    if (o.class_id == 0 || !table.contains(o.class_id))
      throw ParseError(r.line(), "obstacle.class", "unknown obstacle class " + tok[6]);
    o.mode = r.mode(tok[7], "obstacle.mode");
    obstacles.push_back(o);
  }
  if (auto extra = r.next(); !extra.empty())
    throw ParseError(r.line(), extra[0], "unexpected trailing content");
  return World(t, std::move(table), std::move(obstacles));
}

void save_world(const std::string& path, const World& world) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  write_world(out, world);
}

World load_world(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  return read_world(in);
}

}  // namespace semfoot
