#include "semfoot/gridmap.hpp"

#include <charconv>
#include <cmath>
#include <ostream>
#include <stdexcept>
#include <string>

namespace semfoot {

void GridSpec::validate() const {
  if (!(resolution > 0.0) || rows <= 0 || cols <= 0)
    throw std::invalid_argument("grid spec needs positive resolution, rows and cols");
  constexpr double tol = 1e-9;
  if (std::abs(rows * resolution - span_x) > tol || std::abs(cols * resolution - span_y) > tol)
    throw std::invalid_argument("grid rows/cols do not tile the span at the given resolution");
}

Vec2 GridSpec::cell_center(int row, int col) const {
  return {offset.x + (row + 0.5) * resolution - 0.5 * span_x,
          offset.y + (col + 0.5) * resolution - 0.5 * span_y};
}

namespace {

void resize(DualMap& out, const GridSpec& spec, const Pose2D& base) {
  const std::size_t n = spec.cells();
  out.elevation.spec = spec;
  out.elevation.center = base;
  out.elevation.heights.assign(n, 0.0);
  out.semantic.spec = spec;
  out.semantic.center = base;
  out.semantic.costs.assign(n, 0.0);
  out.semantic.class_ids.assign(n, 0);
}

inline void sample_one(const World& world, const Pose2D& base, const GridSpec& spec,
                       const HeightNoise& noise, std::size_t k, DualMap& out) {
  const int row = static_cast<int>(k / spec.cols);
  const int col = static_cast<int>(k % spec.cols);
  const Surface s = world.surface_at(body_to_world(base, spec.cell_center(row, col)));
  double h = s.height;
  if (noise.amplitude > 0.0) {
    const double u = unit_interval(mix_seed(noise.seed ^ mix_seed(k)));
    h += noise.amplitude * (2.0 * u - 1.0);
  }
  out.elevation.heights[k] = h;
  out.semantic.costs[k] = s.cost;
  out.semantic.class_ids[k] = s.class_id;
}

// Index of the cell containing coordinate u (in cells from the window edge); ties go low.
std::optional<int> axis_index(double u, int n) {
  if (!(u >= 0.0) || u > n) return std::nullopt;
  if (u == 0.0) return 0;
  return static_cast<int>(std::ceil(u)) - 1;
}

std::string fmt(double v) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

}  // namespace

namespace kernels {

void sample_cells_serial(const World& world, const Pose2D& base, const GridSpec& spec,
                         const HeightNoise& noise, DualMap& out) {
  resize(out, spec, base);
  const std::size_t n = spec.cells();
  for (std::size_t k = 0; k < n; ++k) sample_one(world, base, spec, noise, k, out);
}

void sample_cells_parallel(const World& world, const Pose2D& base, const GridSpec& spec,
                           const HeightNoise& noise, DualMap& out) {
  resize(out, spec, base);
  const auto n = static_cast<std::int64_t>(spec.cells());
#pragma omp parallel for schedule(static)
  for (std::int64_t k = 0; k < n; ++k) sample_one(world, base, spec, noise, static_cast<std::size_t>(k), out);
}

}  // namespace kernels

DualMap sample_dual_map(const World& world, const Pose2D& base, const GridSpec& spec,
                        const HeightNoise& noise, Execution exec) {
  spec.validate();
  DualMap map;
  if (exec == Execution::Parallel)
    kernels::sample_cells_parallel(world, base, spec, noise, map);
  else
    kernels::sample_cells_serial(world, base, spec, noise, map);
  return map;
}

std::optional<std::pair<int, int>> cell_index(const GridSpec& spec, Vec2 p_body) {
  const double u = (p_body.x - spec.offset.x + 0.5 * spec.span_x) / spec.resolution;
  const double v = (p_body.y - spec.offset.y + 0.5 * spec.span_y) / spec.resolution;
  auto row = axis_index(u, spec.rows);
  auto col = axis_index(v, spec.cols);
  if (!row || !col) return std::nullopt;
  return std::pair{*row, *col};
}

std::optional<CellValue> cell_at(const DualMap& map, Vec2 p_body) {
  const auto idx = cell_index(map.spec(), p_body);
  if (!idx) return std::nullopt;
  const auto [row, col] = *idx;
  return CellValue{row, col, map.elevation.at(row, col), map.semantic.cost_at(row, col),
                   map.semantic.class_at(row, col)};
}

void write_map_csv(std::ostream& out, const DualMap& map) {
  const auto& spec = map.spec();
  out << "row,col,height_m,cost,class_id\n";
  for (int r = 0; r < spec.rows; ++r)
    for (int c = 0; c < spec.cols; ++c)
      out << r << ',' << c << ',' << fmt(map.elevation.at(r, c)) << ',' << fmt(map.semantic.cost_at(r, c))
          << ',' << map.semantic.class_at(r, c) << '\n';
}

}  // namespace semfoot
