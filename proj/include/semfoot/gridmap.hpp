#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "semfoot/geometry.hpp"
#include "semfoot/scenario.hpp"

namespace semfoot {

/// Robot-centred sampling window. Rows run along body x (forward), columns along body y (left).
struct GridSpec {
  double span_x = 1.5;
  double span_y = 1.2;
  double resolution = 0.05;
  int rows = 30;
  int cols = 24;
  /// Offset of the window centre from the base, in the body frame. Zero keeps it centred.
  Vec2 offset{};

  std::size_t cells() const { return static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols); }
  /// Throws std::invalid_argument when rows/cols do not tile the spans.
  void validate() const;
  /// Body-frame centre of cell (row, col).
  Vec2 cell_center(int row, int col) const;

  friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

struct ElevationMap {
  GridSpec spec;
  std::vector<double> heights;  // row-major, rows*cols
  Pose2D center;

  double at(int row, int col) const { return heights[static_cast<std::size_t>(row) * spec.cols + col]; }
};

struct SemanticMap {
  GridSpec spec;
  std::vector<double> costs;  // row-major
  std::vector<int> class_ids;  // row-major
  Pose2D center;

  double cost_at(int row, int col) const { return costs[static_cast<std::size_t>(row) * spec.cols + col]; }
  int class_at(int row, int col) const { return class_ids[static_cast<std::size_t>(row) * spec.cols + col]; }
};

struct DualMap {
  ElevationMap elevation;
  SemanticMap semantic;

  const GridSpec& spec() const { return elevation.spec; }
  const Pose2D& center() const { return elevation.center; }
};

/// Additive zero-mean uniform height noise in [-amplitude, amplitude], hashed per cell.
struct HeightNoise {
  double amplitude = 0.0;
  std::uint64_t seed = 0;
};

enum class Execution { Serial, Parallel };

/// Samples both grids analytically from the obstacle boxes. Cells outside every obstacle read as flat ground.
DualMap sample_dual_map(const World& world, const Pose2D& base, const GridSpec& spec = {},
                        const HeightNoise& noise = {}, Execution exec = Execution::Parallel);

struct CellValue {
  int row = 0;
  int col = 0;
  double height = 0.0;
  double cost = 0.0;
  int class_id = 0;
};

/// (row, col) of the cell containing a body-frame point. Points on a shared edge go to the
/// lower-index cell; the outer window edges are inclusive.
std::optional<std::pair<int, int>> cell_index(const GridSpec& spec, Vec2 p_body);

/// Nearest-cell lookup; std::nullopt when the point is outside the window.
std::optional<CellValue> cell_at(const DualMap& map, Vec2 p_body);

/// CSV with header `row,col,height_m,cost,class_id`, one line per cell.
void write_map_csv(std::ostream& out, const DualMap& map);

namespace kernels {
// Per-cell sampling kernels. The serial one is the reference the parallel one is checked against.
void sample_cells_serial(const World& world, const Pose2D& base, const GridSpec& spec,
                         const HeightNoise& noise, DualMap& out);
void sample_cells_parallel(const World& world, const Pose2D& base, const GridSpec& spec,
                           const HeightNoise& noise, DualMap& out);
}  // namespace kernels

}  // namespace semfoot
