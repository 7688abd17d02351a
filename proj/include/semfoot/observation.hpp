#pragma once

#include <array>
#include <cstddef>
#include <iosfwd>
#include <vector>

#include "semfoot/foothold.hpp"
#include "semfoot/gait.hpp"
#include "semfoot/gridmap.hpp"

namespace semfoot {

struct Proprio {
  std::array<double, 3> v_hat{};
  std::array<double, 3> omega{};
  std::array<double, 3> gravity{0.0, 0.0, -1.0};
  std::array<double, 12> q{};
  std::array<double, 12> dq{};
  std::array<double, 12> a_prev1{};
  std::array<double, 12> a_prev2{};

  static constexpr std::size_t kSize = 57;
  friend bool operator==(const Proprio&, const Proprio&) = default;
};

/// Block layout of the flat observation vector.
namespace obs_layout {
inline constexpr std::size_t kCmdOffset = 0, kCmdSize = 3;
inline constexpr std::size_t kBehaviorOffset = 3, kBehaviorSize = BehaviorParams::kSize;
inline constexpr std::size_t kProprioOffset = 16, kProprioSize = Proprio::kSize;
inline constexpr std::size_t kElevationOffset = 73, kElevationSize = 720;
inline constexpr std::size_t kSemanticOffset = 793, kSemanticSize = 720;
inline constexpr std::size_t kExteroSize = kElevationSize + kSemanticSize;
inline constexpr std::size_t kTotal = 1513;

struct Block {
  const char* name;
  std::size_t offset;
  std::size_t size;
};
inline constexpr std::array<Block, 5> kBlocks{{{"cmd", kCmdOffset, kCmdSize},
                                               {"behavior", kBehaviorOffset, kBehaviorSize},
                                               {"proprio", kProprioOffset, kProprioSize},
                                               {"elevation", kElevationOffset, kElevationSize},
                                               {"semantic", kSemanticOffset, kSemanticSize}}};
}  // namespace obs_layout

struct ObservationVector {
  std::vector<double> values;  // always obs_layout::kTotal long
};

/// Everything the observation carries, as recovered from a flat vector.
struct ObservationFields {
  VelocityCommand cmd;
  BehaviorParams behavior;
  Proprio proprio;
  std::vector<double> elevation;  // 720, row-major
  std::vector<double> semantic;   // 720, row-major
};

/// Concatenates [cmd, behaviour, proprio, elevation, semantic]. Maps are flattened row-major with rows
/// along body x. Rejects maps whose spec is not 30 x 24.
ObservationVector assemble(const VelocityCommand& cmd, const BehaviorParams& params, const Proprio& prop,
                           const DualMap& maps);

/// Inverse of assemble over the fixed layout. Rejects vectors of the wrong length.
ObservationFields disassemble(const ObservationVector& obs);

/// One value per line, each block preceded by `# <name> <offset> <size>`.
void write_observation_text(std::ostream& out, const ObservationVector& obs);

}  // namespace semfoot
