#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <random>
#include <vector>

#include "semfoot/foothold.hpp"

namespace semfoot {

struct AxisBins {
  double lo = -1.0;
  double hi = 1.0;
  int count = 11;

  double width() const { return (hi - lo) / count; }
  friend bool operator==(const AxisBins&, const AxisBins&) = default;
};

/// Velocity-command lattice over (vx, vy, wz) with reward-driven bin probabilities.
/// Harder bins (lower tracking reward) are sampled more; every bin keeps at least floor().
class VelocityGrid {
 public:
  static constexpr double kEmaDecay = 0.99;
  static constexpr double kMaxReward = 2.0;

  VelocityGrid();  // 11 x 5 x 11 over the default command bounds
  VelocityGrid(AxisBins vx, AxisBins vy, AxisBins wz, double epsilon = 0.01);

  std::size_t bin_count() const { return probs_.size(); }
  const std::array<AxisBins, 3>& axes() const { return axes_; }
  const std::vector<double>& probs() const { return probs_; }
  const std::vector<double>& reward_ema() const { return ema_; }
  double epsilon() const { return epsilon_; }
  /// Per-bin probability floor: epsilon / bin_count().
  double floor() const { return epsilon_ / static_cast<double>(probs_.size()); }

  /// Flat bin index of (i, j, k), vx-major.
  std::size_t bin_index(int i, int j, int k) const;
  /// Axis-aligned command box of a bin: {lo, hi} per axis.
  std::array<std::array<double, 2>, 3> bin_box(std::size_t bin) const;
  std::size_t bin_of(const VelocityCommand& cmd) const;

  /// Draws a bin by probability, then a command uniformly inside it.
  VelocityCommand sample_command(std::mt19937_64& rng) const;
  VelocityCommand sample_command(std::mt19937_64& rng, std::size_t& bin_out) const;

  /// Folds one tracking reward (0, 2] into the bin's EMA and renormalises. Rejects out-of-range rewards.
  void update_probs(std::size_t bin, double observed_r_vel);

  /// Direct EMA assignment followed by renormalisation (state restore, tests).
  void set_reward_ema(std::vector<double> ema);

  void save(std::ostream& out) const;
  static VelocityGrid load(std::istream& in);

 private:
  void renormalize();

  std::array<AxisBins, 3> axes_;
  double epsilon_ = 0.01;
  std::vector<double> probs_;
  std::vector<double> ema_;
};

/// Obstacle-density progression: promoted by `step` when the mean tracking reward reaches the threshold.
struct DensitySchedule {
  double current = 0.0;
  double max = 25.0;
  double step = 5.0;
  double promote_threshold = 1.6;

  void validate() const;
};

/// Never decreases `current`; saturates at `max`.
DensitySchedule maybe_promote(const DensitySchedule& sched, double mean_tracking_reward);

}  // namespace semfoot
