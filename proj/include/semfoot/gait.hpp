#pragma once

#include <array>

#include "semfoot/geometry.hpp"

namespace semfoot {

/// Behaviour parameters of the walking gait (13 scalars in total).
struct BehaviorParams {
  double base_height = 0.32;               // m
  double swing_height = 0.09;              // m, apex of the swing profile above its baseline
  std::array<double, 3> phase_offsets{0.5, 0.75, 0.25};  // FR, RL, RR relative to FL
  PerLeg<double> contact_timers{};         // derived from leg phases, see with_timers()
  double frequency = 2.0;                  // Hz
  double duty = 0.5;                       // stance fraction, (0, 1)
  double stance_width = 0.30;              // m
  double stance_length = 0.40;             // m

  static constexpr std::size_t kSize = 13;

  /// Throws std::invalid_argument when a field is outside its domain.
  void validate() const;
  /// Per-leg phase offsets {0, theta_1, theta_2, theta_3} for FL, FR, RL, RR.
  PerLeg<double> leg_offsets() const { return {0.0, phase_offsets[0], phase_offsets[1], phase_offsets[2]}; }

  friend bool operator==(const BehaviorParams&, const BehaviorParams&) = default;
};

struct GaitState {
  double global_phase = 0.0;
  PerLeg<double> leg_phase{};
  PerLeg<bool> in_contact{true, true, true, true};
  PerLeg<double> swing_progress{};  // meaningful only while swinging

  friend bool operator==(const GaitState&, const GaitState&) = default;
};

/// T_stance = d / f. Rejects f <= 0 and d outside (0, 1).
double stance_duration(double frequency, double duty);
double swing_duration(double frequency, double duty);

/// Leg phases, contacts and swing progress for a given global phase.
GaitState gait_at(double global_phase, const BehaviorParams& params);

/// Advances the global clock by f*dt (mod 1) and recomputes the per-leg state. Requires dt > 0.
GaitState advance(const GaitState& state, const BehaviorParams& params, double dt);

/// Copy of `params` whose contact timers hold the current leg phases.
BehaviorParams with_timers(BehaviorParams params, const GaitState& gait);

inline constexpr double kSwingSafetyMargin = 0.02;  // m

/// Swing reference height s_feet * sqrt(sin(pi*phi)) + delta_z. Rejects phi outside [0, 1].
double swing_reference_height(double phi, double swing_height, double delta_z = kSwingSafetyMargin);

}  // namespace semfoot
