#include "semfoot/gait.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace semfoot {

namespace {

double wrap01(double x) {
  double r = x - std::floor(x);
  return r >= 1.0 ? 0.0 : r;
}

void check_unit(double v, const char* name) {
  if (!(v >= 0.0 && v < 1.0)) throw std::invalid_argument(std::string(name) + " must lie in [0, 1)");
}

}  // namespace

void BehaviorParams::validate() const {
  if (!(frequency > 0.0)) throw std::invalid_argument("gait frequency must be positive");
  if (!(duty > 0.0 && duty < 1.0)) throw std::invalid_argument("duty factor must lie in (0, 1)");
  if (!(stance_width > 0.0) || !(stance_length > 0.0))
    throw std::invalid_argument("stance width and length must be positive");
  if (!(swing_height >= 0.0)) throw std::invalid_argument("swing height must be nonnegative");
  if (!std::isfinite(base_height)) throw std::invalid_argument("base height must be finite");
  for (double o : phase_offsets) check_unit(o, "phase offset");
  for (double t : contact_timers) check_unit(t, "contact timer");
}

double stance_duration(double frequency, double duty) {
  if (!(frequency > 0.0)) throw std::invalid_argument("gait frequency must be positive");
  if (!(duty > 0.0 && duty < 1.0)) throw std::invalid_argument("duty factor must lie in (0, 1)");
  return duty / frequency;
}

double swing_duration(double frequency, double duty) {
  stance_duration(frequency, duty);  // domain checks
  return (1.0 - duty) / frequency;
}

GaitState gait_at(double global_phase, const BehaviorParams& params) {
  GaitState s;
  s.global_phase = wrap01(global_phase);
  const auto offsets = params.leg_offsets();
  for (std::size_t i = 0; i < kNumLegs; ++i) {
    const double phase = wrap01(s.global_phase + offsets[i]);
    s.leg_phase[i] = phase;
    s.in_contact[i] = phase < params.duty;
    s.swing_progress[i] = s.in_contact[i] ? 0.0 : (phase - params.duty) / (1.0 - params.duty);
  }
  return s;
}

GaitState advance(const GaitState& state, const BehaviorParams& params, double dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("time step must be positive");
  return gait_at(state.global_phase + params.frequency * dt, params);
}

BehaviorParams with_timers(BehaviorParams params, const GaitState& gait) {
  params.contact_timers = gait.leg_phase;
  return params;
}

double swing_reference_height(double phi, double swing_height, double delta_z) {
  if (!(phi >= 0.0 && phi <= 1.0)) throw std::invalid_argument("swing progress must lie in [0, 1]");
  // sin(pi) is ~1.2e-16, not 0; clamp so the profile stays symmetric at the end points.
  const double s = std::max(0.0, std::sin(std::numbers::pi * phi));
  const double lift = (phi == 0.0 || phi == 1.0) ? 0.0 : std::sqrt(s);
  return swing_height * lift + delta_z;
}

}  // namespace semfoot
