#include "semfoot/observation.hpp"

#include <algorithm>
#include <charconv>
#include <ostream>
#include <stdexcept>

namespace semfoot {

namespace {

template <std::size_t N>
double* put(double* out, const std::array<double, N>& a) {
  return std::copy(a.begin(), a.end(), out);
}

template <std::size_t N>
const double* take(const double* in, std::array<double, N>& a) {
  std::copy(in, in + N, a.begin());
  return in + N;
}

}  // namespace

ObservationVector assemble(const VelocityCommand& cmd, const BehaviorParams& params, const Proprio& prop,
                           const DualMap& maps) {
  using namespace obs_layout;
  const GridSpec& spec = maps.spec();
  if (spec.rows != 30 || spec.cols != 24 || maps.semantic.spec != spec ||
      maps.elevation.heights.size() != kElevationSize || maps.semantic.costs.size() != kSemanticSize)
    throw std::invalid_argument("observation needs a 30 x 24 dual map");

  ObservationVector obs;
  obs.values.resize(kTotal);
  double* p = obs.values.data();
  *p++ = cmd.vx;
  *p++ = cmd.vy;
  *p++ = cmd.wz;

  *p++ = params.base_height;
  *p++ = params.swing_height;
  p = put(p, params.phase_offsets);
  p = put(p, params.contact_timers);
  *p++ = params.frequency;
  *p++ = params.duty;
  *p++ = params.stance_width;
  *p++ = params.stance_length;

  p = put(p, prop.v_hat);
  p = put(p, prop.omega);
  p = put(p, prop.gravity);
  p = put(p, prop.q);
  p = put(p, prop.dq);
  p = put(p, prop.a_prev1);
  p = put(p, prop.a_prev2);

  p = std::copy(maps.elevation.heights.begin(), maps.elevation.heights.end(), p);
  std::copy(maps.semantic.costs.begin(), maps.semantic.costs.end(), p);
  return obs;
}

ObservationFields disassemble(const ObservationVector& obs) {
  using namespace obs_layout;
  if (obs.values.size() != kTotal) throw std::invalid_argument("observation vector has the wrong length");
  ObservationFields f;
  const double* p = obs.values.data();
  f.cmd = {p[0], p[1], p[2]};
  p += kCmdSize;

  f.behavior.base_height = *p++;
  f.behavior.swing_height = *p++;
  p = take(p, f.behavior.phase_offsets);
  p = take(p, f.behavior.contact_timers);
  f.behavior.frequency = *p++;
  f.behavior.duty = *p++;
  f.behavior.stance_width = *p++;
  f.behavior.stance_length = *p++;

  p = take(p, f.proprio.v_hat);
  p = take(p, f.proprio.omega);
  p = take(p, f.proprio.gravity);
  p = take(p, f.proprio.q);
  p = take(p, f.proprio.dq);
  p = take(p, f.proprio.a_prev1);
  p = take(p, f.proprio.a_prev2);

  f.elevation.assign(p, p + kElevationSize);
  p += kElevationSize;
  f.semantic.assign(p, p + kSemanticSize);
  return f;
}

void write_observation_text(std::ostream& out, const ObservationVector& obs) {
  char buf[32];
  for (const auto& block : obs_layout::kBlocks) {
    out << "# " << block.name << ' ' << block.offset << ' ' << block.size << '\n';
    for (std::size_t i = block.offset; i < block.offset + block.size && i < obs.values.size(); ++i) {
      auto res = std::to_chars(buf, buf + sizeof(buf), obs.values[i]);
      out.write(buf, res.ptr - buf);
      out << '\n';
    }
  }
}

}  // namespace semfoot
