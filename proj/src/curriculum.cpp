#include "semfoot/curriculum.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace semfoot {

namespace {

void check_axis(const AxisBins& a) {
  if (a.count < 1 || !(a.hi > a.lo)) throw std::invalid_argument("curriculum axis needs hi > lo and count >= 1");
}

std::string fmt(double v) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

double parse_double(const std::string& s) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw std::runtime_error("curriculum state: invalid number '" + s + "'");
  return v;
}

}  // namespace

VelocityGrid::VelocityGrid() : VelocityGrid({-1.0, 1.0, 11}, {-0.5, 0.5, 5}, {-1.0, 1.0, 11}) {}

VelocityGrid::VelocityGrid(AxisBins vx, AxisBins vy, AxisBins wz, double epsilon)
    : axes_{vx, vy, wz}, epsilon_(epsilon) {
  for (const auto& a : axes_) check_axis(a);
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw std::invalid_argument("curriculum epsilon must lie in (0, 1)");
  const std::size_t n = static_cast<std::size_t>(vx.count) * vy.count * wz.count;
  ema_.assign(n, 0.0);
  probs_.assign(n, 0.0);
  renormalize();
}

std::size_t VelocityGrid::bin_index(int i, int j, int k) const {
  return (static_cast<std::size_t>(i) * axes_[1].count + j) * axes_[2].count + k;
}

std::array<std::array<double, 2>, 3> VelocityGrid::bin_box(std::size_t bin) const {
  if (bin >= probs_.size()) throw std::out_of_range("curriculum bin out of range");
  const int k = static_cast<int>(bin % axes_[2].count);
  const int j = static_cast<int>((bin / axes_[2].count) % axes_[1].count);
  const int i = static_cast<int>(bin / (static_cast<std::size_t>(axes_[2].count) * axes_[1].count));
  std::array<std::array<double, 2>, 3> box;
  const int idx[3] = {i, j, k};
  for (int a = 0; a < 3; ++a) {
    const double w = axes_[a].width();
    box[a] = {axes_[a].lo + idx[a] * w, axes_[a].lo + (idx[a] + 1) * w};
  }
  return box;
}

std::size_t VelocityGrid::bin_of(const VelocityCommand& cmd) const {
  const double v[3] = {cmd.vx, cmd.vy, cmd.wz};
  int idx[3];
  for (int a = 0; a < 3; ++a) {
    const int i = static_cast<int>(std::floor((v[a] - axes_[a].lo) / axes_[a].width()));
    idx[a] = std::clamp(i, 0, axes_[a].count - 1);
  }
  return bin_index(idx[0], idx[1], idx[2]);
}

VelocityCommand VelocityGrid::sample_command(std::mt19937_64& rng) const {
  std::size_t bin = 0;
  return sample_command(rng, bin);
}

VelocityCommand VelocityGrid::sample_command(std::mt19937_64& rng, std::size_t& bin_out) const {
  const double u = unit_interval(rng());
  double acc = 0.0;
  std::size_t bin = probs_.size() - 1;
  for (std::size_t b = 0; b < probs_.size(); ++b) {
    acc += probs_[b];
    if (u < acc) {
      bin = b;
      break;
    }
  }
  bin_out = bin;
  const auto box = bin_box(bin);
  double v[3];
  for (int a = 0; a < 3; ++a) v[a] = box[a][0] + (box[a][1] - box[a][0]) * unit_interval(rng());
  return {v[0], v[1], v[2]};
}

void VelocityGrid::update_probs(std::size_t bin, double observed_r_vel) {
  if (bin >= ema_.size()) throw std::out_of_range("curriculum bin out of range");
  if (!(observed_r_vel > 0.0 && observed_r_vel <= kMaxReward))
    throw std::invalid_argument("tracking reward must lie in (0, 2]");
  ema_[bin] = kEmaDecay * ema_[bin] + (1.0 - kEmaDecay) * observed_r_vel;
  renormalize();
}

void VelocityGrid::set_reward_ema(std::vector<double> ema) {
  if (ema.size() != ema_.size()) throw std::invalid_argument("EMA vector has the wrong size");
  for (double e : ema)
    if (!(e >= 0.0 && e <= kMaxReward)) throw std::invalid_argument("EMA values must lie in [0, 2]");
  ema_ = std::move(ema);
  renormalize();
}

// p_b = floor + (1 - epsilon) * (2 - ema_b) / sum(2 - ema); uniform when every bin is mastered.
void VelocityGrid::renormalize() {
  const double n = static_cast<double>(probs_.size());
  double total = 0.0;
  for (double e : ema_) total += kMaxReward - e;
  const double fl = floor();
  for (std::size_t b = 0; b < probs_.size(); ++b) {
    const double share = total > 0.0 ? (kMaxReward - ema_[b]) / total : 1.0 / n;
    probs_[b] = fl + (1.0 - epsilon_) * share;
  }
  // Push the rounding residue into the largest bin so the sum is 1 to within one ulp per bin.
  const double sum = std::accumulate(probs_.begin(), probs_.end(), 0.0);
  auto it = std::max_element(probs_.begin(), probs_.end());
  *it += 1.0 - sum;
}

void VelocityGrid::save(std::ostream& out) const {
  out << "velocity-grid 1\n";
  out << "epsilon " << fmt(epsilon_) << '\n';
  static const char* names[3] = {"vx", "vy", "wz"};
  for (int a = 0; a < 3; ++a)
    out << "axis " << names[a] << ' ' << fmt(axes_[a].lo) << ' ' << fmt(axes_[a].hi) << ' ' << axes_[a].count << '\n';
  out << "bins " << probs_.size() << '\n';
  for (std::size_t b = 0; b < probs_.size(); ++b) out << b << ' ' << fmt(probs_[b]) << ' ' << fmt(ema_[b]) << '\n';
}

VelocityGrid VelocityGrid::load(std::istream& in) {
  auto fail = [](const std::string& what) { throw std::runtime_error("curriculum state: " + what); };
  std::string word;
  int version = 0;
  if (!(in >> word >> version) || word != "velocity-grid" || version != 1) fail("bad header");
  std::string eps;
  if (!(in >> word >> eps) || word != "epsilon") fail("missing epsilon");
  AxisBins axes[3];
  for (auto& a : axes) {
    std::string name, lo, hi;
    if (!(in >> word >> name >> lo >> hi >> a.count) || word != "axis") fail("missing axis");
    a.lo = parse_double(lo);
    a.hi = parse_double(hi);
  }
  VelocityGrid grid(axes[0], axes[1], axes[2], parse_double(eps));
  std::size_t n = 0;
  if (!(in >> word >> n) || word != "bins" || n != grid.bin_count()) fail("bin count mismatch");
  std::vector<double> ema(n);
  for (std::size_t b = 0; b < n; ++b) {
    std::size_t idx = 0;
    std::string p, e;
    if (!(in >> idx >> p >> e) || idx != b) fail("bad bin line " + std::to_string(b));
    ema[b] = parse_double(e);
  }
  grid.set_reward_ema(std::move(ema));
  return grid;
}

void DensitySchedule::validate() const {
  if (!(current >= 0.0) || !(max >= current)) throw std::invalid_argument("density schedule needs 0 <= current <= max");
  if (!(step >= 0.0)) throw std::invalid_argument("density step must be nonnegative");
}

DensitySchedule maybe_promote(const DensitySchedule& sched, double mean_tracking_reward) {
  DensitySchedule next = sched;
  if (mean_tracking_reward >= sched.promote_threshold) next.current = std::min(sched.current + sched.step, sched.max);
  next.current = std::max(next.current, sched.current);
  return next;
}

}  // namespace semfoot
