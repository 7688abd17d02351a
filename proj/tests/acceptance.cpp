// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <map>
#include <numeric>
#include <random>
#include <sstream>
#include <string>

#include <unistd.h>

#include "CLI11.hpp"
#include "oracles.hpp"
#include "semfoot/bench.hpp"
#include "semfoot/curriculum.hpp"
#include "semfoot/foothold.hpp"
#include "semfoot/gait.hpp"
#include "semfoot/observation.hpp"
#include "semfoot/reward.hpp"
#include "semfoot/simulator.hpp"

using namespace semfoot;
using Clock = std::chrono::steady_clock;

namespace {

struct Verdict {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& why) {
    if (!ok && pass) detail = why;
    pass = pass && ok;
  }
};

int failures = 0;

void report(int id, const char* name, const Verdict& v, double seconds) {
  std::printf("[%s] %d %s (%.2f s)%s%s\n", v.pass ? "PASS" : "FAIL", id, name, seconds,
              v.detail.empty() ? "" : ": ", v.detail.c_str());
  std::fflush(stdout);
  failures += v.pass ? 0 : 1;
}

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof(buf), f, a, b, c);
  return buf;
}

// 1. select_target against exhaustive enumeration.
void foothold_oracle() {
  const auto t0 = Clock::now();
  Verdict v;
  std::mt19937_64 rng(101);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const BehaviorParams p;
  for (int inst = 0; inst < 1000 && v.pass; ++inst) {
    const World w = oracle::random_clutter(rng, 4 + static_cast<int>(rng() % 20));
    SearchConfig cfg;
    cfg.side = 3 + 2 * (inst % 4);
    cfg.spacing = 0.01 + 0.03 * unit_interval(rng());
    cfg.foot_radius = 0.03 * unit_interval(rng());
    cfg.w_dev = 0.5 + unit_interval(rng());
    cfg.w_col = cfg.collision_weight_bound() * (1.0 + 5.0 * unit_interval(rng())) + 1e-6;
    const Pose2D base{0.1 * u(rng), 0.1 * u(rng), std::numbers::pi * u(rng)};
    const VelocityCommand cmd{u(rng), 0.5 * u(rng), u(rng)};
    const FootholdPlan plan = select_target(p, cmd, base, w, cfg);
    for (Leg leg : kAllLegs) {
      const auto want = oracle::best_candidate(raibert_position(p, cmd, leg), cfg, [&](Vec2 q) {
        return collision_indicator(q, base, w, cfg.foot_radius);
      });
      const auto& got = plan.legs[index(leg)];
      v.require(got.target == want.p && got.cost == want.cost,
                "instance " + std::to_string(inst) + " leg " + leg_name(leg) + " differs from enumeration");
    }
  }
  const double s = seconds_since(t0);
  v.require(s < 10.0, fmt("runtime %.2f s exceeds 10 s", s));
  report(1, "foothold oracle equivalence over 1000 instances, M in {3,5,7,9}", v, s);
}

// 2. Free candidates always win above the bound; 10x w_col leaves the argmin alone.
void safety_dominance() {
  const auto t0 = Clock::now();
  Verdict v;
  std::mt19937_64 rng(202);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const BehaviorParams p;
  int windows = 0, attempts = 0;
  while (windows < 10000 && attempts < 100000) {
    ++attempts;
    const World w = oracle::random_clutter(rng, 10 + static_cast<int>(rng() % 40));
    SearchConfig cfg;
    cfg.side = 3 + 2 * static_cast<int>(rng() % 4);
    cfg.spacing = 0.01 + 0.03 * unit_interval(rng());
    // Anything strictly above the bound, including values just above it.
    cfg.w_col = cfg.collision_weight_bound() * (1.0 + (attempts % 2 ? 1e-9 : 4.0 * unit_interval(rng())));
    if (!(cfg.w_col > cfg.collision_weight_bound())) cfg.w_col = std::nextafter(cfg.collision_weight_bound(), 1e9);
    const Leg leg = kAllLegs[rng() % 4];
    const VelocityCommand cmd{u(rng), 0.5 * u(rng), u(rng)};
    const Pose2D base{0.1 * u(rng), 0.1 * u(rng), std::numbers::pi * u(rng)};
    const auto hit = [&](Vec2 q) { return collision_indicator(q, base, w, cfg.foot_radius); };
    std::vector<oracle::Candidate> all;
    oracle::best_candidate(raibert_position(p, cmd, leg), cfg, hit, &all);
    if (std::none_of(all.begin(), all.end(), [](const auto& c) { return !c.hit; })) continue;
    ++windows;
    const LegPlan a = plan_leg(p, cmd, leg, cfg, hit);
    SearchConfig big = cfg;
    big.w_col *= 10.0;
    const LegPlan b = plan_leg(p, cmd, leg, big, hit);
    v.require(a.collision_free, "window " + std::to_string(windows) + " picked a colliding candidate");
    v.require(a.target == b.target, "window " + std::to_string(windows) + " changed under 10x w_col");
  }
  v.require(windows == 10000, "only " + std::to_string(windows) + " windows with a free candidate");
  report(2, "safety dominance over 10000 windows and 10x w_col argmin invariance", v, seconds_since(t0));
}

// 3 and 4 share one sweep.
void sweep_orderings() {
  const auto t0 = Clock::now();
  SweepOptions opt;  // blind/geo/sem, densities 10..25, 100 paired seeds, base seed 7, rigid, 0.7 m/s
  const SweepResult r = run_sweep(opt);
  const double s = seconds_since(t0);
  std::map<std::pair<PolicyKind, double>, SweepCell> cell;
  for (const auto& c : r.report.cells) cell[{c.policy, c.density}] = c;
  std::fputs(render_report(r.report, ReportFormat::Table).c_str(), stdout);

  Verdict v3;
  std::map<PolicyKind, double> colliding, steps;
  for (const auto& t : r.trials) {
    colliding[t.policy] += static_cast<double>(t.colliding_steps);
    steps[t.policy] += static_cast<double>(t.total_steps);
  }
  for (double d : opt.densities) {
    const double cb = cell[{PolicyKind::Blind, d}].collision;
    const double cs = cell[{PolicyKind::Semantic, d}].collision;
    v3.require(cs <= 0.3 * cb, fmt("density %g: sem C %.2f > 0.3 x blind C %.2f", d, cs, cb));
  }
  const double agg_b = 100.0 * colliding[PolicyKind::Blind] / steps[PolicyKind::Blind];
  const double agg_g = 100.0 * colliding[PolicyKind::GeometricProxy] / steps[PolicyKind::GeometricProxy];
  const double agg_s = 100.0 * colliding[PolicyKind::Semantic] / steps[PolicyKind::Semantic];
  v3.require(agg_s < agg_g && agg_g < agg_b,
             fmt("aggregate C not ordered: sem %.2f, geo %.2f, blind %.2f", agg_s, agg_g, agg_b));
  v3.require(s < 300.0, fmt("runtime %.1f s exceeds 5 min", s));
  v3.detail = v3.pass ? fmt("aggregate C sem %.2f < geo %.2f < blind %.2f", agg_s, agg_g, agg_b) : v3.detail;
  report(3, "collision-rate ordering, 100 paired seeds x 4 densities, rigid, 0.7 m/s", v3, s);

  Verdict v4;
  for (PolicyKind k : opt.policies) {
    int inversions = 0;
    for (std::size_t i = 1; i < opt.densities.size(); ++i) {
      const double prev = cell[{k, opt.densities[i - 1]}].success;
      const double cur = cell[{k, opt.densities[i]}].success;
      if (cur > prev) {
        ++inversions;
        v4.require(cur - prev <= 2.0 + 1e-9, std::string(to_string(k)) + fmt(": S rises by %.2f points", cur - prev));
      }
    }
    v4.require(inversions <= 1, std::string(to_string(k)) + ": more than one S inversion");
  }
  for (double d : opt.densities) {
    const double sb = cell[{PolicyKind::Blind, d}].success;
    const double ss = cell[{PolicyKind::Semantic, d}].success;
    v4.require(sb < ss, fmt("density %g: blind S %.2f not below sem S %.2f", d, sb, ss));
  }
  report(4, "success rate non-increasing in density, blind below semantic", v4, 0.0);
}

// 5. Reward ranges, gradient, identity and zero clearance under exact tracking.
void reward_analytics() {
  const auto t0 = Clock::now();
  Verdict v;
  const RewardConfig cfg;
  std::mt19937_64 rng(505);
  std::uniform_real_distribution<double> u(-3.0, 3.0), phi(0.0, 1.0);
  for (int i = 0; i < 100000; ++i) {
    const double r = velocity_tracking({u(rng), u(rng)}, {u(rng), u(rng), u(rng)}, u(rng), cfg);
    v.require(r > 0.0 && r <= 2.0, fmt("r_vel %.17g outside (0, 2]", r));
    PerLeg<Vec2> feet, targets;
    GaitState g;
    for (std::size_t k = 0; k < kNumLegs; ++k) {
      feet[k] = {0.1 * u(rng), 0.1 * u(rng)};
      targets[k] = {0.1 * u(rng), 0.1 * u(rng)};
      g.in_contact[k] = rng() % 2;
    }
    const double s = semantic_foothold_tracking(feet, targets, g, cfg);
    v.require(s >= 0.0 && s <= 4.0, fmt("r_sem %.17g outside [0, 4]", s));
  }
  double worst_rel = 0.0;
  for (int i = 0; i < 100; ++i) {
    const VelocityCommand cmd{u(rng) / 3, u(rng) / 6, 0.0};
    const Vec2 x{cmd.vx + 0.3 * u(rng) / 3, cmd.vy + 0.3 * u(rng) / 3};
    const Vec2 g = velocity_tracking_gradient(x, cmd, cfg);
    const double h = 1e-6;
    const double fx = (velocity_tracking({x.x + h, x.y}, cmd, 0, cfg) - velocity_tracking({x.x - h, x.y}, cmd, 0, cfg)) / (2 * h);
    const double fy = (velocity_tracking({x.x, x.y + h}, cmd, 0, cfg) - velocity_tracking({x.x, x.y - h}, cmd, 0, cfg)) / (2 * h);
    const double rel = std::hypot(g.x - fx, g.y - fy) / std::max(std::hypot(g.x, g.y), 1e-12);
    worst_rel = std::max(worst_rel, rel);
  }
  v.require(worst_rel <= 1e-5, fmt("gradient relative error %.3g > 1e-5", worst_rel));
  for (int i = 0; i < 1000; ++i) {
    const double primary = std::abs(u(rng));
    v.require(compose_total(primary, 0.0, 0.1) == primary, "total != r_primary at zero penalty");
  }
  // Clearance with feet exactly on the reference, directly and inside the simulator.
  const BehaviorParams p;
  for (int i = 0; i < 1000; ++i) {
    GaitState g;
    PerLeg<double> z{};
    for (std::size_t k = 0; k < kNumLegs; ++k) {
      g.in_contact[k] = rng() % 2;
      g.swing_progress[k] = g.in_contact[k] ? 0.0 : phi(rng);
      z[k] = g.in_contact[k] ? 0.0 : swing_reference_height(g.swing_progress[k], p.swing_height, cfg.delta_z);
    }
    v.require(clearance_penalty(z, g, p, cfg) == 0.0, "nonzero clearance under exact tracking");
  }
  TrackOptions topt;
  topt.density = 15;
  topt.seed = 5;
  const World w = generate_track(topt);
  const Simulator sim(w, {PolicyKind::Semantic, {}}, SimConfig{});
  const VelocityCommand cmd{0.7, 0, 0};
  RobotState st = sim.initial_state(cmd);
  for (int k = 0; k < 500; ++k) {
    const StepOutcome o = sim.step(st, cmd);
    v.require(o.reward.penalties[0].second == 0.0, "simulator clearance penalty nonzero under default tracker");
    if (o.terminated != Termination::Running) break;
    st = o.new_state;
  }
  report(5, "reward ranges over 1e5 inputs, gradient, multiplicative identity, zero clearance", v,
         seconds_since(t0));
}

// 6. Swing reference end points, apex and the rapid-liftoff property.
void swing_profile() {
  const auto t0 = Clock::now();
  Verdict v;
  for (double s : {0.0, 0.05, 0.09, 0.12, 0.2}) {
    v.require(std::abs(swing_reference_height(0.0, s) - 0.02) <= 1e-12, "z_ref(0) != 0.02");
    v.require(std::abs(swing_reference_height(1.0, s) - 0.02) <= 1e-12, "z_ref(1) != 0.02");
    v.require(std::abs(swing_reference_height(0.5, s) - (s + 0.02)) <= 1e-12, "z_ref(0.5) != s + 0.02");
  }
  for (int k = 0; k <= 100000; ++k) {
    const double phi = k / 100000.0;
    const double sn = std::max(0.0, std::sin(std::numbers::pi * phi));
    v.require(std::sqrt(sn) >= sn, fmt("sqrt(sin) < sin at phi %.6f", phi));
    v.require(swing_reference_height(phi, 1.0, 0.0) >= sn - 1e-15, fmt("profile below sin at phi %.6f", phi));
  }
  report(6, "swing profile end points, apex and rapid liftoff", v, seconds_since(t0));
}

// 7. Observation length, block sizes and bit-exact round trip.
void observation_contract() {
  const auto t0 = Clock::now();
  Verdict v;
  const std::size_t sizes[5] = {3, 13, 57, 720, 720};
  std::size_t off = 0;
  for (std::size_t b = 0; b < 5; ++b) {
    v.require(obs_layout::kBlocks[b].size == sizes[b] && obs_layout::kBlocks[b].offset == off,
              std::string("block ") + obs_layout::kBlocks[b].name + " misplaced");
    off += sizes[b];
  }
  v.require(off == 1513, "block sizes do not sum to 1513");
  std::mt19937_64 rng(707);
  std::uniform_real_distribution<double> u(-10.0, 10.0);
  auto same = [](double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; };
  for (int trial = 0; trial < 200; ++trial) {
    const VelocityCommand cmd{u(rng), u(rng), u(rng)};
    BehaviorParams p;
    for (double* f : {&p.base_height, &p.swing_height, &p.frequency, &p.duty, &p.stance_width, &p.stance_length})
      *f = u(rng);
    for (auto& o : p.phase_offsets) o = u(rng);
    for (auto& t : p.contact_timers) t = u(rng);
    Proprio prop;
    for (auto* a : {&prop.v_hat, &prop.omega, &prop.gravity})
      for (auto& x : *a) x = u(rng);
    for (auto* a : {&prop.q, &prop.dq, &prop.a_prev1, &prop.a_prev2})
      for (auto& x : *a) x = u(rng);
    DualMap m = sample_dual_map(World(), {});
    for (auto& h : m.elevation.heights) h = u(rng);
    for (auto& c : m.semantic.costs) c = u(rng);
    const ObservationVector o = assemble(cmd, p, prop, m);
    v.require(o.values.size() == 1513, "assembled length != 1513");
    const ObservationFields f = disassemble(o);
    bool ok = f.cmd == cmd && f.behavior == p && f.proprio == prop;
    for (std::size_t i = 0; i < 720; ++i)
      ok = ok && same(f.elevation[i], m.elevation.heights[i]) && same(f.semantic[i], m.semantic.costs[i]);
    v.require(ok, "round trip lost bits in trial " + std::to_string(trial));
  }
  report(7, "observation length 1513, blocks 3/13/57/720/720, bit-exact round trip", v, seconds_since(t0));
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// 8. Byte-identical sweep CSV across runs.
void determinism(const std::string& cli) {
  const auto t0 = Clock::now();
  Verdict v;
  if (!cli.empty()) {
    const auto dir = std::filesystem::temp_directory_path() / ("semfoot_acceptance_" + std::to_string(::getpid()));
    std::filesystem::create_directories(dir);
    std::string outputs[3];
    const char* extra[3] = {"", "", " --serial"};
    for (int run = 0; run < 3; ++run) {
      const auto out = dir / ("run" + std::to_string(run) + ".csv");
      const std::string cmd = "\"" + cli + "\" run-sweep --trials 20 --seed 7 --mode rigid --format csv --out \"" +
                              out.string() + "\"" + extra[run] + " > /dev/null";
      v.require(std::system(cmd.c_str()) == 0, "run-sweep exited with an error");
      outputs[run] = slurp(out);
    }
    std::filesystem::remove_all(dir);
    v.require(!outputs[0].empty(), "empty CSV");
    v.require(outputs[0] == outputs[1], "two runs differ");
    v.require(outputs[0] == outputs[2], "parallel and serial runs differ");
  } else {
    SweepOptions opt;
    opt.n_trials = 20;
    const std::string a = render_report(run_sweep(opt).report, ReportFormat::Csv);
    const std::string b = render_report(run_sweep(opt).report, ReportFormat::Csv);
    v.require(a == b, "two runs differ");
    v.detail = "library path, no CLI given";
  }
  report(8, "run-sweep CSV byte-identical across runs", v, seconds_since(t0));
}

// 9. Curriculum distribution invariants and monotone density schedule.
void curriculum() {
  const auto t0 = Clock::now();
  Verdict v;
  VelocityGrid grid;
  std::mt19937_64 rng(909);
  std::uniform_real_distribution<double> r(1e-9, 2.0);
  auto check = [&](const VelocityGrid& g) {
    const double sum = std::accumulate(g.probs().begin(), g.probs().end(), 0.0);
    v.require(std::abs(sum - 1.0) <= 1e-9, fmt("probabilities sum to %.17g", sum));
    const double lo = *std::min_element(g.probs().begin(), g.probs().end());
    v.require(lo >= g.floor() - 1e-15, fmt("bin probability %.3g below floor %.3g", lo, g.floor()));
  };
  check(grid);
  for (int i = 0; i < 20000; ++i) {
    const std::size_t bin = rng() % grid.bin_count();
    grid.update_probs(bin, (i % 3 == 0) ? 2.0 : r(rng));
    if (i % 100 == 0) check(grid);
  }
  check(grid);
  grid.set_reward_ema(std::vector<double>(grid.bin_count(), 2.0));
  check(grid);
  for (int seq = 0; seq < 10000; ++seq) {
    DensitySchedule s{0.0, 25.0, 5.0, 1.6};
    for (int i = 0; i < 20; ++i) {
      const DensitySchedule next = maybe_promote(s, 2.0 * unit_interval(rng()));
      v.require(next.current >= s.current && next.current <= next.max, "density schedule decreased or overflowed");
      s = next;
    }
  }
  report(9, "curriculum probabilities sum to 1 with floor, density never decreases", v, seconds_since(t0));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance gate"};
  std::string cli;
  app.add_option("--cli", cli, "Path to the semfoot executable for the CLI determinism check");
  CLI11_PARSE(app, argc, argv);

  foothold_oracle();
  safety_dominance();
  sweep_orderings();
  reward_analytics();
  swing_profile();
  observation_contract();
  determinism(cli);
  curriculum();
  std::printf("%d of 9 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
