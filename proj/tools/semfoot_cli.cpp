// Command-line front end: world generation, planning, trials, sweeps, map export and reports.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "semfoot/bench.hpp"
#include "semfoot/config.hpp"
#include "semfoot/foothold.hpp"
#include "semfoot/gridmap.hpp"
#include "semfoot/observation.hpp"
#include "semfoot/scenario.hpp"
#include "semfoot/simulator.hpp"

using namespace semfoot;

namespace {

struct GaitFlags {
  std::optional<double> frequency, duty, swing_height, stance_width, stance_length, base_height;

  void add(CLI::App* app) {
    app->add_option("--frequency", frequency, "Gait frequency (Hz)");
    app->add_option("--duty", duty, "Duty factor in (0, 1)");
    app->add_option("--swing-height", swing_height, "Footswing height (m)");
    app->add_option("--stance-width", stance_width, "Stance width (m)");
    app->add_option("--stance-length", stance_length, "Stance length (m)");
    app->add_option("--base-height", base_height, "Base height (m)");
  }
  void apply(BehaviorParams& p) const {
    if (frequency) p.frequency = *frequency;
    if (duty) p.duty = *duty;
    if (swing_height) p.swing_height = *swing_height;
    if (stance_width) p.stance_width = *stance_width;
    if (stance_length) p.stance_length = *stance_length;
    if (base_height) p.base_height = *base_height;
  }
};

struct Common {
  std::string config_path;
  GaitFlags gait;

  void add(CLI::App* app) {
    app->add_option("--config", config_path, "JSON settings file");
    gait.add(app);
  }
  Settings settings() const {
    Settings s = config_path.empty() ? Settings{} : load_settings(config_path);
    gait.apply(s.sim.params);
    s.sim.validate();
    return s;
  }
};

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  return out;
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> v;
  std::stringstream ss(text);
  for (std::string tok; std::getline(ss, tok, ',');) v.push_back(std::stod(tok));
  return v;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Semantic-aware foothold planning: planner, kinematic simulator and benchmark"};
  app.require_subcommand(1);

  // gen-world
  auto* gen = app.add_subcommand("gen-world", "Generate a seeded cluttered track");
  Common gen_common;
  gen_common.add(gen);
  double gen_density = 10.0, gen_length = 10.0, gen_width = 2.0;
  std::uint64_t gen_seed = 0;
  std::string gen_mode = "rigid", gen_out;
  bool gen_stacking = false;
  gen->add_option("--density", gen_density, "Obstacles per m^2")->check(CLI::NonNegativeNumber);
  gen->add_option("--seed", gen_seed, "RNG seed");
  gen->add_option("--length", gen_length, "Track length (m)");
  gen->add_option("--width", gen_width, "Track width (m)");
  gen->add_option("--mode", gen_mode, "rigid or virtual")->check(CLI::IsMember({"rigid", "virtual"}));
  gen->add_flag("--stacking", gen_stacking, "Allow overlapping (stacked) obstacles");
  gen->add_option("--out", gen_out, "Scenario file")->required();

  // plan
  auto* plan = app.add_subcommand("plan", "Plan footholds for one pose and command");
  Common plan_common;
  plan_common.add(plan);
  std::string plan_scenario, plan_policy = "sem", plan_csv;
  std::vector<double> plan_pose{0, 0, 0}, plan_cmd{0.7, 0, 0};
  plan->add_option("--scenario", plan_scenario, "Scenario file")->required();
  plan->add_option("--pose", plan_pose, "X Y YAW")->expected(3);
  plan->add_option("--cmd", plan_cmd, "VX VY WZ")->expected(3);
  plan->add_option("--policy", plan_policy, "blind, geo or sem");
  plan->add_option("--csv", plan_csv, "Also write the plan as CSV");

  // run-trial
  auto* trial = app.add_subcommand("run-trial", "Run one trial on a scenario");
  Common trial_common;
  trial_common.add(trial);
  std::string trial_scenario, trial_policy = "sem", traj_log, reward_log;
  std::vector<double> trial_cmd{0.7, 0, 0};
  double trial_max_time = 30.0;
  trial->add_option("--scenario", trial_scenario, "Scenario file")->required();
  trial->add_option("--policy", trial_policy, "blind, geo or sem");
  trial->add_option("--cmd", trial_cmd, "VX VY WZ")->expected(3);
  trial->add_option("--max-time", trial_max_time, "Time limit (s)");
  trial->add_option("--log-traj", traj_log, "Trajectory CSV");
  trial->add_option("--log-rewards", reward_log, "Per-step reward CSV");

  // run-sweep
  auto* sweep = app.add_subcommand("run-sweep", "Policy x density benchmark sweep");
  Common sweep_common;
  sweep_common.add(sweep);
  std::string sweep_policies = "blind,geo,sem", sweep_densities = "10,15,20,25", sweep_mode = "rigid", sweep_out,
              sweep_trials_out, sweep_format = "table";
  int sweep_trials = 100, sweep_threads = 0;
  std::uint64_t sweep_seed = 7;
  double sweep_speed = 0.7;
  bool sweep_serial = false, sweep_stacking = false;
  sweep->add_option("--policies", sweep_policies, "Comma-separated policies");
  sweep->add_option("--densities", sweep_densities, "Comma-separated densities");
  sweep->add_option("--trials", sweep_trials, "Paired trials per density")->check(CLI::PositiveNumber);
  sweep->add_option("--seed", sweep_seed, "Base seed");
  sweep->add_option("--mode", sweep_mode, "rigid or virtual")->check(CLI::IsMember({"rigid", "virtual"}));
  sweep->add_option("--speed", sweep_speed, "Forward command (m/s)");
  sweep->add_flag("--stacking", sweep_stacking, "Allow stacked obstacles");
  sweep->add_option("--out", sweep_out, "Report CSV");
  sweep->add_option("--trials-out", sweep_trials_out, "Per-trial CSV");
  sweep->add_option("--format", sweep_format, "Stdout format: table or csv")->check(CLI::IsMember({"table", "csv"}));
  sweep->add_option("--threads", sweep_threads, "Worker threads (0 = default)");
  sweep->add_flag("--serial", sweep_serial, "Use the serial reference kernels");

  // export-map
  auto* exp = app.add_subcommand("export-map", "Export the dual map around a pose as CSV");
  Common exp_common;
  exp_common.add(exp);
  std::string exp_scenario, exp_out;
  std::vector<double> exp_pose{0, 0, 0};
  exp->add_option("--scenario", exp_scenario, "Scenario file")->required();
  exp->add_option("--pose", exp_pose, "X Y YAW")->expected(3);
  exp->add_option("--out", exp_out, "CSV file (stdout if omitted)");

  // observe
  auto* obs = app.add_subcommand("observe", "Print the observation vector for a pose as text");
  Common obs_common;
  obs_common.add(obs);
  std::string obs_scenario;
  std::vector<double> obs_pose{0, 0, 0}, obs_cmd{0.7, 0, 0};
  obs->add_option("--scenario", obs_scenario, "Scenario file")->required();
  obs->add_option("--pose", obs_pose, "X Y YAW")->expected(3);
  obs->add_option("--cmd", obs_cmd, "VX VY WZ")->expected(3);

  // report
  auto* rep = app.add_subcommand("report", "Re-render a sweep report CSV");
  std::string rep_in, rep_format = "table";
  rep->add_option("--in", rep_in, "Report CSV")->required();
  rep->add_option("--format", rep_format, "table or csv")->check(CLI::IsMember({"table", "csv"}));

  // print-config
  auto* cfg = app.add_subcommand("print-config", "Print the effective settings as JSON");
  Common cfg_common;
  cfg_common.add(cfg);

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) {
      const Settings s = gen_common.settings();
      TrackOptions t;
      t.density = gen_density;
      t.seed = gen_seed;
      t.length = gen_length;
      t.width = gen_width;
      t.mode = parse_obstacle_mode(gen_mode);
      t.allow_stacking = gen_stacking;
      t.sizes = s.sizes;
      t.classes = s.classes;
      const World world = generate_track(t);
      save_world(gen_out, world);
      std::cout << "wrote " << world.obstacles().size() << " obstacles to " << gen_out << '\n';
    } else if (plan->parsed()) {
      const Settings s = plan_common.settings();
      const World world = load_world(plan_scenario);
      const Pose2D pose(plan_pose[0], plan_pose[1], plan_pose[2]);
      const VelocityCommand cmd{plan_cmd[0], plan_cmd[1], plan_cmd[2]};
      const Simulator sim(world, {parse_policy_kind(plan_policy), s.search}, s.sim);
      const DualMap map = sample_dual_map(world, pose, s.sim.map_spec, s.sim.map_noise);
      std::ostringstream csv;
      csv << "leg,nominal_x,nominal_y,raibert_x,raibert_y,target_x,target_y,cost,collision_free\n";
      std::printf("%-4s %18s %18s %18s %10s %s\n", "leg", "nominal", "raibert", "target", "cost", "free");
      for (Leg leg : kAllLegs) {
        const LegPlan p = sim.plan_for(leg, cmd, pose, &map);
        std::printf("%-4s (%7.4f,%7.4f) (%7.4f,%7.4f) (%7.4f,%7.4f) %10.4f %s\n", leg_name(leg), p.nominal.x,
                    p.nominal.y, p.raibert.x, p.raibert.y, p.target.x, p.target.y, p.cost,
                    p.collision_free ? "yes" : "no");
        csv << leg_name(leg) << ',' << p.nominal.x << ',' << p.nominal.y << ',' << p.raibert.x << ',' << p.raibert.y
            << ',' << p.target.x << ',' << p.target.y << ',' << p.cost << ',' << (p.collision_free ? 1 : 0) << '\n';
      }
      if (!plan_csv.empty()) open_out(plan_csv) << csv.str();
    } else if (trial->parsed()) {
      Settings s = trial_common.settings();
      s.sim.max_time = trial_max_time;
      const World world = load_world(trial_scenario);
      std::ofstream traj, rew;
      TrialLogs logs;
      if (!traj_log.empty()) {
        traj = open_out(traj_log);
        logs.trajectory = &traj;
      }
      if (!reward_log.empty()) {
        rew = open_out(reward_log);
        logs.rewards = &rew;
      }
      const TrialResult r = run_trial(world, {parse_policy_kind(trial_policy), s.search},
                                      {trial_cmd[0], trial_cmd[1], trial_cmd[2]}, s.sim, logs);
      std::printf("policy=%s termination=%s distance=%.3f time=%.2f steps=%llu colliding=%llu\n",
                  to_string(r.policy), to_string(r.termination), r.distance, r.time,
                  static_cast<unsigned long long>(r.total_steps), static_cast<unsigned long long>(r.colliding_steps));
    } else if (sweep->parsed()) {
      const Settings s = sweep_common.settings();
      SweepOptions o;
      o.policies.clear();
      std::stringstream ps(sweep_policies);
      for (std::string tok; std::getline(ps, tok, ',');) o.policies.push_back(parse_policy_kind(tok));
      o.densities = parse_list(sweep_densities);
      o.n_trials = sweep_trials;
      o.base_seed = sweep_seed;
      o.mode = parse_obstacle_mode(sweep_mode);
      o.allow_stacking = sweep_stacking;
      o.speed = sweep_speed;
      o.sizes = s.sizes;
      o.classes = s.classes;
      o.search = s.search;
      o.sim = s.sim;
      o.exec = sweep_serial ? Execution::Serial : Execution::Parallel;
      o.threads = sweep_threads;
      const SweepResult r = run_sweep(o);
      std::cout << render_report(r.report, sweep_format == "csv" ? ReportFormat::Csv : ReportFormat::Table);
      if (!sweep_out.empty()) open_out(sweep_out) << render_report(r.report, ReportFormat::Csv);
      if (!sweep_trials_out.empty()) {
        auto out = open_out(sweep_trials_out);
        write_trials_csv(out, r.trials);
      }
    } else if (exp->parsed()) {
      const Settings s = exp_common.settings();
      const World world = load_world(exp_scenario);
      const DualMap map = sample_dual_map(world, Pose2D(exp_pose[0], exp_pose[1], exp_pose[2]), s.sim.map_spec,
                                          s.sim.map_noise);
      if (exp_out.empty()) {
        write_map_csv(std::cout, map);
      } else {
        auto out = open_out(exp_out);
        write_map_csv(out, map);
      }
    } else if (obs->parsed()) {
      const Settings s = obs_common.settings();
      const World world = load_world(obs_scenario);
      const Pose2D pose(obs_pose[0], obs_pose[1], obs_pose[2]);
      const DualMap map = sample_dual_map(world, pose, s.sim.map_spec, s.sim.map_noise);
      Proprio prop;
      prop.v_hat = {obs_cmd[0], obs_cmd[1], 0.0};
      prop.omega = {0.0, 0.0, obs_cmd[2]};
      const BehaviorParams params = with_timers(s.sim.params, gait_at(0.0, s.sim.params));
      write_observation_text(std::cout, assemble({obs_cmd[0], obs_cmd[1], obs_cmd[2]}, params, prop, map));
    } else if (rep->parsed()) {
      std::ifstream in(rep_in);
      if (!in) throw std::runtime_error("cannot open '" + rep_in + "'");
      std::cout << render_report(read_report_csv(in), rep_format == "csv" ? ReportFormat::Csv : ReportFormat::Table);
    } else if (cfg->parsed()) {
      std::cout << dump_settings(cfg_common.settings());
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
