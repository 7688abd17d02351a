#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "semfoot/gridmap.hpp"
#include "semfoot/scenario.hpp"
#include "semfoot/simulator.hpp"

namespace semfoot {

struct SweepOptions {
  std::vector<PolicyKind> policies{PolicyKind::Blind, PolicyKind::GeometricProxy, PolicyKind::Semantic};
  std::vector<double> densities{10.0, 15.0, 20.0, 25.0};
  int n_trials = 100;
  std::uint64_t base_seed = 7;
  ObstacleMode mode = ObstacleMode::Rigid;
  bool allow_stacking = false;
  double speed = 0.7;  // m/s forward
  double track_length = 10.0;
  double track_width = 2.0;
  ObstacleSizeRange sizes;
  ClassTable classes;
  SearchConfig search;
  SimConfig sim;
  Execution exec = Execution::Parallel;
  int threads = 0;  // 0 lets OpenMP decide
};

struct SweepCell {
  PolicyKind policy = PolicyKind::Semantic;
  double density = 0.0;
  double distance = 0.0;     // D, m, averaged over all trials
  double success = 0.0;      // S, %
  double collision = 0.0;    // C, % of footsteps
  int n_trials = 0;
};

struct SweepReport {
  std::vector<SweepCell> cells;  // policy-major, in option order
};

struct SweepResult {
  std::vector<TrialResult> trials;  // sorted by (policy, density, trial index)
  SweepReport report;
};

/// Seed of the world shared by every policy for (density, trial index).
std::uint64_t world_seed(std::uint64_t base_seed, double density, int trial);

/// Generates one world per (density, trial) and runs every policy on it.
SweepResult run_sweep(const SweepOptions& options);

/// S, D, C per (policy, density) from raw trials.
SweepReport aggregate(const std::vector<TrialResult>& trials, const std::vector<PolicyKind>& policies,
                      const std::vector<double>& densities);

enum class ReportFormat { Table, Csv };

/// Columns: policy, density, D, S, C, n (two decimals for the metrics).
std::string render_report(const SweepReport& report, ReportFormat format);
SweepReport read_report_csv(std::istream& in);

void write_trials_csv(std::ostream& out, const std::vector<TrialResult>& trials);

namespace kernels {
// Trial kernels over a flat (policy, density, trial) index space; the serial one is the reference.
void run_trials_serial(const SweepOptions& options, const std::vector<World>& worlds,
                       std::vector<TrialResult>& out);
void run_trials_parallel(const SweepOptions& options, const std::vector<World>& worlds,
                         std::vector<TrialResult>& out);
}  // namespace kernels

}  // namespace semfoot
