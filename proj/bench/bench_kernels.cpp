// Times the serial reference kernels against the OpenMP ones and checks they agree.

#include <omp.h>

#include <chrono>
#include <cstdio>

#include "CLI11.hpp"
#include "semfoot/bench.hpp"
#include "semfoot/gridmap.hpp"

using namespace semfoot;

namespace {

template <class Fn>
double best_of(int reps, Fn&& fn) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    fn();
    best = std::min(best, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
  }
  return best;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"serial vs parallel kernel timings"};
  int maps = 2000, trials = 20, reps = 3, threads = 0;
  app.add_option("--maps", maps, "Map samples per timing run");
  app.add_option("--trials", trials, "Paired trials per density in the sweep timing");
  app.add_option("--reps", reps, "Repetitions; the best time is reported");
  app.add_option("--threads", threads, "OpenMP threads (0 = default)");
  CLI11_PARSE(app, argc, argv);
  if (threads > 0) omp_set_num_threads(threads);

  std::printf("threads: %d\n", omp_get_max_threads());

  TrackOptions topt;
  topt.density = 25;
  topt.seed = 1;
  const World world = generate_track(topt);
  const GridSpec spec;
  const HeightNoise noise{0.005, 2};
  DualMap serial, parallel;
  auto pose = [](int k) { return Pose2D{1.0 + 8.0 * k / 2000.0, 0.1, 0.01 * k}; };

  const double t_ms = best_of(reps, [&] {
    for (int k = 0; k < maps; ++k) kernels::sample_cells_serial(world, pose(k), spec, noise, serial);
  });
  const double t_mp = best_of(reps, [&] {
    for (int k = 0; k < maps; ++k) kernels::sample_cells_parallel(world, pose(k), spec, noise, parallel);
  });
  bool maps_agree = true;
  for (int k = 0; k < 50; ++k) {
    kernels::sample_cells_serial(world, pose(k), spec, noise, serial);
    kernels::sample_cells_parallel(world, pose(k), spec, noise, parallel);
    maps_agree = maps_agree && serial.elevation.heights == parallel.elevation.heights &&
                 serial.semantic.costs == parallel.semantic.costs;
  }
  std::printf("map sampling   %6d maps  serial %8.3f s  parallel %8.3f s  speedup %5.2fx  %s\n", maps, t_ms, t_mp,
              t_ms / t_mp, maps_agree ? "identical" : "MISMATCH");

  SweepOptions opt;
  opt.n_trials = trials;
  SweepResult rs, rp;
  opt.exec = Execution::Serial;
  const double t_ss = best_of(reps, [&] { rs = run_sweep(opt); });
  opt.exec = Execution::Parallel;
  opt.threads = threads;
  const double t_sp = best_of(reps, [&] { rp = run_sweep(opt); });
  const bool sweeps_agree = rs.trials == rp.trials;
  std::printf("sweep          %6zu runs  serial %8.3f s  parallel %8.3f s  speedup %5.2fx  %s\n", rs.trials.size(),
              t_ss, t_sp, t_ss / t_sp, sweeps_agree ? "identical" : "MISMATCH");
  return maps_agree && sweeps_agree ? 0 : 1;
}
