#include "semfoot/bench.hpp"

#include <omp.h>

#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace semfoot {

std::uint64_t world_seed(std::uint64_t base_seed, double density, int trial) {
  const auto d = static_cast<std::uint64_t>(std::llround(density * 1000.0));
  return mix_seed(mix_seed(base_seed) ^ mix_seed(d + 0x51ed270b27e5ULL) ^ static_cast<std::uint64_t>(trial));
}

namespace {

TrialResult run_one(const SweepOptions& opt, const std::vector<World>& worlds, std::size_t k) {
  const std::size_t nd = opt.densities.size();
  const std::size_t nt = static_cast<std::size_t>(opt.n_trials);
  const std::size_t p = k / (nd * nt);
  const std::size_t w = k % (nd * nt);
  const Policy policy{opt.policies[p], opt.search};
  return run_trial(worlds[w], policy, {opt.speed, 0.0, 0.0}, opt.sim);
}

TrackOptions track_options(const SweepOptions& opt, double density, std::uint64_t seed) {
  TrackOptions t;
  t.density = density;
  t.seed = seed;
  t.length = opt.track_length;
  t.width = opt.track_width;
  t.mode = opt.mode;
  t.allow_stacking = opt.allow_stacking;
  t.sizes = opt.sizes;
  t.classes = opt.classes;
  return t;
}

std::string fixed2(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

std::string shortest(double v) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

}  // namespace

namespace kernels {

void run_trials_serial(const SweepOptions& opt, const std::vector<World>& worlds, std::vector<TrialResult>& out) {
  out.resize(opt.policies.size() * worlds.size());
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = run_one(opt, worlds, k);
}

void run_trials_parallel(const SweepOptions& opt, const std::vector<World>& worlds, std::vector<TrialResult>& out) {
  out.resize(opt.policies.size() * worlds.size());
  const auto n = static_cast<std::int64_t>(out.size());
  std::vector<std::string> errors(out.size());
#pragma omp parallel for schedule(dynamic, 1) num_threads(opt.threads > 0 ? opt.threads : omp_get_max_threads())
  for (std::int64_t k = 0; k < n; ++k) {
    try {
      out[static_cast<std::size_t>(k)] = run_one(opt, worlds, static_cast<std::size_t>(k));
    } catch (const std::exception& e) {
      errors[static_cast<std::size_t>(k)] = e.what();
    }
  }
  for (const auto& e : errors)
    if (!e.empty()) throw std::runtime_error(e);
}

}  // namespace kernels

SweepResult run_sweep(const SweepOptions& opt) {
  if (opt.n_trials < 1) throw std::invalid_argument("sweep needs at least one trial");
  if (opt.policies.empty() || opt.densities.empty()) throw std::invalid_argument("sweep needs policies and densities");
  opt.search.validate();
  opt.sim.validate();

  const std::size_t nd = opt.densities.size();
  const std::size_t nt = static_cast<std::size_t>(opt.n_trials);
  std::vector<World> worlds(nd * nt);
  std::vector<std::string> errors(worlds.size());
  auto make_world = [&](std::size_t w) {
    const double density = opt.densities[w / nt];
    const int trial = static_cast<int>(w % nt);
    worlds[w] = generate_track(track_options(opt, density, world_seed(opt.base_seed, density, trial)));
  };
  if (opt.exec == Execution::Parallel) {
    const auto n = static_cast<std::int64_t>(worlds.size());
#pragma omp parallel for schedule(dynamic, 1) num_threads(opt.threads > 0 ? opt.threads : omp_get_max_threads())
    for (std::int64_t w = 0; w < n; ++w) {
      try {
        make_world(static_cast<std::size_t>(w));
      } catch (const std::exception& e) {
        errors[static_cast<std::size_t>(w)] = e.what();
      }
    }
    for (const auto& e : errors)
      if (!e.empty()) throw std::runtime_error(e);
  } else {
    for (std::size_t w = 0; w < worlds.size(); ++w) make_world(w);
  }

  SweepResult result;
  if (opt.exec == Execution::Parallel)
    kernels::run_trials_parallel(opt, worlds, result.trials);
  else
    kernels::run_trials_serial(opt, worlds, result.trials);
  result.report = aggregate(result.trials, opt.policies, opt.densities);
  return result;
}

SweepReport aggregate(const std::vector<TrialResult>& trials, const std::vector<PolicyKind>& policies,
                      const std::vector<double>& densities) {
  SweepReport report;
  for (PolicyKind p : policies) {
    for (double d : densities) {
      SweepCell cell;
      cell.policy = p;
      cell.density = d;
      double dist = 0.0;
      std::uint64_t successes = 0, steps = 0, colliding = 0;
      for (const auto& t : trials) {
        if (t.policy != p || t.density != d) continue;
        ++cell.n_trials;
        dist += t.distance;
        successes += t.success ? 1 : 0;
        steps += t.total_steps;
        colliding += t.colliding_steps;
      }
      if (cell.n_trials > 0) {
        cell.distance = dist / cell.n_trials;
        cell.success = 100.0 * static_cast<double>(successes) / cell.n_trials;
      }
      cell.collision = steps > 0 ? 100.0 * static_cast<double>(colliding) / static_cast<double>(steps) : 0.0;
      report.cells.push_back(cell);
    }
  }
  return report;
}

std::string render_report(const SweepReport& report, ReportFormat format) {
  std::ostringstream out;
  if (format == ReportFormat::Csv) {
    out << "policy,density,D,S,C,n\n";
    for (const auto& c : report.cells)
      out << to_string(c.policy) << ',' << shortest(c.density) << ',' << fixed2(c.distance) << ','
          << fixed2(c.success) << ',' << fixed2(c.collision) << ',' << c.n_trials << '\n';
    return out.str();
  }
  char line[160];
  std::snprintf(line, sizeof(line), "%-8s %10s %8s %8s %8s %6s\n", "policy", "density", "D(m)", "S(%)", "C(%)", "n");
  out << line;
  for (const auto& c : report.cells) {
    std::snprintf(line, sizeof(line), "%-8s %10s %8s %8s %8s %6d\n", to_string(c.policy), shortest(c.density).c_str(),
                  fixed2(c.distance).c_str(), fixed2(c.success).c_str(), fixed2(c.collision).c_str(), c.n_trials);
    out << line;
  }
  return out.str();
}

SweepReport read_report_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != "policy,density,D,S,C,n")
    throw std::runtime_error("report CSV: missing or unexpected header");
  SweepReport report;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::stringstream ss(line);
    for (std::string tok; std::getline(ss, tok, ',');) f.push_back(tok);
    if (f.size() != 6) throw std::runtime_error("report CSV line " + std::to_string(line_no) + ": expected 6 fields");
    auto num = [&](const std::string& s, const char* field) {
      double v = 0.0;
      auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
      if (ec != std::errc() || ptr != s.data() + s.size())
        throw std::runtime_error("report CSV line " + std::to_string(line_no) + ", field " + field + ": invalid number");
      return v;
    };
    SweepCell c;
    c.policy = parse_policy_kind(f[0]);
    c.density = num(f[1], "density");
    c.distance = num(f[2], "D");
    c.success = num(f[3], "S");
    c.collision = num(f[4], "C");
    c.n_trials = static_cast<int>(num(f[5], "n"));
    report.cells.push_back(c);
  }
  return report;
}

void write_trials_csv(std::ostream& out, const std::vector<TrialResult>& trials) {
  out << "policy,density,seed,distance,success,total_steps,colliding_steps,termination,time\n";
  for (const auto& t : trials)
    out << to_string(t.policy) << ',' << shortest(t.density) << ',' << t.seed << ',' << shortest(t.distance) << ','
        << (t.success ? 1 : 0) << ',' << t.total_steps << ',' << t.colliding_steps << ',' << to_string(t.termination)
        << ',' << shortest(t.time) << '\n';
}

}  // namespace semfoot
