// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fail.
//
//   acceptance            all criteria
//   acceptance 1 5 7      a subset

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "snapinf/bench/commands.hpp"
#include "snapinf/bench/parallel.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace snapinf;
using snapinf::testing::fixture_path;
using snapinf::testing::load_fixture;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) { return std::chrono::duration<double>(Clock::now() - start).count(); }

struct Verdict {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* format, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, format, v);
  return buf;
}

struct Estimate {
  double mean = 0.0;
  double se = 0.0;
};

Estimate plain(const Domain& d, policy::Policy& policy, State x, Goal g, samplers::Method method, std::size_t n,
               std::uint64_t seed, double alpha = 1.0, double depth = 5.0) {
  samplers::SamplerConfig c;
  c.n_samples = n;
  c.seed = seed;
  c.alpha = alpha;
  c.depth = depth;
  c.max_forward_steps = samplers::default_max_forward_steps(d);
  const auto e = samplers::estimate_likelihood(d, policy, x, g, c, method);
  return {e.mean, e.standard_error()};
}

/// Cached bdpt as `replicates` independent runs, each with its own cache;
/// the standard error comes from the spread of the replicate means.
Estimate cached(const Domain& d, policy::Policy& policy, State x, Goal g, std::size_t replicates, std::size_t n,
                std::size_t rollouts, std::uint64_t seed) {
  std::vector<double> means;
  for (std::size_t r = 0; r < replicates; ++r) {
    samplers::SamplerConfig c;
    c.n_samples = n;
    c.seed = derive_seed(seed, StreamKind::kTrial, r, 0);
    c.use_cache = true;
    c.cache_rollouts = rollouts;
    c.max_forward_steps = samplers::default_max_forward_steps(d);
    means.push_back(samplers::estimate_likelihood(d, policy, x, g, c, samplers::Method::kBdpt).mean);
  }
  double m = 0.0;
  for (double v : means) m += v;
  m /= static_cast<double>(means.size());
  double ss = 0.0;
  for (double v : means) ss += (v - m) * (v - m);
  const double k = static_cast<double>(means.size());
  return {m, std::sqrt(ss / (k - 1.0) / k)};
}

/// |a - b| in units of the combined standard error. Zero error on both sides
/// demands exact agreement.
double z_of(double a, double sa, double b, double sb) {
  const double se = std::sqrt(sa * sa + sb * sb);
  const double diff = std::abs(a - b);
  if (se == 0.0) return diff <= 1e-12 ? 0.0 : std::numeric_limits<double>::infinity();
  return diff / se;
}

// ---- 1 ----------------------------------------------------------------------

Verdict oracle_unbiasedness() {
  const auto start = Clock::now();
  constexpr std::size_t kSamples = 100000;
  constexpr double kZ = 3.0;
  double worst = 0.0;
  std::string worst_at;
  std::size_t checks = 0;
  bool anchor_ok = true;

  auto check_state = [&](const Domain& d, policy::Policy& policy, State x, Goal g, const std::string& label,
                         std::uint64_t seed) {
    const auto oracle = snapinf::testing::enumerate_likelihood(d, policy, x, g, 1e-9);
    const Estimate estimates[3] = {
        plain(d, policy, x, g, samplers::Method::kRejection, kSamples, derive_seed(seed, StreamKind::kTrial, 0, 0)),
        plain(d, policy, x, g, samplers::Method::kBdpt, kSamples, derive_seed(seed, StreamKind::kTrial, 1, 0)),
        cached(d, policy, x, g, 20, kSamples / 20, 200, derive_seed(seed, StreamKind::kTrial, 2, 0)),
    };
    const char* names[3] = {"rejection", "bdpt", "bdpt+cache"};
    for (int k = 0; k < 3; ++k) {
      const double z = z_of(estimates[k].mean, estimates[k].se, oracle.likelihood, 0.0);
      ++checks;
      if (z > worst) {
        worst = z;
        worst_at = label + " " + d.format_state(x) + " " + names[k];
      }
    }
    return oracle.likelihood;
  };

  const auto chain = load_fixture("chain.txt");
  {
    auto policy = policy::make_policy(*chain, policy::PolicyConfig{});
    std::uint64_t seed = 100;
    for (State x : snapinf::testing::all_states(*chain)) {
      const double p = check_state(*chain, *policy, x, Goal{0}, "chain", seed++);
      if (x == chain->parse_state("1")) anchor_ok = std::abs(p - 7.0 / 36.0) < 1e-12;
    }
  }
  for (int n : {3, 4}) {
    const auto grid = snapinf::testing::open_grid(n, n, {{n - 1, n - 1}});
    for (double beta : {1.0, 2.0}) {
      policy::PolicyConfig pc;
      pc.beta = beta;
      auto policy = policy::make_policy(grid, pc);
      // A start cell, the diagonal, an off-route corner and the goal itself.
      std::set<domains::Cell> cells{{0, 0}, {1, 1}, {n - 1, 0}, {0, n - 1}, {n - 2, n - 1}, {n - 1, n - 1}};
      std::uint64_t seed = 1000 * static_cast<std::uint64_t>(n) + static_cast<std::uint64_t>(beta * 10);
      for (domains::Cell c : cells) {
        check_state(grid, *policy, grid.encode({c, 0, 0}), Goal{0},
                    std::to_string(n) + "x" + std::to_string(n) + " beta=" + fmt("%g", beta), seed++);
      }
    }
  }
  const double t = seconds_since(start);
  Verdict v;
  v.pass = worst <= kZ && anchor_ok && t < 60.0;
  v.detail = std::to_string(checks) + " estimator/state checks at 1e5 samples, max |z| = " + fmt("%.2f", worst) +
             " (" + worst_at + "), chain p(1) = 7/36 " + (anchor_ok ? "exact" : "WRONG") + ", " + fmt("%.1f", t) +
             " s (limit 60)";
  return v;
}

// ---- 2 ----------------------------------------------------------------------

Verdict correctness_command() {
  const auto start = Clock::now();
  bench::CorrectnessOptions options;
  options.threads = bench::default_threads();
  const auto report = bench::run_correctness(options);
  const double t = seconds_since(start);
  Verdict v;
  v.pass = report.passed && report.cells.size() == 16 && t < 120.0;
  v.detail = "16 cells x 3 estimators at " + std::to_string(options.samples) + " samples, max |z| = " +
             fmt("%.2f", report.max_abs_z) + " (limit 3), max relative deviation = " +
             fmt("%.3f", report.max_relative_deviation) + ", " + fmt("%.1f", t) + " s (limit 120)";
  return v;
}

// ---- 3 and 4 share one benchmark run -----------------------------------------

struct BenchmarkOutcome {
  std::vector<bench::BenchmarkRow> rows;
  double seconds = 0.0;
  bool ran = false;
};

BenchmarkOutcome& benchmark_outcome() {
  static BenchmarkOutcome outcome;
  if (!outcome.ran) {
    const auto start = Clock::now();
    bench::BenchmarkOptions options;
    const auto tasks = bench::load_tasks(fixture_path("benchmark.json"), options);
    options.threads = bench::default_threads();
    outcome.rows = bench::run_benchmark(tasks, options);
    outcome.seconds = seconds_since(start);
    outcome.ran = true;
  }
  return outcome;
}

const bench::BenchmarkRow* find_row(const std::vector<bench::BenchmarkRow>& rows, const std::string& task,
                                    const std::string& method) {
  for (const auto& r : rows) {
    if (r.task == task && r.method == method && r.samples == 10) return &r;
  }
  return nullptr;
}

Verdict efficiency_gap() {
  const auto& outcome = benchmark_outcome();
  Verdict v;
  v.pass = outcome.seconds < 1200.0;
  std::ostringstream detail;
  std::set<std::string> tasks;
  for (const auto& r : outcome.rows) tasks.insert(r.task);
  for (const auto& task : tasks) {
    const auto* ours = find_row(outcome.rows, task, "bdpt");
    const auto* rej = find_row(outcome.rows, task, "rejection");
    if (ours == nullptr || rej == nullptr) {
      v.pass = false;
      continue;
    }
    bool ok = ours->mean_tv < rej->mean_tv && ours->trials == 100;
    if (task.rfind("grid", 0) == 0) {
      ok = ok && std::abs(ours->mean_tv - 0.0257) <= 0.03 && std::abs(rej->mean_tv - 0.063) <= 0.03;
    } else if (task.rfind("keys", 0) == 0) {
      ok = ok && ours->mean_tv <= 0.20 && rej->mean_tv >= 0.30;
    } else if (task.rfind("blocks", 0) == 0) {
      ok = ok && ours->mean_tv <= 0.5 && rej->mean_tv >= 0.9;
    }
    v.pass = v.pass && ok;
    detail << task << " " << fmt("%.4f", ours->mean_tv) << "/" << fmt("%.4f", rej->mean_tv) << (ok ? "" : " [X]")
           << "; ";
  }
  v.pass = v.pass && tasks.size() == 5;
  detail << "ours@10/rejection@10 mean TV vs bdpt@1000 over 100 trials, " << fmt("%.1f", outcome.seconds)
         << " s (limit 1200)";
  v.detail = detail.str();
  return v;
}

Verdict rejection_failure() {
  const auto& outcome = benchmark_outcome();
  const auto* ours = find_row(outcome.rows, "blocks", "bdpt");
  const auto* rej = find_row(outcome.rows, "blocks", "rejection");
  Verdict v;
  if (ours == nullptr || rej == nullptr) {
    v.detail = "blocks rows missing";
    return v;
  }
  const double ours_valid = 1.0 - ours->no_valid_fraction;
  v.pass = rej->no_valid_fraction >= 0.5 && ours_valid >= 0.95;
  v.detail = "blocks: rejection@10 no_valid_samples in " + fmt("%.1f", 100.0 * rej->no_valid_fraction) +
             "% of runs (need >= 50), bdpt@10 valid in " + fmt("%.1f", 100.0 * ours_valid) + "% (need >= 95)";
  return v;
}

// ---- 5 ----------------------------------------------------------------------

/// Pools 1e5-sample batches until the estimate has `min_hits` nonzero
/// contributions or `max_batches` have run. Fewer hits than that means the
/// mean is still set by a handful of paths and its standard error is not yet
/// trustworthy.
samplers::LikelihoodEstimate converge(const Domain& d, policy::Policy& policy, State x, Goal g, double alpha,
                                      double depth, std::uint64_t seed, std::size_t min_hits,
                                      std::size_t max_batches) {
  samplers::LikelihoodEstimate pooled;
  double m2 = 0.0;
  for (std::size_t b = 0; b < max_batches && pooled.nonzero_count < min_hits; ++b) {
    samplers::SamplerConfig c;
    c.n_samples = 100000;
    c.seed = derive_seed(seed, StreamKind::kTrial, b, 0);
    c.alpha = alpha;
    c.depth = depth;
    c.max_forward_steps = samplers::default_max_forward_steps(d);
    const auto e = samplers::estimate_likelihood(d, policy, x, g, c, samplers::Method::kBdpt);
    // Chan et al. pairwise merge of (n, mean, M2).
    const double na = static_cast<double>(pooled.n);
    const double nb = static_cast<double>(e.n);
    const double delta = e.mean - pooled.mean;
    m2 += e.variance * (nb - 1.0) + delta * delta * na * nb / (na + nb);
    pooled.mean += delta * nb / (na + nb);
    pooled.n += e.n;
    pooled.nonzero_count += e.nonzero_count;
  }
  pooled.variance = pooled.n > 1 ? m2 / static_cast<double>(pooled.n - 1) : 0.0;
  return pooled;
}

Verdict hyperparameter_invariance() {
  const auto start = Clock::now();
  const auto grid = load_fixture("grid_two_door.txt");
  auto policy = policy::make_policy(*grid, policy::PolicyConfig{});
  constexpr std::size_t kMinHits = 100;
  constexpr std::size_t kMaxBatches = 10;
  const double alphas[] = {0.0, 1.0, 5.0};
  const double depths[] = {2.0, 5.0, 20.0};
  double worst = 0.0;
  std::string worst_at;
  std::size_t checks = 0;
  bool dominant_converged = true;
  std::vector<std::string> unconverged;
  std::map<double, double> relative_variance;
  std::uint64_t seed = 500;
  for (const char* literal : {"3,1", "1,4", "5,3"}) {
    const State x = grid->parse_state(literal);
    Goal dominant{0};
    double dominant_p = -1.0;
    std::map<Goal, double> exact;
    for (Goal g : goals_of(*grid)) {
      exact[g] = snapinf::testing::enumerate_likelihood(*grid, *policy, x, g, 1e-10).likelihood;
      if (exact[g] > dominant_p) {
        dominant_p = exact[g];
        dominant = g;
      }
    }
    for (Goal g : goals_of(*grid)) {
      for (double a : alphas) {
        for (double d : depths) {
          const auto e = converge(*grid, *policy, x, g, a, d, seed++, kMinHits, kMaxBatches);
          const std::string at = std::string(literal) + " " + grid->goal_name(g) + " alpha=" + fmt("%g", a) +
                                 " d=" + fmt("%g", d);
          if (d == 5.0) relative_variance[a] += e.variance / (exact[g] * exact[g]);
          if (e.nonzero_count < kMinHits) {
            unconverged.push_back(at + " (" + std::to_string(e.nonzero_count) + " hits)");
            if (g == dominant) dominant_converged = false;
            continue;
          }
          const double z = z_of(e.mean, e.standard_error(), exact[g], 0.0);
          ++checks;
          if (z > worst) {
            worst = z;
            worst_at = at;
          }
        }
      }
    }
  }
  double best_alpha = 0.0;
  double best = std::numeric_limits<double>::infinity();
  std::ostringstream table;
  for (const auto& [a, rv] : relative_variance) {
    table << "alpha=" << fmt("%g", a) << ":" << fmt("%.3g", rv) << " ";
    if (rv < best) {
      best = rv;
      best_alpha = a;
    }
  }
  Verdict v;
  v.pass = worst <= 3.0 && dominant_converged && best_alpha > 0.0;
  v.detail = std::to_string(checks) + " converged estimates (>= " + std::to_string(kMinHits) +
             " hits within 1e6 samples) vs exact enumeration, max |z| = " + fmt("%.2f", worst) + " (" + worst_at +
             "); summed relative variance per 1e5-sample batch at d=5: " + table.str() + "-> minimized at alpha=" +
             fmt("%g", best_alpha) + "; " + fmt("%.1f", seconds_since(start)) + " s";
  if (!dominant_converged) v.detail += "; a most-likely goal failed to converge";
  if (!unconverged.empty()) {
    v.detail += "; not converged:";
    for (const auto& u : unconverged) v.detail += " [" + u + "]";
  }
  return v;
}

// ---- 6 ----------------------------------------------------------------------

Verdict qualitative_inferences() {
  struct Case {
    const char* fixture;
    const char* snapshot;
    const char* expected;
  };
  // Every neighbour of the green key at (5,1), and both neighbours of the
  // blue gem at (0,0).
  const Case cases[] = {{"keys.txt", "5,2", "blue"},         {"keys.txt", "4,1", "blue"},
                        {"keys.txt", "6,1", "blue"},         {"keys.txt", "5,0", "blue"},
                        {"grid_two_door.txt", "0,1", "blue"}, {"grid_two_door.txt", "1,0", "blue"}};
  constexpr std::uint64_t kSeeds = 20;
  std::size_t agree = 0;
  std::size_t total = 0;
  std::ostringstream misses;
  for (const auto& c : cases) {
    const auto domain = load_fixture(c.fixture);
    bench::RunSettings s;
    s.sampler.n_samples = 10;
    for (std::uint64_t seed = 0; seed < kSeeds; ++seed) {
      s.sampler.seed = seed;
      const auto report = bench::run_infer(*domain, c.fixture, c.snapshot, s);
      ++total;
      if (report.contains("argmax") && report["argmax"] == c.expected) {
        ++agree;
      } else {
        misses << c.fixture << ":" << c.snapshot << "@seed" << seed << " ";
      }
    }
  }
  Verdict v;
  v.pass = agree == total;
  v.detail = "argmax = blue in " + std::to_string(agree) + "/" + std::to_string(total) +
             " runs (4 cells beside the green key, 2 beside the blue gem, seeds 0-19, bdpt@10)";
  if (!v.pass) v.detail += "; misses: " + misses.str();
  return v;
}

// ---- 7 ----------------------------------------------------------------------

Verdict determinism() {
  std::vector<std::string> failures;
  auto same = [&](const std::string& what, const std::function<std::string(std::size_t)>& run) {
    const std::string a = run(1);
    const std::string b = run(1);
    const std::string c = run(3);
    if (a != b) failures.push_back(what + " (repeat)");
    if (a != c) failures.push_back(what + " (threads)");
  };
  const auto keys = load_fixture("keys.txt");
  const auto grid = load_fixture("grid_two_door.txt");
  same("infer", [&](std::size_t threads) {
    bench::RunSettings s;
    s.threads = threads;
    s.sampler.seed = 7;
    return bench::run_infer(*keys, "keys.txt", "5,2", s).dump(2);
  });
  same("heatmap", [&](std::size_t threads) {
    bench::HeatmapOptions o;
    o.settings.threads = threads;
    o.settings.sampler.seed = 7;
    return bench::heatmap_json(bench::run_heatmap(*grid, o), o).dump(2);
  });
  same("correctness", [&](std::size_t threads) {
    bench::CorrectnessOptions o;
    o.samples = 2000;
    o.batches = 4;
    o.threads = threads;
    o.seed = 7;
    return bench::correctness_json(bench::run_correctness(o), o).dump(2);
  });
  same("benchmark", [&](std::size_t threads) {
    bench::BenchmarkOptions o;
    o.trials = 4;
    o.truth_samples = 200;
    o.threads = threads;
    bench::BenchmarkTask task;
    task.name = "grid";
    task.domain = fixture_path("grid_two_door.txt");
    task.sweep = "";
    return bench::benchmark_csv(bench::run_benchmark({task}, o), false);
  });
  Verdict v;
  v.pass = failures.empty();
  v.detail = "infer, heatmap and correctness JSON plus benchmark CSV, each run twice single-threaded and once "
             "with 3 threads: ";
  if (failures.empty()) {
    v.detail += "byte-identical";
  } else {
    for (const auto& f : failures) v.detail += f + " differs; ";
  }
  return v;
}

// ---- 8 ----------------------------------------------------------------------

Verdict performance() {
  double worst = 0.0;
  for (int rep = 0; rep < 3; ++rep) {
    const auto start = Clock::now();
    const auto keys = load_fixture("keys.txt");
    bench::RunSettings s;
    s.sampler.n_samples = 10;
    s.sampler.seed = static_cast<std::uint64_t>(rep);
    const auto report = bench::run_infer(*keys, "keys.txt", "5,2", s);
    worst = std::max(worst, seconds_since(start));
  }
  Verdict v;
  v.pass = worst < 1.0;
  v.detail = "keys bdpt@10 per goal, single-threaded, from loading the file to the posterior (policy, " +
             std::to_string(bench::kDefaultCacheRollouts) + "-rollout caches included): worst of 3 = " +
             fmt("%.3f", worst) + " s (limit 1)";
  return v;
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<int, std::function<Verdict()>>> criteria = {
      {1, oracle_unbiasedness}, {2, correctness_command}, {3, efficiency_gap},  {4, rejection_failure},
      {5, hyperparameter_invariance}, {6, qualitative_inferences}, {7, determinism}, {8, performance},
  };
  const char* names[] = {"",
                         "oracle unbiasedness",
                         "correctness command",
                         "TV efficiency gap",
                         "rejection failure mode",
                         "hyperparameter invariance",
                         "qualitative inferences",
                         "determinism",
                         "performance"};
  std::set<int> wanted;
  for (int i = 1; i < argc; ++i) wanted.insert(std::atoi(argv[i]));
  int failed = 0;
  int ran = 0;
  for (const auto& [id, run] : criteria) {
    if (!wanted.empty() && wanted.count(id) == 0U) continue;
    Verdict v;
    try {
      v = run();
    } catch (const std::exception& e) {
      v = {false, std::string("threw: ") + e.what()};
    }
    ++ran;
    if (!v.pass) ++failed;
    std::cout << (v.pass ? "PASS" : "FAIL") << " [" << id << "] " << names[id] << ": " << v.detail << std::endl;
  }
  std::cout << (ran - failed) << "/" << ran << " criteria passed" << std::endl;
  return failed == 0 ? 0 : 1;
}
