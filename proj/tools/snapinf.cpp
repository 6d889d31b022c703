#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "snapinf/bench/commands.hpp"
#include "snapinf/bench/parallel.hpp"
#include "snapinf/domains/parser.hpp"

namespace {

using namespace snapinf;

constexpr int kConfigError = 2;
constexpr int kCorrectnessFailure = 3;

struct CommonFlags {
  std::string method = "bdpt";
  std::string policy = "astar";
  std::size_t samples = 10;
  double alpha = 1.0;
  double beta = 2.0;
  double depth = 5.0;
  double gamma = 1.0;
  double goal_reward = 0.0;
  double step_cost = 1.0;
  std::size_t cache_rollouts = bench::kDefaultCacheRollouts;
  std::uint64_t seed = 0;
  std::optional<std::size_t> max_steps;
  std::size_t threads = 1;
  bool timing = false;
};

void add_model_flags(CLI::App& app, CommonFlags& f) {
  app.add_option("--policy", f.policy, "Step model: astar or vi")->capture_default_str();
  app.add_option("--beta", f.beta, "Boltzmann inverse temperature")->capture_default_str();
  app.add_option("--gamma", f.gamma, "Discount (value iteration only)")->capture_default_str();
  app.add_option("--goal-reward", f.goal_reward, "Reward for entering the goal")->capture_default_str();
  app.add_option("--step-cost", f.step_cost, "Cost per move")->capture_default_str();
  app.add_option("--seed", f.seed, "Root random seed")->capture_default_str();
  app.add_option("--threads", f.threads, "Worker threads")->capture_default_str();
}

void add_sampler_flags(CLI::App& app, CommonFlags& f) {
  app.add_option("--method", f.method, "rejection or bdpt")->capture_default_str();
  app.add_option("--samples", f.samples, "Samples per goal")->capture_default_str();
  app.add_option("--alpha", f.alpha, "Importance-sampling strength")->capture_default_str();
  app.add_option("--depth", f.depth, "Mean Russian-roulette depth")->capture_default_str();
  app.add_option("--cache-rollouts", f.cache_rollouts, "Forward rollouts per cache half; 0 disables the cache")
      ->capture_default_str();
  app.add_option("--max-steps", f.max_steps, "Forward rollout cap (default: 50x the longest optimal path)");
  app.add_flag("--timing", f.timing, "Include wall-clock times in the output");
}

bench::RunSettings to_settings(const CommonFlags& f) {
  bench::RunSettings s;
  s.method = samplers::parse_method(f.method);
  s.policy.mode = policy::parse_policy_mode(f.policy);
  s.policy.beta = f.beta;
  s.policy.gamma = f.gamma;
  s.policy.goal_reward = f.goal_reward;
  s.policy.step_cost = f.step_cost;
  s.sampler.n_samples = f.samples;
  s.sampler.alpha = f.alpha;
  s.sampler.depth = f.depth;
  s.sampler.cache_rollouts = f.cache_rollouts;
  s.sampler.seed = f.seed;
  if (f.max_steps) {
    s.sampler.max_forward_steps = *f.max_steps;
    s.max_steps_given = true;
  }
  s.threads = f.threads == 0 ? bench::default_threads() : f.threads;
  s.timing = f.timing;
  return s;
}

void emit(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write " + path);
  out << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Snapshot goal inference: rejection and bidirectional likelihood samplers"};
  app.require_subcommand(1);

  CommonFlags infer_flags;
  std::string infer_domain;
  std::string infer_snapshot;
  std::string infer_out;
  auto* infer = app.add_subcommand("infer", "Posterior over goals for one snapshot");
  infer->add_option("--domain", infer_domain, "Domain file")->required();
  infer->add_option("--snapshot", infer_snapshot, "State literal")->required();
  infer->add_option("--out", infer_out, "JSON output path (default stdout)");
  add_model_flags(*infer, infer_flags);
  add_sampler_flags(*infer, infer_flags);

  CommonFlags bench_flags;
  std::string tasks_path;
  std::string bench_out;
  std::optional<std::size_t> trials;
  std::vector<std::size_t> bench_sizes;
  std::optional<std::size_t> truth_samples;
  std::optional<std::size_t> rejection_truth;
  auto* benchmark = app.add_subcommand("benchmark", "Mean TV of small-sample posteriors against a converged one");
  benchmark->add_option("--tasks", tasks_path, "JSON task list")->required();
  benchmark->add_option("--trials", trials, "Independent trials per method (overrides the task file)");
  benchmark->add_option("--sizes", bench_sizes, "Sample sizes to score (overrides the task file)");
  benchmark->add_option("--truth-samples", truth_samples, "Samples for the bdpt ground truth");
  benchmark->add_option("--rejection-truth", rejection_truth, "Samples for a rejection ground truth (0 skips)");
  benchmark->add_option("--out", bench_out, "CSV output path (default stdout)");
  add_model_flags(*benchmark, bench_flags);
  benchmark->add_option("--alpha", bench_flags.alpha, "Importance-sampling strength")->capture_default_str();
  benchmark->add_option("--depth", bench_flags.depth, "Mean Russian-roulette depth")->capture_default_str();
  benchmark->add_option("--cache-rollouts", bench_flags.cache_rollouts, "Forward rollouts per cache half")
      ->capture_default_str();
  benchmark->add_flag("--timing", bench_flags.timing, "Add a seconds column");

  CommonFlags corr_flags;
  corr_flags.samples = 25000;
  std::size_t batches = 25;
  std::size_t corr_cache = 200;
  std::string corr_out;
  auto* correctness = app.add_subcommand("correctness", "Compare the three estimators on a 4x4 grid");
  correctness->add_option("--samples", corr_flags.samples, "Samples per estimator and cell")->capture_default_str();
  correctness->add_option("--batches", batches, "Independent caches for the cached estimator")->capture_default_str();
  correctness->add_option("--cache-rollouts", corr_cache, "Rollouts per cache half and batch")->capture_default_str();
  correctness->add_option("--alpha", corr_flags.alpha, "Importance-sampling strength")->capture_default_str();
  correctness->add_option("--depth", corr_flags.depth, "Mean Russian-roulette depth")->capture_default_str();
  correctness->add_option("--out", corr_out, "JSON output path (default stdout)");
  add_model_flags(*correctness, corr_flags);

  CommonFlags heat_flags;
  std::string heat_domain;
  std::string heat_out;
  std::string heat_json;
  std::string heat_mask;
  std::string inventory;
  int cell_pixels = 24;
  auto* heatmap = app.add_subcommand("heatmap", "Posterior for every cell of a grid");
  heatmap->add_option("--domain", heat_domain, "Grid or keys domain file")->required();
  heatmap->add_option("--out", heat_out, "PPM image path")->required();
  heatmap->add_option("--json", heat_json, "JSON output path (default: image path with .json)");
  heatmap->add_option("--mask", heat_mask, "File of row,col cells to exclude");
  heatmap->add_option("--inventory", inventory, "Fixed inventory, e.g. \"keys=G\" or \"keys=G open=2:1\"");
  heatmap->add_option("--cell-pixels", cell_pixels, "Pixels per cell")->capture_default_str();
  add_model_flags(*heatmap, heat_flags);
  add_sampler_flags(*heatmap, heat_flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kConfigError;
  }

  try {
    if (*infer) {
      const auto domain = domains::load_domain_file(infer_domain);
      const auto report = bench::run_infer(*domain, infer_domain, infer_snapshot, to_settings(infer_flags));
      emit(report.dump(2) + "\n", infer_out);
    } else if (*benchmark) {
      bench::BenchmarkOptions options;
      options.base = to_settings(bench_flags);
      auto tasks = bench::load_tasks(tasks_path, options);
      if (trials) options.trials = *trials;
      if (!bench_sizes.empty()) options.sample_sizes = bench_sizes;
      if (truth_samples) options.truth_samples = *truth_samples;
      if (rejection_truth) options.rejection_truth_samples = *rejection_truth;
      options.threads = options.base.threads;
      options.timing = bench_flags.timing;
      const auto rows = bench::run_benchmark(tasks, options);
      emit(bench::benchmark_csv(rows, options.timing), bench_out);
    } else if (*correctness) {
      const auto s = to_settings(corr_flags);
      bench::CorrectnessOptions options;
      options.samples = corr_flags.samples;
      options.batches = batches;
      options.cache_rollouts = corr_cache;
      options.seed = corr_flags.seed;
      options.alpha = corr_flags.alpha;
      options.depth = corr_flags.depth;
      options.policy = s.policy;
      options.threads = s.threads;
      const auto report = bench::run_correctness(options);
      emit(bench::correctness_json(report, options).dump(2) + "\n", corr_out);
      std::cerr << (report.passed ? "PASS" : "FAIL") << ": max |z| = " << report.max_abs_z
                << ", max relative deviation = " << report.max_relative_deviation << '\n';
      if (!report.passed) return kCorrectnessFailure;
    } else if (*heatmap) {
      const auto domain = domains::load_domain_file(heat_domain);
      bench::HeatmapOptions options;
      options.inventory = inventory;
      if (!heat_mask.empty()) options.mask = bench::load_mask(heat_mask);
      options.settings = to_settings(heat_flags);
      options.cell_pixels = cell_pixels;
      const auto map = bench::run_heatmap(*domain, options);
      std::ostringstream image;
      write_ppm(map, cell_pixels, image);
      emit(image.str(), heat_out);
      if (heat_json.empty()) {
        heat_json = heat_out;
        const auto dot = heat_json.rfind('.');
        if (dot != std::string::npos && heat_json.find('/', dot) == std::string::npos) heat_json.erase(dot);
        heat_json += ".json";
      }
      emit(bench::heatmap_json(map, options).dump(2) + "\n", heat_json);
    }
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kConfigError;
  }
  return 0;
}
