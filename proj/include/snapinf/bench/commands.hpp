#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "snapinf/bench/inference.hpp"

namespace snapinf::bench {

// ---- infer ---------------------------------------------------------------

/// Single-snapshot report: per-goal likelihood statistics and the posterior.
nlohmann::ordered_json run_infer(const Domain& domain, const std::string& domain_label, std::string_view snapshot,
                                 RunSettings settings);

// ---- benchmark -----------------------------------------------------------

struct BenchmarkTask {
  std::string name;
  std::filesystem::path domain;
  /// Explicit snapshot literals. Ignored when `sweep` is set.
  std::vector<std::string> snapshots;
  /// Sweep every grid cell at this inventory suffix ("" for plain grids).
  std::optional<std::string> sweep;
  std::vector<domains::Cell> mask;
  std::optional<double> beta;
  std::optional<double> alpha;
  std::optional<double> depth;
  std::optional<std::size_t> cache_rollouts;
};

struct BenchmarkOptions {
  std::size_t trials = 100;
  std::vector<std::size_t> sample_sizes{10};
  std::size_t truth_samples = 1000;
  /// Also score against a rejection ground truth of this size; 0 skips it.
  std::size_t rejection_truth_samples = 0;
  RunSettings base;
  std::size_t threads = 1;
  bool timing = false;
};

struct BenchmarkRow {
  std::string task;
  std::string method;
  std::size_t samples = 0;
  /// "bdpt@1000" or "rejection@10000".
  std::string truth;
  double mean_tv = 0.0;
  /// Fraction of (trial, snapshot) runs whose posterior had no valid samples.
  double no_valid_fraction = 0.0;
  /// Fraction of trials in which at least one snapshot had no valid samples.
  double trial_failure_fraction = 0.0;
  std::size_t trials = 0;
  std::size_t snapshots = 0;
  /// Snapshots dropped because the ground truth itself found no valid path.
  std::size_t excluded = 0;
  double seconds = 0.0;
};

/// Reads a JSON task list. Domain and mask paths are resolved relative to the
/// task file. Top-level "trials", "samples", "truth_samples" and
/// "rejection_truth_samples" override the matching fields of `options`.
std::vector<BenchmarkTask> load_tasks(const std::filesystem::path& path, BenchmarkOptions& options);

std::vector<BenchmarkRow> run_benchmark(const std::vector<BenchmarkTask>& tasks, const BenchmarkOptions& options);

std::string benchmark_csv(const std::vector<BenchmarkRow>& rows, bool timing);

// ---- correctness ---------------------------------------------------------

struct CorrectnessOptions {
  std::size_t samples = 25000;
  /// The cached estimator is split into this many batches, each with its own
  /// cache, and its standard error is taken across batch means.
  std::size_t batches = 25;
  std::size_t cache_rollouts = 200;
  double z_limit = 3.0;
  std::uint64_t seed = 0;
  double alpha = 1.0;
  double depth = 5.0;
  policy::PolicyConfig policy;
  std::size_t threads = 1;
};

struct EstimatorResult {
  double mean = 0.0;
  double standard_error = 0.0;
};

struct CorrectnessCell {
  domains::Cell cell;
  EstimatorResult rejection;
  EstimatorResult bdpt;
  EstimatorResult bdpt_cached;
  /// bdpt vs rejection, cached vs rejection, cached vs bdpt.
  double z[3] = {0.0, 0.0, 0.0};
  double max_relative_deviation = 0.0;
};

struct CorrectnessReport {
  std::vector<CorrectnessCell> cells;
  double max_abs_z = 0.0;
  double max_relative_deviation = 0.0;
  bool passed = false;
};

/// Open 4x4 grid, start uniform along row 0, single goal at (3,3).
domains::GridWorld correctness_grid();

CorrectnessReport run_correctness(const CorrectnessOptions& options);

nlohmann::ordered_json correctness_json(const CorrectnessReport& report, const CorrectnessOptions& options);

// ---- heatmap -------------------------------------------------------------

struct HeatmapOptions {
  std::string inventory;
  std::vector<domains::Cell> mask;
  RunSettings settings;
  int cell_pixels = 24;
};

enum class HeatCellKind { kBlocked, kMasked, kOk, kNoValidSamples };

struct HeatCell {
  domains::Cell cell;
  HeatCellKind kind = HeatCellKind::kBlocked;
  std::string literal;
  posterior::GoalPosterior posterior;
};

struct Heatmap {
  int width = 0;
  int height = 0;
  std::vector<std::string> goal_names;
  std::vector<domains::Rgb> goal_colors;
  std::vector<HeatCell> cells;
};

/// Throws ConfigError for domains that are not grids.
Heatmap run_heatmap(const Domain& domain, const HeatmapOptions& options);

nlohmann::ordered_json heatmap_json(const Heatmap& map, const HeatmapOptions& options);

/// Binary PPM: goal colors blended by posterior weight, walls black, masked
/// cells grey, cells with no valid samples white with a dark cross.
void write_ppm(const Heatmap& map, int cell_pixels, std::ostream& out);

// ---- shared --------------------------------------------------------------

nlohmann::ordered_json settings_json(const RunSettings& settings);

}  // namespace snapinf::bench
