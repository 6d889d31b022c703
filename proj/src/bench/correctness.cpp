#include <algorithm>
#include <cmath>

#include "snapinf/bench/commands.hpp"
#include "snapinf/bench/parallel.hpp"

namespace snapinf::bench {

namespace {

double z_score(const EstimatorResult& a, const EstimatorResult& b) {
  const double se = std::sqrt(a.standard_error * a.standard_error + b.standard_error * b.standard_error);
  const double diff = a.mean - b.mean;
  if (se == 0.0) return diff == 0.0 ? 0.0 : std::copysign(std::numeric_limits<double>::infinity(), diff);
  return diff / se;
}

double relative_deviation(double a, double b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

}  // namespace

domains::GridWorld correctness_grid() {
  domains::GridSpec spec;
  spec.width = 4;
  spec.height = 4;
  spec.gems = {domains::GemSpec{'a', "corner", {3, 3}, {220, 40, 40}}};
  for (int c = 0; c < 4; ++c) spec.entryways.push_back({0, c});
  return domains::GridWorld(spec);
}

CorrectnessReport run_correctness(const CorrectnessOptions& options) {
  if (options.batches < 2 || options.samples < options.batches) {
    throw ConfigError("correctness needs at least two batches and one sample per batch");
  }
  const domains::GridWorld grid = correctness_grid();
  const Goal goal{0};
  const auto base_policy = policy::make_policy(grid, options.policy);
  const std::size_t threads = std::max<std::size_t>(1, options.threads);
  std::vector<std::unique_ptr<policy::Policy>> clones(threads);

  samplers::SamplerConfig base;
  base.alpha = options.alpha;
  base.depth = options.depth;
  base.max_forward_steps = samplers::default_max_forward_steps(grid);
  base.validate();

  std::vector<CorrectnessCell> cells(16);
  parallel_for(cells.size(), threads, [&](std::size_t i, std::size_t worker) {
    if (!clones[worker]) clones[worker] = base_policy->clone();
    auto& policy = *clones[worker];
    const domains::Cell cell{static_cast<int>(i) / 4, static_cast<int>(i) % 4};
    const State x = grid.encode({cell, 0, 0});
    CorrectnessCell out;
    out.cell = cell;

    samplers::SamplerConfig c = base;
    c.n_samples = options.samples;
    c.seed = derive_seed(options.seed, StreamKind::kTrial, i, 0);
    const auto rej = samplers::estimate_likelihood(grid, policy, x, goal, c, samplers::Method::kRejection);
    out.rejection = {rej.mean, rej.standard_error()};
    c.seed = derive_seed(options.seed, StreamKind::kTrial, i, 1);
    const auto bdpt = samplers::estimate_likelihood(grid, policy, x, goal, c, samplers::Method::kBdpt);
    out.bdpt = {bdpt.mean, bdpt.standard_error()};

    // Batches with independent caches; the spread of batch means carries the
    // cache noise as well as the per-sample noise.
    std::vector<double> batch_means;
    const std::size_t per_batch = options.samples / options.batches;
    for (std::size_t b = 0; b < options.batches; ++b) {
      samplers::SamplerConfig cb = base;
      cb.n_samples = per_batch;
      cb.use_cache = true;
      cb.cache_rollouts = options.cache_rollouts;
      cb.seed = derive_seed(options.seed, StreamKind::kTrial, i, 2 + b);
      batch_means.push_back(samplers::estimate_likelihood(grid, policy, x, goal, cb, samplers::Method::kBdpt).mean);
    }
    double m = 0.0;
    for (double v : batch_means) m += v;
    m /= static_cast<double>(batch_means.size());
    double ss = 0.0;
    for (double v : batch_means) ss += (v - m) * (v - m);
    const double nb = static_cast<double>(batch_means.size());
    out.bdpt_cached = {m, std::sqrt(ss / (nb - 1.0) / nb)};

    out.z[0] = z_score(out.bdpt, out.rejection);
    out.z[1] = z_score(out.bdpt_cached, out.rejection);
    out.z[2] = z_score(out.bdpt_cached, out.bdpt);
    out.max_relative_deviation =
        std::max({relative_deviation(out.bdpt.mean, out.rejection.mean),
                  relative_deviation(out.bdpt_cached.mean, out.rejection.mean),
                  relative_deviation(out.bdpt_cached.mean, out.bdpt.mean)});
    cells[i] = out;
  });

  CorrectnessReport report;
  report.cells = std::move(cells);
  for (const auto& c : report.cells) {
    for (double z : c.z) report.max_abs_z = std::max(report.max_abs_z, std::abs(z));
    report.max_relative_deviation = std::max(report.max_relative_deviation, c.max_relative_deviation);
  }
  report.passed = report.max_abs_z <= options.z_limit;
  return report;
}

nlohmann::ordered_json correctness_json(const CorrectnessReport& report, const CorrectnessOptions& options) {
  nlohmann::ordered_json out;
  out["grid"] = "4x4 open, start uniform on row 0, goal (3,3)";
  out["samples_per_estimator"] = options.samples;
  out["cached_batches"] = options.batches;
  out["cache_rollouts_per_batch"] = options.cache_rollouts;
  out["policy"] = {{"mode", std::string(policy::to_string(options.policy.mode))}, {"beta", options.policy.beta}};
  out["alpha"] = options.alpha;
  out["depth"] = options.depth;
  out["seed"] = options.seed;
  out["z_limit"] = options.z_limit;
  auto cells = nlohmann::ordered_json::array();
  auto estimator = [](const EstimatorResult& e) {
    return nlohmann::ordered_json{{"mean", e.mean}, {"standard_error", e.standard_error}};
  };
  for (const auto& c : report.cells) {
    nlohmann::ordered_json cell;
    cell["cell"] = {c.cell.row, c.cell.col};
    cell["rejection"] = estimator(c.rejection);
    cell["bdpt"] = estimator(c.bdpt);
    cell["bdpt_cached"] = estimator(c.bdpt_cached);
    cell["z"] = {{"bdpt_vs_rejection", c.z[0]}, {"cached_vs_rejection", c.z[1]}, {"cached_vs_bdpt", c.z[2]}};
    cell["max_relative_deviation"] = c.max_relative_deviation;
    cells.push_back(cell);
  }
  out["cells"] = cells;
  out["max_abs_z"] = report.max_abs_z;
  out["max_relative_deviation"] = report.max_relative_deviation;
  out["passed"] = report.passed;
  return out;
}

}  // namespace snapinf::bench
