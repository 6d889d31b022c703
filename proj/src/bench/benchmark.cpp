#include <chrono>
#include <fstream>
#include <iomanip>
#include <memory>
#include <sstream>

#include "snapinf/bench/commands.hpp"
#include "snapinf/bench/parallel.hpp"
#include "snapinf/domains/parser.hpp"

namespace snapinf::bench {

namespace {

using nlohmann::json;

// Salts for the trial stream's second counter.
constexpr std::uint64_t kTruthSalt = 0xffff0001ULL;
constexpr std::uint64_t kRejectionTruthSalt = 0xffff0002ULL;

struct PreparedTask {
  std::unique_ptr<Domain> domain;
  RunSettings settings;
  std::vector<State> snapshots;
};

PreparedTask prepare(const BenchmarkTask& task, const BenchmarkOptions& options) {
  PreparedTask out;
  out.domain = domains::load_domain_file(task.domain);
  RunSettings s = options.base;
  if (task.beta) s.policy.beta = *task.beta;
  if (task.alpha) s.sampler.alpha = *task.alpha;
  if (task.depth) s.sampler.depth = *task.depth;
  if (task.cache_rollouts) s.sampler.cache_rollouts = *task.cache_rollouts;
  s.method = samplers::Method::kBdpt;
  out.settings = resolve_settings(*out.domain, s);
  if (task.sweep) {
    const auto* grid = dynamic_cast<const domains::GridWorld*>(out.domain.get());
    if (grid == nullptr) throw ConfigError("task '" + task.name + "': sweeps need a grid domain");
    for (const auto& cell : sweep_cells(*grid, *task.sweep, task.mask)) {
      if (cell.state && !cell.masked) out.snapshots.push_back(*cell.state);
    }
  } else {
    for (const auto& literal : task.snapshots) out.snapshots.push_back(out.domain->parse_state(literal));
  }
  if (out.snapshots.empty()) throw ConfigError("task '" + task.name + "' has no snapshots");
  return out;
}

/// Lazily cloned policy per worker.
class PolicyPool {
 public:
  PolicyPool(const Domain& domain, const policy::PolicyConfig& config, std::size_t workers)
      : base_(policy::make_policy(domain, config)), clones_(workers) {}
  policy::Policy& get(std::size_t worker) {
    if (!clones_[worker]) clones_[worker] = base_->clone();
    return *clones_[worker];
  }

 private:
  std::unique_ptr<policy::Policy> base_;
  std::vector<std::unique_ptr<policy::Policy>> clones_;
};

std::vector<posterior::GoalPosterior> ground_truth(const PreparedTask& task, PolicyPool& pool, samplers::Method method,
                                                   std::size_t samples, std::uint64_t salt,
                                                   const BenchmarkOptions& options) {
  std::vector<posterior::GoalPosterior> out(task.snapshots.size());
  const auto prior = posterior::GoalPrior::uniform(task.domain->goal_count());
  parallel_for(task.snapshots.size(), options.threads, [&](std::size_t i, std::size_t worker) {
    samplers::SamplerConfig c = task.settings.sampler;
    c.n_samples = samples;
    c.seed = derive_seed(task.settings.sampler.seed, StreamKind::kTrial, i, salt);
    c.use_cache = method == samplers::Method::kBdpt && c.cache_rollouts > 0;
    out[i] = infer_goals(*task.domain, pool.get(worker), task.snapshots[i], method, c, prior).posterior;
  });
  return out;
}

struct TrialScore {
  double tv_sum = 0.0;
  std::size_t no_valid = 0;
};

/// Scores `trials` independent runs of (method, samples) against `truth`.
/// Within a trial each goal's connection cache is shared by every snapshot.
/// Returns one score vector per entry of `truths`, indexed by trial.
std::vector<std::vector<TrialScore>> score_trials(
    const PreparedTask& task, PolicyPool& pool, samplers::Method method, std::size_t samples,
    std::uint64_t method_code, const std::vector<const std::vector<posterior::GoalPosterior>*>& truths,
    const BenchmarkOptions& options) {
  std::vector<std::vector<TrialScore>> out(truths.size(), std::vector<TrialScore>(options.trials));
  const auto prior = posterior::GoalPrior::uniform(task.domain->goal_count());
  parallel_for(options.trials, options.threads, [&](std::size_t t, std::size_t worker) {
    auto& policy = pool.get(worker);
    samplers::SamplerConfig c = task.settings.sampler;
    c.n_samples = samples;
    c.seed = derive_seed(task.settings.sampler.seed, StreamKind::kTrial, method_code, t);
    c.use_cache = method == samplers::Method::kBdpt && c.cache_rollouts > 0;
    std::vector<samplers::ConnectionCache> caches;
    if (c.use_cache) caches = build_caches(*task.domain, policy, c);
    for (std::size_t i = 0; i < task.snapshots.size(); ++i) {
      samplers::SamplerConfig ci = c;
      ci.seed = derive_seed(c.seed, StreamKind::kSample, i);
      const auto inferred =
          infer_goals(*task.domain, policy, task.snapshots[i], method, ci, prior, c.use_cache ? &caches : nullptr);
      for (std::size_t k = 0; k < truths.size(); ++k) {
        out[k][t].tv_sum += posterior::tv_distance(inferred.posterior, (*truths[k])[i]);
        if (!inferred.posterior.ok()) ++out[k][t].no_valid;
      }
    }
  });
  return out;
}

BenchmarkRow summarize(const std::string& task, samplers::Method method, std::size_t samples,
                       const std::string& truth, const std::vector<TrialScore>& scores, std::size_t snapshots) {
  BenchmarkRow row;
  row.task = task;
  row.method = std::string(samplers::to_string(method));
  row.samples = samples;
  row.truth = truth;
  row.trials = scores.size();
  row.snapshots = snapshots;
  double tv = 0.0;
  std::size_t no_valid = 0;
  std::size_t failed_trials = 0;
  for (const auto& s : scores) {
    tv += s.tv_sum;
    no_valid += s.no_valid;
    if (s.no_valid > 0) ++failed_trials;
  }
  const double runs = static_cast<double>(scores.size() * snapshots);
  row.mean_tv = tv / runs;
  row.no_valid_fraction = static_cast<double>(no_valid) / runs;
  row.trial_failure_fraction = static_cast<double>(failed_trials) / static_cast<double>(scores.size());
  return row;
}

std::size_t as_count(const json& v, const std::string& what) {
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0)) {
    throw ConfigError(what + " must be a non-negative integer");
  }
  return v.get<std::size_t>();
}

}  // namespace

std::vector<BenchmarkTask> load_tasks(const std::filesystem::path& path, BenchmarkOptions& options) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open task file " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("task file " + path.string() + ": " + e.what());
  }
  const auto base = path.parent_path();
  try {
    if (doc.contains("trials")) options.trials = as_count(doc["trials"], "trials");
    if (doc.contains("samples")) {
      options.sample_sizes.clear();
      for (const auto& n : doc["samples"]) options.sample_sizes.push_back(as_count(n, "samples"));
    }
    if (doc.contains("truth_samples")) options.truth_samples = as_count(doc["truth_samples"], "truth_samples");
    if (doc.contains("rejection_truth_samples")) {
      options.rejection_truth_samples = as_count(doc["rejection_truth_samples"], "rejection_truth_samples");
    }
    std::vector<BenchmarkTask> tasks;
    for (const auto& t : doc.at("tasks")) {
      BenchmarkTask task;
      task.name = t.at("name").get<std::string>();
      task.domain = base / t.at("domain").get<std::string>();
      if (t.contains("sweep")) task.sweep = t["sweep"].get<std::string>();
      if (t.contains("snapshots")) task.snapshots = t["snapshots"].get<std::vector<std::string>>();
      if (t.contains("mask")) {
        std::string text;
        for (const auto& cell : t["mask"]) text += cell.get<std::string>() + "\n";
        task.mask = parse_mask(text);
      }
      if (t.contains("mask_file")) {
        auto extra = load_mask(base / t["mask_file"].get<std::string>());
        task.mask.insert(task.mask.end(), extra.begin(), extra.end());
        std::sort(task.mask.begin(), task.mask.end());
      }
      if (t.contains("beta")) task.beta = t["beta"].get<double>();
      if (t.contains("alpha")) task.alpha = t["alpha"].get<double>();
      if (t.contains("depth")) task.depth = t["depth"].get<double>();
      if (t.contains("cache_rollouts")) task.cache_rollouts = as_count(t["cache_rollouts"], "cache_rollouts");
      tasks.push_back(std::move(task));
    }
    return tasks;
  } catch (const json::exception& e) {
    throw ConfigError("task file " + path.string() + ": " + e.what());
  }
}

std::vector<BenchmarkRow> run_benchmark(const std::vector<BenchmarkTask>& tasks, const BenchmarkOptions& options) {
  if (options.trials == 0) throw ConfigError("trials must be at least 1");
  std::vector<BenchmarkRow> rows;
  for (const auto& task : tasks) {
    PreparedTask prepared = prepare(task, options);
    PolicyPool pool(*prepared.domain, prepared.settings.policy, std::max<std::size_t>(1, options.threads));
    auto truth = ground_truth(prepared, pool, samplers::Method::kBdpt, options.truth_samples, kTruthSalt, options);
    // A snapshot the converged run never reaches has no defined posterior to
    // compare against, so it leaves the task (and is counted).
    std::size_t kept = 0;
    for (std::size_t i = 0; i < truth.size(); ++i) {
      if (!truth[i].ok()) continue;
      truth[kept] = truth[i];
      prepared.snapshots[kept] = prepared.snapshots[i];
      ++kept;
    }
    const std::size_t excluded = truth.size() - kept;
    truth.resize(kept);
    prepared.snapshots.resize(kept);
    if (kept == 0) throw ConfigError("task '" + task.name + "': the ground truth found no valid path for any snapshot");
    std::vector<posterior::GoalPosterior> rejection_truth;
    if (options.rejection_truth_samples > 0) {
      rejection_truth = ground_truth(prepared, pool, samplers::Method::kRejection, options.rejection_truth_samples,
                                     kRejectionTruthSalt, options);
    }
    const std::string truth_name = "bdpt@" + std::to_string(options.truth_samples);
    const std::string rejection_truth_name = "rejection@" + std::to_string(options.rejection_truth_samples);
    for (std::size_t n : options.sample_sizes) {
      for (auto method : {samplers::Method::kBdpt, samplers::Method::kRejection}) {
        const auto begin = std::chrono::steady_clock::now();
        const std::uint64_t code = (static_cast<std::uint64_t>(n) << 1) | (method == samplers::Method::kBdpt ? 0U : 1U);
        std::vector<const std::vector<posterior::GoalPosterior>*> truths{&truth};
        if (!rejection_truth.empty()) truths.push_back(&rejection_truth);
        const auto scores = score_trials(prepared, pool, method, n, code, truths, options);
        const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - begin).count();
        for (std::size_t k = 0; k < truths.size(); ++k) {
          BenchmarkRow row = summarize(task.name, method, n, k == 0 ? truth_name : rejection_truth_name, scores[k],
                                       prepared.snapshots.size());
          row.excluded = excluded;
          row.seconds = seconds;
          rows.push_back(row);
        }
      }
    }
  }
  return rows;
}

std::string benchmark_csv(const std::vector<BenchmarkRow>& rows, bool timing) {
  std::ostringstream os;
  os << "task,method,samples,truth,mean_tv,no_valid_fraction,trial_failure_fraction,trials,snapshots,excluded";
  if (timing) os << ",seconds";
  os << '\n';
  os << std::setprecision(6) << std::fixed;
  for (const auto& r : rows) {
    os << '"' << r.task << "\"," << r.method << ',' << r.samples << ',' << r.truth << ',' << r.mean_tv << ','
       << r.no_valid_fraction << ',' << r.trial_failure_fraction << ',' << r.trials << ',' << r.snapshots << ',' << r.excluded;
    if (timing) os << ',' << r.seconds;
    os << '\n';
  }
  return os.str();
}

}  // namespace snapinf::bench
