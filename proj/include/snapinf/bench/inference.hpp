#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "snapinf/core/domain.hpp"
#include "snapinf/domains/gridworld.hpp"
#include "snapinf/policy/policy.hpp"
#include "snapinf/posterior/posterior.hpp"
#include "snapinf/samplers/cache.hpp"
#include "snapinf/samplers/samplers.hpp"

namespace snapinf::bench {

/// Cache size used by the front end unless told otherwise.
inline constexpr std::size_t kDefaultCacheRollouts = 1000;

/// Everything needed to turn one snapshot into a goal posterior.
struct RunSettings {
  samplers::Method method = samplers::Method::kBdpt;
  samplers::SamplerConfig sampler{.cache_rollouts = kDefaultCacheRollouts};
  policy::PolicyConfig policy;
  /// When false, sampler.max_forward_steps is replaced by the domain default.
  bool max_steps_given = false;
  std::size_t threads = 1;
  bool timing = false;
};

/// Applies the domain-dependent defaults and validates both configs.
RunSettings resolve_settings(const Domain& domain, RunSettings settings);

struct GoalInference {
  std::vector<samplers::LikelihoodEstimate> estimates;
  posterior::GoalPosterior posterior;
};

/// One likelihood estimate per goal, then Bayes. `caches`, when non-empty,
/// holds one prebuilt connection cache per goal and overrides building a
/// fresh one per call.
GoalInference infer_goals(const Domain& domain, policy::Policy& policy, State snapshot, samplers::Method method,
                          const samplers::SamplerConfig& config, const posterior::GoalPrior& prior,
                          const std::vector<samplers::ConnectionCache>* caches = nullptr);

/// One connection cache per goal, seeded from config.seed.
std::vector<samplers::ConnectionCache> build_caches(const Domain& domain, policy::Policy& policy,
                                                    const samplers::SamplerConfig& config);

/// Cells listed as "row,col", separated by whitespace, commas between the
/// coordinates only; '#' starts a comment.
std::vector<domains::Cell> parse_mask(std::string_view text);
std::vector<domains::Cell> load_mask(const std::filesystem::path& path);

struct SweepCell {
  domains::Cell cell;
  /// nullopt for walls and for cells that are not a valid state at this
  /// inventory (closed doors).
  std::optional<State> state;
  bool masked = false;
};

/// Every cell of the grid in row-major order, paired with the state "r,c"
/// followed by `inventory` (e.g. "keys=G").
std::vector<SweepCell> sweep_cells(const domains::GridWorld& grid, std::string_view inventory,
                                   const std::vector<domains::Cell>& mask);

}  // namespace snapinf::bench
