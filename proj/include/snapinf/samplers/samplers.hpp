#pragma once

#include <vector>

#include "snapinf/core/domain.hpp"
#include "snapinf/core/rng.hpp"
#include "snapinf/policy/policy.hpp"
#include "snapinf/samplers/cache.hpp"
#include "snapinf/samplers/path_sample.hpp"
#include "snapinf/samplers/sampler_config.hpp"

namespace snapinf::samplers {

/// Forward rollout from the start prior. Contributes 1/|path| when the
/// snapshot lies anywhere on the path (end state included), else 0.
PathSample rejection_sample_once(const Domain& domain, policy::Policy& policy, State snapshot, Goal goal,
                                 const SamplerConfig& config, Rng& rng);

/// Bidirectional sample: a forward rollout from the snapshot to an end state,
/// then an importance-sampled, roulette-terminated walk backwards in time
/// that ends at a start state or connects to the cache.
///
/// The path is split at the snapshot's last visit, so a forward segment that
/// returns to the snapshot contributes 0. This keeps the estimate equal to
/// the probability that the snapshot lies on the path (divided by the path
/// length), rather than its expected number of visits.
PathSample bdpt_sample_once(const Domain& domain, policy::Policy& policy, State snapshot, Goal goal,
                            const SamplerConfig& config, const ConnectionCache* cache, Rng& rng);

/// Mean of config.n_samples independent contributions. Sample i uses the
/// stream derived from (config.seed, goal, i), so the result is independent
/// of evaluation order. When config.use_cache is set and `cache` is null a
/// cache is built from config.seed first.
LikelihoodEstimate estimate_likelihood(const Domain& domain, policy::Policy& policy, State snapshot, Goal goal,
                                       const SamplerConfig& config, Method method,
                                       const ConnectionCache* cache = nullptr);

/// Like estimate_likelihood but keeps every PathSample.
std::vector<PathSample> draw_samples(const Domain& domain, policy::Policy& policy, State snapshot, Goal goal,
                                     const SamplerConfig& config, Method method,
                                     const ConnectionCache* cache = nullptr);

/// 50 times the longest optimal start-to-goal path, never below 1000 steps.
std::size_t default_max_forward_steps(const Domain& domain);

}  // namespace snapinf::samplers
