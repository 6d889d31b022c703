#include "snapinf/samplers/cache.hpp"

namespace snapinf::samplers {

namespace {

State sample_next(policy::Policy& policy, State state, Goal goal, Rng& rng) {
  const auto dist = policy.distribution(state, goal);
  std::vector<double> weights;
  weights.reserve(dist.size());
  for (const auto& step : dist) weights.push_back(step.prob);
  return dist[rng.categorical(weights)].next;
}

}  // namespace

void BdptCache::add(State state, Entry entry) {
  entries_[state].push_back(entry);
  ++total_entries_;
}

std::span<const BdptCache::Entry> BdptCache::entries(State state) const {
  auto it = entries_.find(state);
  if (it == entries_.end()) return {};
  return it->second;
}

void grow_cache(const Domain& domain, policy::Policy& policy, Goal goal, const SamplerConfig& config, Rng& rng,
                BdptCache& cache) {
  const double stop = 1.0 / config.depth;
  std::size_t t = 0;
  double w = 1.0;
  State current = domain.start_prior().sample(rng);
  cache.count_rollout();
  while (!domain.is_end_state(current, goal) && t < config.max_forward_steps) {
    cache.add(current, BdptCache::Entry{t, config.depth * w});
    const State next = sample_next(policy, current, goal, rng);
    if (rng.uniform() < stop) break;
    w /= 1.0 - stop;
    current = next;
    ++t;
  }
}

ConnectionCache build_connection_cache(const Domain& domain, policy::Policy& policy, Goal goal,
                                       const SamplerConfig& config) {
  ConnectionCache cache{BdptCache(config.depth), BdptCache(config.depth)};
  for (std::size_t i = 0; i < config.cache_rollouts; ++i) {
    Rng rng = derive_stream(config.seed, StreamKind::kCacheMembership, goal.index, i);
    grow_cache(domain, policy, goal, config, rng, cache.membership);
  }
  for (std::size_t i = 0; i < config.cache_rollouts; ++i) {
    Rng rng = derive_stream(config.seed, StreamKind::kCacheWeights, goal.index, i);
    grow_cache(domain, policy, goal, config, rng, cache.continuations);
  }
  return cache;
}

}  // namespace snapinf::samplers
