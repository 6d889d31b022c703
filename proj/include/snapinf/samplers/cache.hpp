#pragma once

#include <span>
#include <unordered_map>
#include <vector>

#include "snapinf/core/domain.hpp"
#include "snapinf/core/rng.hpp"
#include "snapinf/policy/policy.hpp"
#include "snapinf/samplers/sampler_config.hpp"

namespace snapinf::samplers {

/// Forward-rollout continuations keyed by the state they pass through.
class BdptCache {
 public:
  struct Entry {
    /// Steps taken from the sampled start state to reach the keyed state.
    std::size_t steps = 0;
    /// depth times the accumulated roulette survival weight.
    double weight = 0.0;
  };

  explicit BdptCache(double depth = 5.0) : depth_(depth) {}

  void add(State state, Entry entry);
  void count_rollout() { ++rollouts_; }

  bool contains(State state) const { return entries_.count(state) != 0U; }
  std::span<const Entry> entries(State state) const;
  std::size_t total_entries() const { return total_entries_; }
  std::size_t rollouts() const { return rollouts_; }
  std::size_t state_count() const { return entries_.size(); }
  double depth() const { return depth_; }

  /// Expected number of entries for this many rollouts when no rollout is cut
  /// short by an end state: depth * rollouts. Normalizes connection weights.
  double nominal_size() const { return depth_ * static_cast<double>(rollouts_); }

 private:
  double depth_;
  std::unordered_map<State, std::vector<Entry>, StateHash> entries_;
  std::size_t total_entries_ = 0;
  std::size_t rollouts_ = 0;
};

/// One forward rollout from the start prior. Each visited non-end state
/// receives (steps so far, depth * w); after each step the rollout stops with
/// probability 1/depth, otherwise w is divided by 1 - 1/depth.
void grow_cache(const Domain& domain, policy::Policy& policy, Goal goal, const SamplerConfig& config, Rng& rng,
                BdptCache& cache);

/// Two caches grown from disjoint random streams. A backward walk connects at
/// the first state present in `membership`; the continuation is drawn from
/// `continuations`. Keeping the connection decision independent of the
/// continuation weights is what makes the connected estimator unbiased.
struct ConnectionCache {
  BdptCache membership;
  BdptCache continuations;

  bool empty() const { return membership.total_entries() == 0; }
};

/// Runs config.cache_rollouts rollouts into each half, seeded from
/// config.seed and the goal index.
ConnectionCache build_connection_cache(const Domain& domain, policy::Policy& policy, Goal goal,
                                       const SamplerConfig& config);

}  // namespace snapinf::samplers
