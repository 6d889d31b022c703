#include "snapinf/samplers/samplers.hpp"

#include <algorithm>
#include <cmath>

#include "snapinf/policy/cost_oracle.hpp"

namespace snapinf::samplers {

namespace {

State sample_next(policy::Policy& policy, State state, Goal goal, Rng& rng) {
  const auto dist = policy.distribution(state, goal);
  std::vector<double> weights;
  weights.reserve(dist.size());
  for (const auto& step : dist) weights.push_back(step.prob);
  return dist[rng.categorical(weights)].next;
}

std::vector<State> unique_predecessors(const Domain& domain, State state, Goal goal) {
  std::vector<State> out;
  for (const auto& p : domain.predecessors(state, goal)) {
    if (out.empty() || out.back() != p.prev) out.push_back(p.prev);
  }
  return out;
}

PathSample finish(std::vector<State> backward, const std::vector<State>& forward, double contribution,
                  std::size_t total_length) {
  PathSample out;
  out.contribution = contribution;
  out.total_length = total_length;
  out.snapshot_index = backward.size() - 1;
  std::reverse(backward.begin(), backward.end());
  out.trace = std::move(backward);
  out.trace.insert(out.trace.end(), forward.begin() + 1, forward.end());
  return out;
}

}  // namespace

PathSample rejection_sample_once(const Domain& domain, policy::Policy& policy, State snapshot, Goal goal,
                                 const SamplerConfig& config, Rng& rng) {
  PathSample out;
  State current = domain.start_prior().sample(rng);
  out.start_state = current;
  out.trace.push_back(current);
  std::size_t steps = 0;
  while (!domain.is_end_state(current, goal)) {
    if (steps >= config.max_forward_steps) {
      out.overflow = true;
      out.total_length = out.trace.size();
      return out;
    }
    current = sample_next(policy, current, goal, rng);
    out.trace.push_back(current);
    ++steps;
  }
  out.total_length = out.trace.size();
  auto last = std::find(out.trace.rbegin(), out.trace.rend(), snapshot);
  if (last != out.trace.rend()) {
    out.snapshot_index = static_cast<std::size_t>(out.trace.rend() - last) - 1;
    out.contribution = 1.0 / static_cast<double>(out.total_length);
  }
  return out;
}

PathSample bdpt_sample_once(const Domain& domain, policy::Policy& policy, State snapshot, Goal goal,
                            const SamplerConfig& config, const ConnectionCache* cache, Rng& rng) {
  if (cache != nullptr && cache->empty()) cache = nullptr;

  // Forward from the snapshot to an end state.
  std::vector<State> forward{snapshot};
  State current = snapshot;
  std::size_t t_next = 0;
  bool revisited = false;
  while (!domain.is_end_state(current, goal)) {
    if (t_next >= config.max_forward_steps) {
      PathSample out = finish({snapshot}, forward, 0.0, 1 + t_next);
      out.overflow = true;
      return out;
    }
    current = sample_next(policy, current, goal, rng);
    forward.push_back(current);
    ++t_next;
    revisited = revisited || current == snapshot;
  }
  if (revisited) {
    // Not the last visit to the snapshot; this split belongs to another path.
    return finish({snapshot}, forward, 0.0, 1 + t_next);
  }

  // Backward from the snapshot into the past.
  const double stop = 1.0 / config.depth;
  std::vector<State> backward{snapshot};
  std::size_t t_prev = 1;
  double p_path = 1.0;
  current = snapshot;
  std::vector<double> choice;
  while (true) {
    if (cache != nullptr && cache->membership.contains(current)) {
      const auto entries = cache->continuations.entries(current);
      double contribution = 0.0;
      std::size_t length = t_prev + t_next;
      if (!entries.empty()) {
        const auto& entry = entries[rng.below(entries.size())];
        length += entry.steps;
        contribution = entry.weight * (static_cast<double>(entries.size()) / cache->continuations.nominal_size()) *
                       p_path / static_cast<double>(length);
      }
      PathSample out = finish(std::move(backward), forward, contribution, length);
      out.cache_connected = true;
      return out;
    }

    const auto preds = unique_predecessors(domain, current, goal);
    const double start_mass = domain.start_prior().mass(current);
    if (preds.empty()) {
      // Extending is impossible, so the path must start here; no roulette.
      PathSample out = finish(std::move(backward), forward,
                              start_mass * p_path / static_cast<double>(t_prev + t_next), t_prev + t_next);
      out.start_state = current;
      return out;
    }
    if (rng.uniform() < stop) {
      PathSample out = finish(std::move(backward), forward,
                              start_mass * p_path / static_cast<double>(t_prev + t_next) / stop, t_prev + t_next);
      out.start_state = current;
      return out;
    }
    p_path /= 1.0 - stop;

    choice.clear();
    std::vector<double> step_probs;
    step_probs.reserve(preds.size());
    for (State prev : preds) {
      const double p = policy.step_prob(prev, current, goal);
      step_probs.push_back(p);
      choice.push_back(std::exp(config.alpha * p));
    }
    double total = 0.0;
    for (double w : choice) total += w;
    const std::size_t pick = rng.categorical(choice);
    const double p_choice = choice[pick] / total;
    p_path *= step_probs[pick] / p_choice;
    current = preds[pick];
    backward.push_back(current);
    ++t_prev;
    if (p_path == 0.0) {
      return finish(std::move(backward), forward, 0.0, t_prev + t_next);
    }
  }
}

std::vector<PathSample> draw_samples(const Domain& domain, policy::Policy& policy, State snapshot, Goal goal,
                                     const SamplerConfig& config, Method method, const ConnectionCache* cache) {
  config.validate();
  ConnectionCache owned;
  if (method == Method::kBdpt && config.use_cache && cache == nullptr) {
    owned = build_connection_cache(domain, policy, goal, config);
    cache = &owned;
  }
  if (!config.use_cache) cache = nullptr;
  std::vector<PathSample> out;
  out.reserve(config.n_samples);
  for (std::size_t i = 0; i < config.n_samples; ++i) {
    Rng rng = derive_stream(config.seed, StreamKind::kSample, goal.index, i);
    out.push_back(method == Method::kRejection
                      ? rejection_sample_once(domain, policy, snapshot, goal, config, rng)
                      : bdpt_sample_once(domain, policy, snapshot, goal, config, cache, rng));
  }
  return out;
}

LikelihoodEstimate estimate_likelihood(const Domain& domain, policy::Policy& policy, State snapshot, Goal goal,
                                       const SamplerConfig& config, Method method, const ConnectionCache* cache) {
  config.validate();
  ConnectionCache owned;
  if (method == Method::kBdpt && config.use_cache && cache == nullptr) {
    owned = build_connection_cache(domain, policy, goal, config);
    cache = &owned;
  }
  if (!config.use_cache) cache = nullptr;
  EstimateAccumulator acc;
  for (std::size_t i = 0; i < config.n_samples; ++i) {
    Rng rng = derive_stream(config.seed, StreamKind::kSample, goal.index, i);
    acc.add(method == Method::kRejection ? rejection_sample_once(domain, policy, snapshot, goal, config, rng)
                                         : bdpt_sample_once(domain, policy, snapshot, goal, config, cache, rng));
  }
  return acc.finish();
}

std::size_t default_max_forward_steps(const Domain& domain) {
  double longest = 0.0;
  for (Goal g : goals_of(domain)) {
    policy::CostOracle oracle(domain, g, 1.0);
    for (const auto& [start, mass] : domain.start_prior().support()) {
      if (auto c = oracle.cost(start)) longest = std::max(longest, *c);
    }
  }
  return std::max<std::size_t>(1000, static_cast<std::size_t>(50.0 * longest));
}

}  // namespace snapinf::samplers
