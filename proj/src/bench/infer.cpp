#include <algorithm>
#include <chrono>

#include "snapinf/bench/commands.hpp"

namespace snapinf::bench {

nlohmann::ordered_json settings_json(const RunSettings& settings) {
  nlohmann::ordered_json out;
  out["method"] = std::string(samplers::to_string(settings.method));
  out["policy"] = {
      {"mode", std::string(policy::to_string(settings.policy.mode))},
      {"beta", settings.policy.beta},
      {"gamma", settings.policy.gamma},
      {"goal_reward", settings.policy.goal_reward},
      {"step_cost", settings.policy.step_cost},
  };
  out["sampler"] = {
      {"samples", settings.sampler.n_samples},
      {"alpha", settings.sampler.alpha},
      {"depth", settings.sampler.depth},
      {"cache_rollouts", settings.sampler.use_cache ? settings.sampler.cache_rollouts : 0},
      {"max_forward_steps", settings.sampler.max_forward_steps},
      {"seed", settings.sampler.seed},
  };
  return out;
}

nlohmann::ordered_json run_infer(const Domain& domain, const std::string& domain_label, std::string_view snapshot,
                                 RunSettings settings) {
  settings = resolve_settings(domain, settings);
  const State x = domain.parse_state(snapshot);
  const auto start = std::chrono::steady_clock::now();
  auto policy = policy::make_policy(domain, settings.policy);
  const auto result = infer_goals(domain, *policy, x, settings.method, settings.sampler,
                                  posterior::GoalPrior::uniform(domain.goal_count()));
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  nlohmann::ordered_json out;
  out["domain"] = domain_label;
  out["kind"] = std::string(domain.kind());
  out["snapshot"] = domain.format_state(x);
  const auto shared = settings_json(settings);
  for (const auto& [key, value] : shared.items()) out[key] = value;
  out["status"] = result.posterior.ok() ? "ok" : "no_valid_samples";
  out["no_valid_samples"] = !result.posterior.ok();
  auto goals = nlohmann::ordered_json::array();
  for (Goal g : goals_of(domain)) {
    const auto& e = result.estimates[g.index];
    nlohmann::ordered_json entry;
    entry["goal"] = domain.goal_name(g);
    entry["likelihood"] = e.mean;
    entry["variance"] = e.variance;
    entry["standard_error"] = e.standard_error();
    entry["nonzero"] = e.nonzero_count;
    entry["overflow"] = e.overflow_count;
    if (result.posterior.ok()) {
      entry["posterior"] = result.posterior.probs[g.index];
    } else {
      entry["posterior"] = nullptr;
    }
    goals.push_back(entry);
  }
  out["goals"] = goals;
  if (result.posterior.ok()) {
    const auto& probs = result.posterior.probs;
    const auto best = static_cast<std::uint32_t>(std::max_element(probs.begin(), probs.end()) - probs.begin());
    out["argmax"] = domain.goal_name(Goal{best});
  } else {
    out["argmax"] = nullptr;
  }
  if (settings.timing) out["wall_clock_seconds"] = seconds;
  return out;
}

}  // namespace snapinf::bench
