#include "snapinf/policy/policy_config.hpp"

#include <cmath>
#include <string>

#include "snapinf/core/types.hpp"

namespace snapinf::policy {

void PolicyConfig::validate() const {
  if (!(beta > 0.0) || !std::isfinite(beta)) throw ConfigError("beta must be positive");
  if (!(gamma > 0.0 && gamma <= 1.0)) throw ConfigError("gamma must lie in (0, 1]");
  if (!(goal_reward > 0.0 || goal_reward == 0.0)) throw ConfigError("goal_reward must be non-negative");
  if (!(step_cost >= 0.0)) throw ConfigError("step_cost must be non-negative");
  if (!(vi_tolerance > 0.0)) throw ConfigError("vi_tolerance must be positive");
}

std::string_view to_string(PolicyMode mode) {
  return mode == PolicyMode::kValueIteration ? "vi" : "astar";
}

PolicyMode parse_policy_mode(std::string_view text) {
  if (text == "vi" || text == "value_iteration") return PolicyMode::kValueIteration;
  if (text == "astar" || text == "astar_online") return PolicyMode::kAstarOnline;
  throw ConfigError("unknown policy mode '" + std::string(text) + "'");
}

}  // namespace snapinf::policy
