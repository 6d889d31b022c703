#pragma once

#include <string_view>

namespace snapinf::policy {

enum class PolicyMode { kValueIteration, kAstarOnline };

/// Boltzmann-rational agent parameters.
///
/// With the defaults (goal_reward 0, step_cost 1, gamma 1) Q-value
/// differences equal path-cost differences, so both backends agree.
struct PolicyConfig {
  double beta = 2.0;
  double gamma = 1.0;
  double goal_reward = 0.0;
  double step_cost = 1.0;
  PolicyMode mode = PolicyMode::kAstarOnline;
  double vi_tolerance = 1e-10;

  /// Throws ConfigError when a field is out of range.
  void validate() const;
};

std::string_view to_string(PolicyMode mode);
PolicyMode parse_policy_mode(std::string_view text);

}  // namespace snapinf::policy
