#pragma once

#include <unordered_map>
#include <vector>

#include "snapinf/core/domain.hpp"
#include "snapinf/policy/policy_config.hpp"

namespace snapinf::policy {

struct ActionValue {
  Action action;
  /// -infinity when the goal cannot be reached after taking the action.
  double q = 0.0;
  std::vector<Transition> outcomes;
};

/// Per-goal Q-values over every non-end state of an enumerable domain.
class QTable {
 public:
  /// Runs value iteration until the Bellman residual drops below
  /// config.vi_tolerance. Throws ConfigError when the domain cannot
  /// enumerate its states (use the online A* backend there).
  static QTable compute(const Domain& domain, Goal goal, const PolicyConfig& config);

  /// Actions available in `state`, empty for end states or unknown states.
  const std::vector<ActionValue>& actions(State state) const;
  double value(State state) const;
  std::size_t iterations() const { return iterations_; }
  std::size_t state_count() const { return table_.size(); }

 private:
  std::unordered_map<State, std::vector<ActionValue>, StateHash> table_;
  std::unordered_map<State, double, StateHash> values_;
  std::size_t iterations_ = 0;
};

}  // namespace snapinf::policy
