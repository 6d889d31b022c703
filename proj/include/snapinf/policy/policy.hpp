#pragma once

#include <memory>
#include <span>
#include <unordered_map>
#include <vector>

#include "snapinf/core/domain.hpp"
#include "snapinf/policy/cost_oracle.hpp"
#include "snapinf/policy/policy_config.hpp"
#include "snapinf/policy/q_table.hpp"

namespace snapinf::policy {

struct Step {
  State next;
  double prob = 0.0;
};

/// The agent's step model P(s -> s' | g).
///
/// Step distributions are memoized per (goal, state), so a Policy is not
/// safe to share between threads. Each worker calls clone().
class Policy {
 public:
  Policy(const Domain& domain, PolicyConfig config);
  virtual ~Policy() = default;

  /// Successor distribution of `state`, sorted by successor encoding and
  /// summing to one. Empty for end states.
  std::span<const Step> distribution(State state, Goal goal);

  /// Zero when `next` is not a successor of `state`.
  double step_prob(State state, State next, Goal goal);

  virtual std::unique_ptr<Policy> clone() const = 0;

  const Domain& domain() const { return *domain_; }
  const PolicyConfig& config() const { return config_; }

 protected:
  /// Utility of each action; -infinity marks actions that cannot reach the goal.
  virtual std::vector<double> action_utilities(State state, Goal goal,
                                               const std::vector<std::vector<Transition>>& by_action) = 0;

  const Domain* domain_;
  PolicyConfig config_;

 private:
  std::vector<Step> compute(State state, Goal goal);

  std::vector<std::unordered_map<State, std::vector<Step>, StateHash>> memo_;
};

/// Softmax over precomputed Q-values.
class ValueIterationPolicy final : public Policy {
 public:
  ValueIterationPolicy(const Domain& domain, PolicyConfig config);

  std::unique_ptr<Policy> clone() const override;
  const QTable& q_table(Goal goal) const { return *tables_->at(goal.index); }

 protected:
  std::vector<double> action_utilities(State state, Goal goal,
                                       const std::vector<std::vector<Transition>>& by_action) override;

 private:
  std::shared_ptr<const std::vector<std::shared_ptr<const QTable>>> tables_;
};

/// Softmax over path-cost differences from an online backward A* oracle.
class AstarPolicy final : public Policy {
 public:
  AstarPolicy(const Domain& domain, PolicyConfig config);

  std::unique_ptr<Policy> clone() const override;

  /// nullopt when the goal is unreachable from `state`.
  std::optional<double> path_cost(State state, Goal goal);
  CostOracle& oracle(Goal goal) { return oracles_.at(goal.index); }

 protected:
  std::vector<double> action_utilities(State state, Goal goal,
                                       const std::vector<std::vector<Transition>>& by_action) override;

 private:
  std::vector<CostOracle> oracles_;
};

std::unique_ptr<Policy> make_policy(const Domain& domain, const PolicyConfig& config);

}  // namespace snapinf::policy
