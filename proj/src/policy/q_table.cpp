#include "snapinf/policy/q_table.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <map>
#include <unordered_set>

namespace snapinf::policy {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr std::size_t kMaxStates = 1'000'000;
constexpr std::size_t kMaxIterations = 1'000'000;

// States from which some end state of the goal is reachable.
std::unordered_set<State, StateHash> goal_reachable(const Domain& domain, Goal goal) {
  std::unordered_set<State, StateHash> seen;
  std::deque<State> queue;
  for (State s : domain.end_states(goal)) {
    if (seen.insert(s).second) queue.push_back(s);
  }
  while (!queue.empty()) {
    const State s = queue.front();
    queue.pop_front();
    for (const auto& pred : domain.predecessors(s, goal)) {
      if (seen.insert(pred.prev).second) queue.push_back(pred.prev);
    }
  }
  return seen;
}

}  // namespace

QTable QTable::compute(const Domain& domain, Goal goal, const PolicyConfig& config) {
  config.validate();
  auto states = domain.enumerate_states();
  if (!states || states->size() > kMaxStates) {
    throw ConfigError("value iteration needs an enumerable state space; use the astar policy for this domain");
  }
  const auto reachable = goal_reachable(domain, goal);

  QTable table;
  std::vector<State> live;
  for (State s : *states) {
    if (domain.is_end_state(s, goal)) {
      table.values_[s] = 0.0;
      continue;
    }
    std::map<std::uint32_t, ActionValue> by_action;
    for (const auto& t : domain.successors(s, goal)) {
      auto& entry = by_action[t.action.id];
      entry.action = t.action;
      entry.outcomes.push_back(t);
    }
    auto& actions = table.table_[s];
    for (auto& [id, av] : by_action) actions.push_back(std::move(av));
    if (reachable.count(s) != 0U) {
      table.values_[s] = 0.0;
      live.push_back(s);
    } else {
      table.values_[s] = kNegInf;
      for (auto& av : actions) av.q = kNegInf;
    }
  }

  auto backup = [&](ActionValue& av) {
    double q = 0.0;
    for (const auto& t : av.outcomes) {
      const double v = table.values_.at(t.next);
      if (v == kNegInf) return kNegInf;
      const double reward = -config.step_cost + (domain.is_end_state(t.next, goal) ? config.goal_reward : 0.0);
      q += t.structural_prob * (reward + config.gamma * v);
    }
    return q;
  };

  // Gauss-Seidel sweeps in canonical order.
  for (table.iterations_ = 1; table.iterations_ <= kMaxIterations; ++table.iterations_) {
    double residual = 0.0;
    for (State s : live) {
      double best = kNegInf;
      for (auto& av : table.table_[s]) {
        av.q = backup(av);
        best = std::max(best, av.q);
      }
      double& v = table.values_[s];
      residual = std::max(residual, std::abs(best - v));
      v = best;
    }
    if (residual < config.vi_tolerance) break;
  }
  // Final backup so every Q matches the converged values.
  for (State s : live) {
    for (auto& av : table.table_[s]) av.q = backup(av);
  }
  return table;
}

const std::vector<ActionValue>& QTable::actions(State state) const {
  static const std::vector<ActionValue> kEmpty;
  auto it = table_.find(state);
  return it == table_.end() ? kEmpty : it->second;
}

double QTable::value(State state) const {
  auto it = values_.find(state);
  return it == values_.end() ? kNegInf : it->second;
}

}  // namespace snapinf::policy
