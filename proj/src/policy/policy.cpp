#include "snapinf/policy/policy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

namespace snapinf::policy {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

}  // namespace

Policy::Policy(const Domain& domain, PolicyConfig config)
    : domain_(&domain), config_(config), memo_(domain.goal_count()) {
  config_.validate();
}

std::span<const Step> Policy::distribution(State state, Goal goal) {
  auto& memo = memo_.at(goal.index);
  auto it = memo.find(state);
  if (it == memo.end()) it = memo.emplace(state, compute(state, goal)).first;
  return it->second;
}

double Policy::step_prob(State state, State next, Goal goal) {
  const auto dist = distribution(state, goal);
  auto it = std::lower_bound(dist.begin(), dist.end(), next,
                             [](const Step& s, State v) { return s.next < v; });
  return it != dist.end() && it->next == next ? it->prob : 0.0;
}

std::vector<Step> Policy::compute(State state, Goal goal) {
  std::map<std::uint32_t, std::vector<Transition>> grouped;
  for (const auto& t : domain_->successors(state, goal)) grouped[t.action.id].push_back(t);
  std::vector<Step> out;
  if (grouped.empty()) return out;

  std::vector<std::vector<Transition>> by_action;
  by_action.reserve(grouped.size());
  for (auto& [id, ts] : grouped) by_action.push_back(std::move(ts));

  std::vector<double> utility = action_utilities(state, goal, by_action);
  const double best = *std::max_element(utility.begin(), utility.end());
  std::vector<double> weight(utility.size());
  if (best == kNegInf) {
    // No action reaches the goal: the agent wanders uniformly.
    std::fill(weight.begin(), weight.end(), 1.0);
  } else {
    for (std::size_t a = 0; a < utility.size(); ++a) {
      weight[a] = utility[a] == kNegInf ? 0.0 : std::exp(config_.beta * (utility[a] - best));
    }
  }
  double total = 0.0;
  for (double w : weight) total += w;

  std::map<State, double> mass;
  for (std::size_t a = 0; a < by_action.size(); ++a) {
    for (const auto& t : by_action[a]) mass[t.next] += weight[a] / total * t.structural_prob;
  }
  out.reserve(mass.size());
  for (const auto& [next, p] : mass) out.push_back(Step{next, p});
  return out;
}

ValueIterationPolicy::ValueIterationPolicy(const Domain& domain, PolicyConfig config)
    : Policy(domain, config) {
  auto tables = std::make_shared<std::vector<std::shared_ptr<const QTable>>>();
  for (Goal g : goals_of(domain)) {
    tables->push_back(std::make_shared<const QTable>(QTable::compute(domain, g, config_)));
  }
  tables_ = std::move(tables);
}

std::unique_ptr<Policy> ValueIterationPolicy::clone() const {
  auto copy = std::unique_ptr<ValueIterationPolicy>(new ValueIterationPolicy(*this));
  return copy;
}

std::vector<double> ValueIterationPolicy::action_utilities(State state, Goal goal,
                                                           const std::vector<std::vector<Transition>>& by_action) {
  const auto& actions = q_table(goal).actions(state);
  std::vector<double> out;
  out.reserve(by_action.size());
  for (const auto& ts : by_action) {
    const auto id = ts.front().action;
    auto it = std::find_if(actions.begin(), actions.end(), [&](const ActionValue& av) { return av.action == id; });
    out.push_back(it == actions.end() ? kNegInf : it->q);
  }
  return out;
}

AstarPolicy::AstarPolicy(const Domain& domain, PolicyConfig config) : Policy(domain, config) {
  for (Goal g : goals_of(domain)) oracles_.emplace_back(domain, g, config_.step_cost);
}

std::unique_ptr<Policy> AstarPolicy::clone() const {
  return std::unique_ptr<AstarPolicy>(new AstarPolicy(*this));
}

std::optional<double> AstarPolicy::path_cost(State state, Goal goal) {
  return oracles_.at(goal.index).cost(state);
}

std::vector<double> AstarPolicy::action_utilities(State state, Goal goal,
                                                  const std::vector<std::vector<Transition>>& by_action) {
  auto& oracle = oracles_.at(goal.index);
  const auto here = oracle.cost(state);
  std::vector<double> out;
  out.reserve(by_action.size());
  for (const auto& ts : by_action) {
    double expected = 0.0;
    bool reachable = here.has_value();
    for (const auto& t : ts) {
      if (!reachable) break;
      const auto c = oracle.cost(t.next);
      if (!c) {
        reachable = false;
      } else {
        expected += t.structural_prob * *c;
      }
    }
    out.push_back(reachable ? *here - expected : kNegInf);
  }
  return out;
}

std::unique_ptr<Policy> make_policy(const Domain& domain, const PolicyConfig& config) {
  if (config.mode == PolicyMode::kValueIteration) return std::make_unique<ValueIterationPolicy>(domain, config);
  return std::make_unique<AstarPolicy>(domain, config);
}

}  // namespace snapinf::policy
