#include "snapinf/policy/cost_oracle.hpp"

namespace snapinf::policy {

CostOracle::CostOracle(const Domain& domain, Goal goal, double step_cost)
    : domain_(&domain), goal_(goal), step_cost_(step_cost) {
  for (State s : domain.end_states(goal)) {
    if (open_g_.emplace(s, 0.0).second) {
      const OpenKey key{0.0, 0.0, s.code};
      open_key_.emplace(s, key);
      open_.insert(key);
    }
  }
}

double CostOracle::h(State s) const {
  return target_ ? step_cost_ * domain_->heuristic(*target_, s) : 0.0;
}

void CostOracle::retarget(std::optional<State> target) {
  if (target == target_) return;
  target_ = target;
  open_.clear();
  for (const auto& [s, g] : open_g_) {
    const double hs = h(s);
    const OpenKey key{g + hs, hs, s.code};
    open_key_[s] = key;
    open_.insert(key);
  }
}

void CostOracle::expand_one() {
  const OpenKey top = *open_.begin();
  open_.erase(open_.begin());
  const State s{top.code};
  const double g = open_g_.at(s);
  open_g_.erase(s);
  open_key_.erase(s);
  closed_.emplace(s, g);
  ++expansions_;

  const double ng = g + step_cost_;
  for (const auto& pred : domain_->predecessors(s, goal_)) {
    const State p = pred.prev;
    if (closed_.count(p) != 0U) continue;
    auto it = open_g_.find(p);
    if (it != open_g_.end()) {
      if (it->second <= ng) continue;
      open_.erase(open_key_.at(p));
      it->second = ng;
    } else {
      open_g_.emplace(p, ng);
    }
    const double hp = h(p);
    const OpenKey key{ng + hp, hp, p.code};
    open_key_[p] = key;
    open_.insert(key);
  }
}

std::optional<double> CostOracle::cost(State state) {
  if (auto it = closed_.find(state); it != closed_.end()) return it->second;
  if (open_.empty()) return std::nullopt;
  // Re-keying costs O(|open|) per new query. Past a modest frontier that
  // dominates, so the search drops the heuristic and continues as plain
  // Dijkstra, which needs no re-keying at all.
  if (!blind_ && open_.size() > kRetargetLimit) {
    blind_ = true;
    retarget(std::nullopt);
  }
  if (!blind_) retarget(state);
  while (!open_.empty()) {
    expand_one();
    if (auto it = closed_.find(state); it != closed_.end()) return it->second;
  }
  return std::nullopt;
}

void CostOracle::precompute_all() {
  retarget(std::nullopt);
  while (!open_.empty()) expand_one();
}

}  // namespace snapinf::policy
