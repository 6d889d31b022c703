#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <tuple>
#include <unordered_map>

#include "snapinf/core/domain.hpp"

namespace snapinf::policy {

/// Optimal remaining cost C(x -> goal), computed by an A* search that runs
/// backwards from the goal's end states and is resumed on demand.
///
/// The open and closed lists persist across queries. A query for a state
/// that is already closed is a lookup; otherwise the frontier is re-keyed
/// with the heuristic toward the new query state and expansion resumes until
/// that state is closed. Once the open list outgrows kRetargetLimit the
/// heuristic is dropped for good and the search runs in cost order. Any
/// consistent heuristic closes nodes at their
/// optimal cost, so answers do not depend on the order of queries.
///
/// Not thread-safe; copy one oracle per worker.
class CostOracle {
 public:
  CostOracle(const Domain& domain, Goal goal, double step_cost);

  /// nullopt when the goal is unreachable from `state`.
  std::optional<double> cost(State state);

  /// Expands the whole backward-reachable region.
  void precompute_all();

  std::size_t expansions() const { return expansions_; }
  std::size_t closed_count() const { return closed_.size(); }

  static constexpr std::size_t kRetargetLimit = 4096;

 private:
  struct OpenKey {
    double f;
    double h;
    std::uint64_t code;
    friend auto operator<=>(const OpenKey&, const OpenKey&) = default;
  };

  void retarget(std::optional<State> target);
  double h(State s) const;
  void expand_one();

  const Domain* domain_;
  Goal goal_;
  double step_cost_;
  std::optional<State> target_;
  bool blind_ = false;
  std::set<OpenKey> open_;
  std::unordered_map<State, double, StateHash> open_g_;
  std::unordered_map<State, OpenKey, StateHash> open_key_;
  std::unordered_map<State, double, StateHash> closed_;
  std::size_t expansions_ = 0;
};

}  // namespace snapinf::policy
