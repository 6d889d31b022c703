#pragma once

// Test-only reference computations. Nothing here touches the samplers or the
// cost oracle; they rebuild the quantities from the raw successor relation.

#include <cmath>
#include <deque>
#include <functional>
#include <limits>
#include <map>
#include <unordered_map>
#include <vector>

#include "snapinf/core/domain.hpp"
#include "snapinf/policy/policy.hpp"

namespace snapinf::testing {

struct EnumerationResult {
  double likelihood = 0.0;
  /// Probability mass of paths still running when enumeration stopped.
  double residual = 0.0;
};

/// Exact p(x | g) = sum over paths through x of P(path) / |path|, computed by
/// enumerating every path prefix grouped by (state, length, visited-x). Stops
/// once the unfinished mass drops below `residual_tol`.
inline EnumerationResult enumerate_likelihood(const Domain& domain, policy::Policy& policy, State x, Goal goal,
                                              double residual_tol = 1e-12, std::size_t max_len = 100000) {
  // key: (state, visited) -> mass of paths of the current length.
  std::map<std::pair<State, bool>, double> frontier;
  for (const auto& [s, p] : domain.start_prior().support()) frontier[{s, s == x}] += p;
  EnumerationResult out;
  for (std::size_t len = 1; len <= max_len; ++len) {
    std::map<std::pair<State, bool>, double> next;
    double alive = 0.0;
    for (const auto& [key, mass] : frontier) {
      const auto [s, visited] = key;
      if (domain.is_end_state(s, goal)) {
        if (visited) out.likelihood += mass / static_cast<double>(len);
        continue;
      }
      for (const auto& step : policy.distribution(s, goal)) {
        const double m = mass * step.prob;
        next[{step.next, visited || step.next == x}] += m;
        alive += m;
      }
    }
    frontier = std::move(next);
    if (alive < residual_tol) {
      out.residual = alive;
      return out;
    }
  }
  for (const auto& [key, mass] : frontier) out.residual += mass;
  return out;
}

/// Literal depth-first enumeration of individual paths, pruning branches whose
/// probability falls below `prune`. Only usable on tiny domains.
inline double enumerate_paths_dfs(const Domain& domain, policy::Policy& policy, State x, Goal goal,
                                  double prune = 1e-14) {
  double total = 0.0;
  std::vector<State> path;
  std::function<void(State, double)> walk = [&](State s, double p) {
    path.push_back(s);
    if (domain.is_end_state(s, goal)) {
      for (State v : path) {
        if (v == x) {
          total += p / static_cast<double>(path.size());
          break;
        }
      }
    } else if (p > prune) {
      for (const auto& step : policy.distribution(s, goal)) walk(step.next, p * step.prob);
    }
    path.pop_back();
  };
  for (const auto& [s, p] : domain.start_prior().support()) walk(s, p);
  return total;
}

/// Unit-cost shortest distances to the goal, computed by BFS on the reversed
/// successor graph of every enumerable state.
inline std::unordered_map<State, int, StateHash> bfs_distances(const Domain& domain, Goal goal) {
  std::unordered_map<State, std::vector<State>, StateHash> reverse;
  const auto states = *domain.enumerate_states();
  for (State s : states) {
    for (const auto& t : domain.successors(s, goal)) reverse[t.next].push_back(s);
  }
  std::unordered_map<State, int, StateHash> dist;
  std::deque<State> queue;
  for (State s : states) {
    if (domain.is_end_state(s, goal)) {
      dist[s] = 0;
      queue.push_back(s);
    }
  }
  while (!queue.empty()) {
    const State s = queue.front();
    queue.pop_front();
    for (State p : reverse[s]) {
      if (dist.count(p) == 0U) {
        dist[p] = dist[s] + 1;
        queue.push_back(p);
      }
    }
  }
  return dist;
}

struct TouchedResult {
  double likelihood = 0.0;
  /// sum over paths through x of P(path)/|path| * [block touched before the last visit to x]
  double touched_mass = 0.0;
};

/// Joint enumeration of the likelihood and the touched-before-snapshot mass
/// for one block. `moved` reports which block differs between two states.
inline TouchedResult enumerate_touched(const Domain& domain, policy::Policy& policy, State x, Goal goal, int block,
                                       const std::function<int(State, State)>& moved,
                                       double residual_tol = 1e-13) {
  // key: (state, touched so far, visited x, touched as of the last x visit)
  using Key = std::tuple<State, bool, bool, bool>;
  std::map<Key, double> frontier;
  for (const auto& [s, p] : domain.start_prior().support()) {
    frontier[{s, false, s == x, false}] += p;
  }
  TouchedResult out;
  for (std::size_t len = 1; len < 100000; ++len) {
    std::map<Key, double> next;
    double alive = 0.0;
    for (const auto& [key, mass] : frontier) {
      const auto [s, touched, visited, snap] = key;
      if (domain.is_end_state(s, goal)) {
        if (visited) {
          out.likelihood += mass / static_cast<double>(len);
          if (snap) out.touched_mass += mass / static_cast<double>(len);
        }
        continue;
      }
      for (const auto& step : policy.distribution(s, goal)) {
        const bool t2 = touched || moved(s, step.next) == block;
        const bool at_x = step.next == x;
        next[{step.next, t2, visited || at_x, at_x ? t2 : snap}] += mass * step.prob;
        alive += mass * step.prob;
      }
    }
    frontier = std::move(next);
    if (alive < residual_tol) break;
  }
  return out;
}

}  // namespace snapinf::testing
