#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "snapinf/core/start_prior.hpp"
#include "snapinf/core/types.hpp"

namespace snapinf {

/// A goal-parameterized MDP with forward and backward one-step structure.
///
/// Implementations are immutable after construction. Every list-returning
/// operation yields entries sorted by the canonical encoding of the state
/// involved, so repeated calls are reproducible.
class Domain {
 public:
  virtual ~Domain() = default;

  virtual std::string_view kind() const = 0;

  virtual std::size_t goal_count() const = 0;
  virtual std::string goal_name(Goal goal) const = 0;

  /// All one-step transitions from `state`. Empty for end states.
  virtual std::vector<Transition> successors(State state, Goal goal) const = 0;

  /// The inverse image of `successors`: every (p, a) such that `state` is a
  /// successor of p under action a.
  virtual std::vector<Predecessor> predecessors(State state, Goal goal) const = 0;

  virtual bool is_end_state(State state, Goal goal) const = 0;

  virtual const StartPrior& start_prior() const = 0;

  virtual bool is_valid(State state) const = 0;

  /// Every valid state that is an end state for `goal`.
  virtual std::vector<State> end_states(Goal goal) const = 0;

  /// Lower bound on the number of actions needed to go from `from` to `to`.
  /// Must be consistent: changes by at most one across a single transition.
  virtual double heuristic(State from, State to) const = 0;

  /// All valid states in canonical order, or nullopt when the state space is
  /// too large to enumerate.
  virtual std::optional<std::vector<State>> enumerate_states() const = 0;

  virtual std::string format_state(State state) const = 0;
  /// Throws ConfigError when the literal does not denote a valid state.
  virtual State parse_state(std::string_view literal) const = 0;
};

std::vector<Goal> goals_of(const Domain& domain);

/// Looks a goal up by its name; throws ConfigError if absent.
Goal goal_by_name(const Domain& domain, std::string_view name);

}  // namespace snapinf
