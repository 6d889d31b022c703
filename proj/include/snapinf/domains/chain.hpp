#pragma once

#include <string>
#include <vector>

#include "snapinf/core/domain.hpp"

namespace snapinf::domains {

struct ChainSpec {
  int length = 4;
  std::vector<int> goal_positions{3};
  std::vector<std::string> goal_names;
  std::vector<int> start_positions{0, 1, 2};
  bool rightward_only = true;
};

/// States 0..length-1 on a line. Small enough to enumerate every path, which
/// makes it the reference fixture for estimator checks.
class ChainDomain final : public Domain {
 public:
  static constexpr std::uint32_t kRight = 0;
  static constexpr std::uint32_t kLeft = 1;

  explicit ChainDomain(ChainSpec spec);

  std::string_view kind() const override { return "chain"; }
  std::size_t goal_count() const override { return spec_.goal_positions.size(); }
  std::string goal_name(Goal goal) const override;
  std::vector<Transition> successors(State state, Goal goal) const override;
  std::vector<Predecessor> predecessors(State state, Goal goal) const override;
  bool is_end_state(State state, Goal goal) const override;
  const StartPrior& start_prior() const override { return start_prior_; }
  bool is_valid(State state) const override;
  std::vector<State> end_states(Goal goal) const override;
  double heuristic(State from, State to) const override;
  std::optional<std::vector<State>> enumerate_states() const override;
  std::string format_state(State state) const override;
  State parse_state(std::string_view literal) const override;

  const ChainSpec& spec() const { return spec_; }

 private:
  ChainSpec spec_;
  StartPrior start_prior_;
};

}  // namespace snapinf::domains
