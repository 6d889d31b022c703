#include "snapinf/domains/chain.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>

namespace snapinf::domains {

ChainDomain::ChainDomain(ChainSpec spec) : spec_(std::move(spec)) {
  if (spec_.length < 2) throw ConfigError("chain needs at least two states");
  if (spec_.goal_positions.empty()) throw ConfigError("chain has no goals");
  for (int g : spec_.goal_positions) {
    if (g < 0 || g >= spec_.length) throw ConfigError("chain goal outside the chain");
  }
  if (spec_.goal_names.empty()) {
    for (int g : spec_.goal_positions) spec_.goal_names.push_back("g" + std::to_string(g));
  }
  if (spec_.goal_names.size() != spec_.goal_positions.size()) {
    throw ConfigError("chain goal names and positions differ in count");
  }
  std::vector<State> starts;
  for (int s : spec_.start_positions) {
    if (s < 0 || s >= spec_.length) throw ConfigError("chain start outside the chain");
    starts.push_back(State{static_cast<std::uint64_t>(s)});
  }
  start_prior_ = StartPrior::uniform(std::move(starts));
}

std::string ChainDomain::goal_name(Goal goal) const { return spec_.goal_names.at(goal.index); }

bool ChainDomain::is_valid(State state) const {
  return state.code < static_cast<std::uint64_t>(spec_.length);
}

bool ChainDomain::is_end_state(State state, Goal goal) const {
  return static_cast<int>(state.code) == spec_.goal_positions.at(goal.index);
}

std::vector<Transition> ChainDomain::successors(State state, Goal goal) const {
  std::vector<Transition> out;
  if (is_end_state(state, goal)) return out;
  const auto pos = static_cast<int>(state.code);
  if (!spec_.rightward_only && pos > 0) {
    out.push_back(Transition{State{static_cast<std::uint64_t>(pos - 1)}, Action{kLeft}, 1.0});
  }
  if (pos + 1 < spec_.length) {
    out.push_back(Transition{State{static_cast<std::uint64_t>(pos + 1)}, Action{kRight}, 1.0});
  }
  return out;
}

std::vector<Predecessor> ChainDomain::predecessors(State state, Goal goal) const {
  std::vector<Predecessor> out;
  const auto pos = static_cast<int>(state.code);
  auto consider = [&](int prev, std::uint32_t action) {
    if (prev < 0 || prev >= spec_.length) return;
    const State p{static_cast<std::uint64_t>(prev)};
    if (!is_end_state(p, goal)) out.push_back(Predecessor{p, Action{action}});
  };
  consider(pos - 1, kRight);
  if (!spec_.rightward_only) consider(pos + 1, kLeft);
  std::sort(out.begin(), out.end(), [](const Predecessor& a, const Predecessor& b) {
    return std::tie(a.prev, a.action) < std::tie(b.prev, b.action);
  });
  return out;
}

std::vector<State> ChainDomain::end_states(Goal goal) const {
  return {State{static_cast<std::uint64_t>(spec_.goal_positions.at(goal.index))}};
}

double ChainDomain::heuristic(State from, State to) const {
  const auto a = static_cast<long long>(from.code);
  const auto b = static_cast<long long>(to.code);
  if (spec_.rightward_only) return b >= a ? static_cast<double>(b - a) : 0.0;
  return static_cast<double>(std::llabs(a - b));
}

std::optional<std::vector<State>> ChainDomain::enumerate_states() const {
  std::vector<State> out;
  for (int i = 0; i < spec_.length; ++i) out.push_back(State{static_cast<std::uint64_t>(i)});
  return out;
}

std::string ChainDomain::format_state(State state) const { return std::to_string(state.code); }

State ChainDomain::parse_state(std::string_view literal) const {
  int pos = -1;
  auto [ptr, ec] = std::from_chars(literal.data(), literal.data() + literal.size(), pos);
  if (ec != std::errc{} || ptr != literal.data() + literal.size() || pos < 0 || pos >= spec_.length) {
    throw ConfigError("invalid chain state '" + std::string(literal) + "'");
  }
  return State{static_cast<std::uint64_t>(pos)};
}

}  // namespace snapinf::domains
