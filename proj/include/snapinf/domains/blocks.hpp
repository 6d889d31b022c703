#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "snapinf/core/domain.hpp"

namespace snapinf::domains {

enum class BlocksPrior { kUniformScatter, kExplicit };

struct BlocksSpec {
  std::vector<char> letters;
  int table_slots = 6;
  std::vector<std::string> dictionary;
  BlocksPrior prior = BlocksPrior::kUniformScatter;
  /// State literals, used when prior is kExplicit.
  std::vector<std::string> explicit_starts;
};

/// Slot-indexed stacks, each listed bottom-to-top by block index.
using Stacks = std::vector<std::vector<int>>;

/// Letter blocks moved one at a time from the top of a stack onto another
/// slot. A goal word is reached when some stack reads the word bottom-to-top.
class BlocksDomain final : public Domain {
 public:
  explicit BlocksDomain(BlocksSpec spec);

  std::string_view kind() const override { return "blocks"; }
  std::size_t goal_count() const override { return spec_.dictionary.size(); }
  std::string goal_name(Goal goal) const override { return spec_.dictionary.at(goal.index); }
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

  const BlocksSpec& spec() const { return spec_; }
  int block_count() const { return static_cast<int>(spec_.letters.size()); }
  int slot_count() const { return spec_.table_slots; }

  State encode(const Stacks& stacks) const;
  Stacks decode(State state) const;

  /// Index of the block whose support differs between two states one move
  /// apart, or -1 if none does.
  int moved_block(State from, State to) const;

  /// True if `block` moved anywhere in trace[0..snapshot_index].
  bool touched_before(const std::vector<State>& trace, std::size_t snapshot_index, int block) const;

 private:
  static constexpr std::uint64_t kSeparator = 0xF;

  std::vector<int> supports(const Stacks& stacks) const;

  BlocksSpec spec_;
  std::vector<std::vector<int>> word_blocks_;
  StartPrior start_prior_;
};

}  // namespace snapinf::domains
