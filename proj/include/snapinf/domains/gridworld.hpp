#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "snapinf/core/domain.hpp"

namespace snapinf::domains {

struct Cell {
  int row = 0;
  int col = 0;

  friend constexpr auto operator<=>(const Cell&, const Cell&) = default;
};

using Rgb = std::array<std::uint8_t, 3>;

struct GemSpec {
  char label = 'a';
  std::string name;
  Cell cell;
  Rgb color{200, 200, 200};
};

enum class StartMode { kEntryways, kUniformAnywhere };

struct GridSpec {
  int width = 0;
  int height = 0;
  std::vector<Cell> walls;
  std::vector<GemSpec> gems;
  StartMode start_mode = StartMode::kEntryways;
  std::vector<Cell> entryways;
};

struct KeySpec {
  char color = 'A';
  Cell cell;
};

struct DoorSpec {
  char color = 'A';
  Cell cell;
};

/// A grid layout extended with colored keys and doors. Walking into a closed
/// door consumes one held key of the door's color and opens it for good.
struct KeysSpec {
  GridSpec grid;
  std::vector<KeySpec> keys;
  std::vector<DoorSpec> doors;
  std::vector<std::pair<char, std::string>> color_names;
};

/// Position plus the keys that were picked up and the doors that were opened.
/// The held inventory is derived: collected keys of a color minus opened
/// doors of that color.
struct GridState {
  Cell cell;
  std::uint32_t collected = 0;
  std::uint32_t opened = 0;
};

/// Four-connected gridworld, optionally with keys and doors. With no keys and
/// no doors the encoding collapses to the row-major cell index.
class GridWorld final : public Domain {
 public:
  static constexpr std::uint32_t kNorth = 0;
  static constexpr std::uint32_t kSouth = 1;
  static constexpr std::uint32_t kEast = 2;
  static constexpr std::uint32_t kWest = 3;
  static constexpr std::uint32_t kPickup = 4;

  explicit GridWorld(GridSpec spec);
  explicit GridWorld(KeysSpec spec);

  std::string_view kind() const override { return keys_.empty() && doors_.empty() ? "grid" : "keys"; }
  std::size_t goal_count() const override { return gems_.size(); }
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

  int width() const { return width_; }
  int height() const { return height_; }
  bool is_wall(Cell c) const;
  bool in_bounds(Cell c) const { return c.row >= 0 && c.row < height_ && c.col >= 0 && c.col < width_; }
  const std::vector<GemSpec>& gems() const { return gems_; }
  const std::vector<KeySpec>& keys() const { return keys_; }
  const std::vector<DoorSpec>& doors() const { return doors_; }
  std::optional<int> door_at(Cell c) const;
  std::optional<int> key_at(Cell c) const;

  State encode(const GridState& s) const;
  GridState decode(State s) const;
  /// Number of keys of `color` held in `s`.
  int held(const GridState& s, char color) const;
  /// Result of taking `action` in `s`, or nullopt if the action is illegal.
  std::optional<GridState> apply(const GridState& s, Action action) const;

 private:
  void init(const GridSpec& grid);
  int index(Cell c) const { return c.row * width_ + c.col; }
  Cell cell_at(int idx) const { return Cell{idx / width_, idx % width_}; }
  bool masks_consistent(std::uint32_t collected, std::uint32_t opened) const;

  int width_ = 0;
  int height_ = 0;
  std::vector<bool> wall_;
  std::vector<int> door_index_;
  std::vector<int> key_index_;
  std::vector<GemSpec> gems_;
  std::vector<KeySpec> keys_;
  std::vector<DoorSpec> doors_;
  std::vector<std::pair<char, std::string>> color_names_;
  StartPrior start_prior_;
};

}  // namespace snapinf::domains
