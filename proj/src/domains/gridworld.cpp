#include "snapinf/domains/gridworld.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cstdlib>
#include <sstream>

namespace snapinf::domains {

namespace {

constexpr int kMaxKeys = 8;
constexpr int kMaxDoors = 8;

constexpr std::array<std::pair<int, int>, 4> kMoves{{{-1, 0}, {1, 0}, {0, 1}, {0, -1}}};

int parse_int(std::string_view text, std::string_view literal) {
  int value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw ConfigError("malformed cell in state literal '" + std::string(literal) + "'");
  }
  return value;
}

Cell parse_cell(std::string_view text, char sep, std::string_view literal) {
  const auto pos = text.find(sep);
  if (pos == std::string_view::npos) {
    throw ConfigError("expected row" + std::string(1, sep) + "col in '" + std::string(literal) + "'");
  }
  return Cell{parse_int(text.substr(0, pos), literal), parse_int(text.substr(pos + 1), literal)};
}

}  // namespace

GridWorld::GridWorld(GridSpec spec) { init(spec); }

GridWorld::GridWorld(KeysSpec spec) {
  if (spec.keys.size() > kMaxKeys || spec.doors.size() > kMaxDoors) {
    throw ConfigError("at most 8 keys and 8 doors are supported");
  }
  keys_ = std::move(spec.keys);
  doors_ = std::move(spec.doors);
  color_names_ = std::move(spec.color_names);
  init(spec.grid);
}

void GridWorld::init(const GridSpec& grid) {
  if (grid.width <= 0 || grid.height <= 0) throw ConfigError("grid must have positive size");
  width_ = grid.width;
  height_ = grid.height;
  const auto cells = static_cast<std::size_t>(width_ * height_);
  wall_.assign(cells, false);
  door_index_.assign(cells, -1);
  key_index_.assign(cells, -1);

  for (Cell w : grid.walls) {
    if (!in_bounds(w)) throw ConfigError("wall outside the grid");
    wall_[static_cast<std::size_t>(index(w))] = true;
  }
  for (std::size_t i = 0; i < keys_.size(); ++i) {
    const Cell c = keys_[i].cell;
    if (!in_bounds(c) || is_wall(c)) throw ConfigError("key placed on a wall");
    for (std::size_t j = 0; j < i; ++j) {
      if (keys_[j].color == keys_[i].color) {
        throw ConfigError(std::string("duplicate key color '") + keys_[i].color + "'");
      }
    }
    key_index_[static_cast<std::size_t>(index(c))] = static_cast<int>(i);
  }
  for (std::size_t i = 0; i < doors_.size(); ++i) {
    const Cell c = doors_[i].cell;
    if (!in_bounds(c) || is_wall(c)) throw ConfigError("door placed on a wall");
    if (key_index_[static_cast<std::size_t>(index(c))] >= 0) throw ConfigError("door placed on a key");
    door_index_[static_cast<std::size_t>(index(c))] = static_cast<int>(i);
    const bool has_key = std::any_of(keys_.begin(), keys_.end(),
                                     [&](const KeySpec& k) { return k.color == doors_[i].color; });
    if (!has_key) throw ConfigError(std::string("door color '") + doors_[i].color + "' has no key");
  }

  gems_ = grid.gems;
  if (gems_.empty()) throw ConfigError("grid has no gems");
  for (std::size_t i = 0; i < gems_.size(); ++i) {
    const Cell c = gems_[i].cell;
    if (!in_bounds(c) || is_wall(c)) throw ConfigError("gem placed on a wall");
    if (door_at(c) || key_at(c)) throw ConfigError("gem placed on a key or door");
    for (std::size_t j = 0; j < i; ++j) {
      if (gems_[j].label == gems_[i].label) {
        throw ConfigError(std::string("duplicate gem label '") + gems_[i].label + "'");
      }
      if (gems_[j].cell == c) throw ConfigError("two gems share a cell");
    }
    if (gems_[i].name.empty()) gems_[i].name = std::string(1, gems_[i].label);
  }

  auto is_gem = [&](Cell c) {
    return std::any_of(gems_.begin(), gems_.end(), [&](const GemSpec& g) { return g.cell == c; });
  };

  std::vector<State> starts;
  if (grid.start_mode == StartMode::kEntryways) {
    if (grid.entryways.empty()) throw ConfigError("grid has no entryways");
    for (Cell c : grid.entryways) {
      if (!in_bounds(c) || is_wall(c) || door_at(c)) throw ConfigError("entryway is not floor");
      if (is_gem(c)) throw ConfigError("entryway sits on a gem");
      starts.push_back(encode(GridState{c, 0, 0}));
    }
  } else {
    for (int r = 0; r < height_; ++r) {
      for (int c = 0; c < width_; ++c) {
        const Cell cell{r, c};
        if (is_wall(cell) || is_gem(cell) || door_at(cell)) continue;
        starts.push_back(encode(GridState{cell, 0, 0}));
      }
    }
  }
  start_prior_ = StartPrior::uniform(std::move(starts));
}

std::string GridWorld::goal_name(Goal goal) const { return gems_.at(goal.index).name; }

bool GridWorld::is_wall(Cell c) const { return wall_[static_cast<std::size_t>(index(c))]; }

std::optional<int> GridWorld::door_at(Cell c) const {
  const int d = door_index_[static_cast<std::size_t>(index(c))];
  return d < 0 ? std::nullopt : std::optional<int>(d);
}

std::optional<int> GridWorld::key_at(Cell c) const {
  const int k = key_index_[static_cast<std::size_t>(index(c))];
  return k < 0 ? std::nullopt : std::optional<int>(k);
}

State GridWorld::encode(const GridState& s) const {
  const auto shift = keys_.size() + doors_.size();
  const std::uint64_t code = (static_cast<std::uint64_t>(index(s.cell)) << shift) |
                             (static_cast<std::uint64_t>(s.collected) << doors_.size()) |
                             static_cast<std::uint64_t>(s.opened);
  return State{code};
}

GridState GridWorld::decode(State s) const {
  const auto shift = keys_.size() + doors_.size();
  GridState out;
  out.opened = static_cast<std::uint32_t>(s.code & ((1ULL << doors_.size()) - 1));
  out.collected = static_cast<std::uint32_t>((s.code >> doors_.size()) & ((1ULL << keys_.size()) - 1));
  out.cell = cell_at(static_cast<int>(s.code >> shift));
  return out;
}

int GridWorld::held(const GridState& s, char color) const {
  int count = 0;
  for (std::size_t k = 0; k < keys_.size(); ++k) {
    if (keys_[k].color == color && (s.collected >> k) & 1U) ++count;
  }
  for (std::size_t d = 0; d < doors_.size(); ++d) {
    if (doors_[d].color == color && (s.opened >> d) & 1U) --count;
  }
  return count;
}

bool GridWorld::masks_consistent(std::uint32_t collected, std::uint32_t opened) const {
  const GridState probe{Cell{}, collected, opened};
  for (const auto& door : doors_) {
    if (held(probe, door.color) < 0) return false;
  }
  return true;
}

bool GridWorld::is_valid(State state) const {
  const auto shift = keys_.size() + doors_.size();
  if ((state.code >> shift) >= static_cast<std::uint64_t>(width_ * height_)) return false;
  const GridState s = decode(state);
  if (is_wall(s.cell)) return false;
  if (auto d = door_at(s.cell); d && !((s.opened >> *d) & 1U)) return false;
  return masks_consistent(s.collected, s.opened);
}

std::optional<GridState> GridWorld::apply(const GridState& s, Action action) const {
  if (action.id == kPickup) {
    const auto k = key_at(s.cell);
    if (!k || ((s.collected >> *k) & 1U)) return std::nullopt;
    GridState next = s;
    next.collected |= 1U << *k;
    return next;
  }
  if (action.id >= kMoves.size()) return std::nullopt;
  const auto [dr, dc] = kMoves[action.id];
  const Cell n{s.cell.row + dr, s.cell.col + dc};
  if (!in_bounds(n) || is_wall(n)) return std::nullopt;
  GridState next = s;
  next.cell = n;
  if (auto d = door_at(n); d && !((s.opened >> *d) & 1U)) {
    if (held(s, doors_[static_cast<std::size_t>(*d)].color) < 1) return std::nullopt;
    next.opened |= 1U << *d;
  }
  return next;
}

bool GridWorld::is_end_state(State state, Goal goal) const {
  return decode(state).cell == gems_.at(goal.index).cell;
}

std::vector<Transition> GridWorld::successors(State state, Goal goal) const {
  std::vector<Transition> out;
  if (is_end_state(state, goal)) return out;
  const GridState s = decode(state);
  for (std::uint32_t a = 0; a <= kPickup; ++a) {
    if (auto next = apply(s, Action{a})) out.push_back(Transition{encode(*next), Action{a}, 1.0});
  }
  std::sort(out.begin(), out.end(), [](const Transition& x, const Transition& y) {
    return std::tie(x.next, x.action) < std::tie(y.next, y.action);
  });
  return out;
}

std::vector<Predecessor> GridWorld::predecessors(State state, Goal goal) const {
  std::vector<Predecessor> out;
  const GridState s = decode(state);
  auto consider = [&](const GridState& prev, std::uint32_t action) {
    const State code = encode(prev);
    if (!is_valid(code) || is_end_state(code, goal)) return;
    auto forward = apply(prev, Action{action});
    if (forward && encode(*forward) == state) out.push_back(Predecessor{code, Action{action}});
  };
  for (std::uint32_t a = 0; a < kMoves.size(); ++a) {
    // The predecessor sits on the opposite side of the move.
    const auto [dr, dc] = kMoves[a];
    const Cell from{s.cell.row - dr, s.cell.col - dc};
    if (!in_bounds(from) || is_wall(from)) continue;
    consider(GridState{from, s.collected, s.opened}, a);
    if (auto d = door_at(s.cell); d && ((s.opened >> *d) & 1U)) {
      consider(GridState{from, s.collected, s.opened & ~(1U << *d)}, a);
    }
  }
  if (auto k = key_at(s.cell); k && ((s.collected >> *k) & 1U)) {
    consider(GridState{s.cell, s.collected & ~(1U << *k), s.opened}, kPickup);
  }
  std::sort(out.begin(), out.end(), [](const Predecessor& x, const Predecessor& y) {
    return std::tie(x.prev, x.action) < std::tie(y.prev, y.action);
  });
  return out;
}

std::vector<State> GridWorld::end_states(Goal goal) const {
  std::vector<State> out;
  const Cell cell = gems_.at(goal.index).cell;
  for (std::uint32_t c = 0; c < (1U << keys_.size()); ++c) {
    for (std::uint32_t o = 0; o < (1U << doors_.size()); ++o) {
      if (masks_consistent(c, o)) out.push_back(encode(GridState{cell, c, o}));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

double GridWorld::heuristic(State from, State to) const {
  const Cell a = decode(from).cell;
  const Cell b = decode(to).cell;
  return std::abs(a.row - b.row) + std::abs(a.col - b.col);
}

std::optional<std::vector<State>> GridWorld::enumerate_states() const {
  std::vector<State> out;
  for (int idx = 0; idx < width_ * height_; ++idx) {
    const Cell cell = cell_at(idx);
    if (is_wall(cell)) continue;
    for (std::uint32_t c = 0; c < (1U << keys_.size()); ++c) {
      for (std::uint32_t o = 0; o < (1U << doors_.size()); ++o) {
        const State s = encode(GridState{cell, c, o});
        if (is_valid(s)) out.push_back(s);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::string GridWorld::format_state(State state) const {
  const GridState s = decode(state);
  std::ostringstream os;
  os << s.cell.row << ',' << s.cell.col;
  if (s.collected != 0) {
    os << " keys=";
    for (std::size_t k = 0; k < keys_.size(); ++k) {
      if ((s.collected >> k) & 1U) os << keys_[k].color;
    }
  }
  if (s.opened != 0) {
    os << " open=";
    bool first = true;
    for (std::size_t d = 0; d < doors_.size(); ++d) {
      if (!((s.opened >> d) & 1U)) continue;
      if (!first) os << '/';
      first = false;
      os << doors_[d].cell.row << ':' << doors_[d].cell.col;
    }
  }
  return os.str();
}

State GridWorld::parse_state(std::string_view literal) const {
  std::istringstream is{std::string(literal)};
  std::string token;
  if (!(is >> token)) throw ConfigError("empty state literal");
  GridState s;
  s.cell = parse_cell(token, ',', literal);
  while (is >> token) {
    if (token.rfind("keys=", 0) == 0) {
      for (char color : token.substr(5)) {
        auto it = std::find_if(keys_.begin(), keys_.end(), [&](const KeySpec& k) { return k.color == color; });
        if (it == keys_.end()) throw ConfigError(std::string("unknown key '") + color + "'");
        s.collected |= 1U << static_cast<unsigned>(it - keys_.begin());
      }
    } else if (token.rfind("open=", 0) == 0) {
      std::string_view rest = std::string_view(token).substr(5);
      while (!rest.empty()) {
        const auto slash = rest.find('/');
        const Cell c = parse_cell(rest.substr(0, slash), ':', literal);
        const auto d = in_bounds(c) ? door_at(c) : std::nullopt;
        if (!d) throw ConfigError("no door at " + std::string(rest.substr(0, slash)));
        s.opened |= 1U << *d;
        rest = slash == std::string_view::npos ? std::string_view{} : rest.substr(slash + 1);
      }
    } else {
      throw ConfigError("unexpected token '" + token + "' in state literal");
    }
  }
  if (!in_bounds(s.cell)) throw ConfigError("state literal outside the grid: " + std::string(literal));
  const State code = encode(s);
  if (!is_valid(code)) throw ConfigError("state literal is not a valid state: " + std::string(literal));
  return code;
}

}  // namespace snapinf::domains
