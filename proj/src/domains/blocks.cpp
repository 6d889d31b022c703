#include "snapinf/domains/blocks.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <sstream>

namespace snapinf::domains {

namespace {

constexpr std::size_t kMaxEnumerable = 1'000'000;

// Appends every way of splitting `order` into `slots` consecutive runs.
void distribute(const std::vector<int>& order, std::size_t pos, int slots, Stacks& current,
                std::vector<Stacks>& out) {
  if (current.size() + 1 == static_cast<std::size_t>(slots)) {
    current.emplace_back(order.begin() + static_cast<std::ptrdiff_t>(pos), order.end());
    out.push_back(current);
    current.pop_back();
    return;
  }
  for (std::size_t end = pos; end <= order.size(); ++end) {
    current.emplace_back(order.begin() + static_cast<std::ptrdiff_t>(pos),
                         order.begin() + static_cast<std::ptrdiff_t>(end));
    distribute(order, end, slots, current, out);
    current.pop_back();
  }
}

std::vector<Stacks> all_arrangements(std::vector<int> blocks, int slots) {
  std::vector<Stacks> out;
  if (slots == 0) {
    if (blocks.empty()) out.emplace_back();
    return out;
  }
  std::sort(blocks.begin(), blocks.end());
  do {
    Stacks current;
    distribute(blocks, 0, slots, current, out);
  } while (std::next_permutation(blocks.begin(), blocks.end()));
  return out;
}

// Allocation-free view of a state: blocks in token order plus run lengths.
struct Flat {
  std::array<std::uint8_t, 16> blocks{};
  std::array<std::uint8_t, 16> len{};
  std::array<std::uint8_t, 16> begin{};
  int slots = 0;
};

Flat flatten(std::uint64_t code, int tokens) {
  Flat f;
  int n = 0;
  for (int i = tokens - 1; i >= 0; --i) {
    const auto token = static_cast<std::uint8_t>((code >> (4 * i)) & 0xFULL);
    if (token == 0xF) {
      f.begin[static_cast<std::size_t>(f.slots)] = static_cast<std::uint8_t>(n - f.len[static_cast<std::size_t>(f.slots)]);
      ++f.slots;
    } else {
      f.blocks[static_cast<std::size_t>(n++)] = token;
      ++f.len[static_cast<std::size_t>(f.slots)];
    }
  }
  return f;
}

// Code of `f` after moving the top block of slot `from` onto slot `to`.
std::uint64_t moved_code(const Flat& f, int from, int to) {
  const auto top = f.blocks[static_cast<std::size_t>(f.begin[static_cast<std::size_t>(from)] +
                                                     f.len[static_cast<std::size_t>(from)] - 1)];
  std::uint64_t code = 0;
  for (int s = 0; s < f.slots; ++s) {
    const auto us = static_cast<std::size_t>(s);
    const int keep = s == from ? f.len[us] - 1 : f.len[us];
    for (int h = 0; h < keep; ++h) code = (code << 4) | f.blocks[static_cast<std::size_t>(f.begin[us] + h)];
    if (s == to) code = (code << 4) | top;
    code = (code << 4) | 0xFULL;
  }
  return code;
}

// Support of each block: the block beneath it, or -(slot+1) on the table.
std::array<int, 16> flat_supports(const Flat& f) {
  std::array<int, 16> out{};
  for (int s = 0; s < f.slots; ++s) {
    const auto us = static_cast<std::size_t>(s);
    for (int h = 0; h < f.len[us]; ++h) {
      const auto at = static_cast<std::size_t>(f.begin[us] + h);
      out[f.blocks[at]] = h == 0 ? -s - 1 : f.blocks[at - 1];
    }
  }
  return out;
}

double binomial(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

BlocksDomain::BlocksDomain(BlocksSpec spec) : spec_(std::move(spec)) {
  const int b = block_count();
  if (b == 0) throw ConfigError("blocks domain has no letters");
  if (spec_.table_slots < 1) throw ConfigError("blocks domain needs at least one slot");
  if (b + spec_.table_slots > 16) throw ConfigError("blocks plus slots must not exceed 16");
  for (int i = 0; i < b; ++i) {
    for (int j = 0; j < i; ++j) {
      if (spec_.letters[static_cast<std::size_t>(i)] == spec_.letters[static_cast<std::size_t>(j)]) {
        throw ConfigError(std::string("duplicate block letter '") + spec_.letters[static_cast<std::size_t>(i)] + "'");
      }
    }
  }
  if (spec_.dictionary.empty()) throw ConfigError("blocks dictionary is empty");
  for (const auto& word : spec_.dictionary) {
    std::vector<int> blocks;
    for (char ch : word) {
      auto it = std::find(spec_.letters.begin(), spec_.letters.end(), ch);
      if (it == spec_.letters.end() ||
          std::find(blocks.begin(), blocks.end(), it - spec_.letters.begin()) != blocks.end()) {
        throw ConfigError("word '" + word + "' cannot be spelled from the blocks");
      }
      blocks.push_back(static_cast<int>(it - spec_.letters.begin()));
    }
    if (blocks.empty()) throw ConfigError("empty dictionary word");
    word_blocks_.push_back(std::move(blocks));
  }

  std::vector<State> starts;
  if (spec_.prior == BlocksPrior::kUniformScatter) {
    if (spec_.table_slots < b) throw ConfigError("scatter prior needs at least one slot per block");
    std::vector<int> slots(static_cast<std::size_t>(spec_.table_slots));
    std::iota(slots.begin(), slots.end(), 0);
    // Each ordered choice of b distinct slots is one scatter.
    std::vector<bool> pick(slots.size(), false);
    std::fill(pick.begin(), pick.begin() + b, true);
    do {
      std::vector<int> chosen;
      for (std::size_t i = 0; i < pick.size(); ++i) {
        if (pick[i]) chosen.push_back(static_cast<int>(i));
      }
      std::vector<int> order(static_cast<std::size_t>(b));
      std::iota(order.begin(), order.end(), 0);
      do {
        Stacks stacks(static_cast<std::size_t>(spec_.table_slots));
        for (int k = 0; k < b; ++k) {
          stacks[static_cast<std::size_t>(chosen[static_cast<std::size_t>(k)])].push_back(order[static_cast<std::size_t>(k)]);
        }
        starts.push_back(encode(stacks));
      } while (std::next_permutation(order.begin(), order.end()));
    } while (std::prev_permutation(pick.begin(), pick.end()));
  } else {
    for (const auto& literal : spec_.explicit_starts) starts.push_back(parse_state(literal));
  }
  for (State s : starts) {
    for (std::uint32_t g = 0; g < goal_count(); ++g) {
      if (is_end_state(s, Goal{g})) throw ConfigError("a start configuration already spells a goal word");
    }
  }
  start_prior_ = StartPrior::uniform(std::move(starts));
}

State BlocksDomain::encode(const Stacks& stacks) const {
  std::uint64_t code = 0;
  for (const auto& stack : stacks) {
    for (int block : stack) code = (code << 4) | static_cast<std::uint64_t>(block);
    code = (code << 4) | kSeparator;
  }
  return State{code};
}

Stacks BlocksDomain::decode(State state) const {
  const int tokens = block_count() + spec_.table_slots;
  Stacks stacks(1);
  for (int i = tokens - 1; i >= 0; --i) {
    const auto token = (state.code >> (4 * i)) & 0xFULL;
    if (token == kSeparator) {
      stacks.emplace_back();
    } else {
      stacks.back().push_back(static_cast<int>(token));
    }
  }
  stacks.pop_back();
  return stacks;
}

bool BlocksDomain::is_valid(State state) const {
  const int tokens = block_count() + spec_.table_slots;
  if (tokens < 16 && (state.code >> (4 * tokens)) != 0) return false;
  std::vector<int> seen(static_cast<std::size_t>(block_count()), 0);
  int separators = 0;
  for (int i = tokens - 1; i >= 0; --i) {
    const auto token = (state.code >> (4 * i)) & 0xFULL;
    if (token == kSeparator) {
      ++separators;
    } else if (token < static_cast<std::uint64_t>(block_count())) {
      ++seen[token];
    } else {
      return false;
    }
  }
  if ((state.code & 0xFULL) != kSeparator) return false;
  return separators == spec_.table_slots &&
         std::all_of(seen.begin(), seen.end(), [](int c) { return c == 1; });
}

bool BlocksDomain::is_end_state(State state, Goal goal) const {
  const auto& word = word_blocks_.at(goal.index);
  const Flat f = flatten(state.code, block_count() + spec_.table_slots);
  for (int s = 0; s < f.slots; ++s) {
    const auto us = static_cast<std::size_t>(s);
    if (f.len[us] != word.size()) continue;
    bool match = true;
    for (std::size_t h = 0; h < word.size() && match; ++h) {
      match = f.blocks[f.begin[us] + h] == word[h];
    }
    if (match) return true;
  }
  return false;
}

std::vector<Transition> BlocksDomain::successors(State state, Goal goal) const {
  std::vector<Transition> out;
  if (is_end_state(state, goal)) return out;
  const Flat f = flatten(state.code, block_count() + spec_.table_slots);
  const int slots = spec_.table_slots;
  out.reserve(static_cast<std::size_t>(slots * (slots - 1)));
  for (int from = 0; from < slots; ++from) {
    if (f.len[static_cast<std::size_t>(from)] == 0) continue;
    for (int to = 0; to < slots; ++to) {
      if (to == from) continue;
      out.push_back(Transition{State{moved_code(f, from, to)}, Action{static_cast<std::uint32_t>(from * slots + to)}, 1.0});
    }
  }
  std::sort(out.begin(), out.end(), [](const Transition& x, const Transition& y) {
    return std::tie(x.next, x.action) < std::tie(y.next, y.action);
  });
  return out;
}

std::vector<Predecessor> BlocksDomain::predecessors(State state, Goal goal) const {
  std::vector<Predecessor> out;
  const Flat f = flatten(state.code, block_count() + spec_.table_slots);
  const int slots = spec_.table_slots;
  out.reserve(static_cast<std::size_t>(slots * (slots - 1)));
  // The last move put the top block of slot `to` there from some other slot.
  for (int to = 0; to < slots; ++to) {
    if (f.len[static_cast<std::size_t>(to)] == 0) continue;
    for (int from = 0; from < slots; ++from) {
      if (from == to) continue;
      const State p{moved_code(f, to, from)};
      if (is_end_state(p, goal)) continue;
      out.push_back(Predecessor{p, Action{static_cast<std::uint32_t>(from * slots + to)}});
    }
  }
  std::sort(out.begin(), out.end(), [](const Predecessor& x, const Predecessor& y) {
    return std::tie(x.prev, x.action) < std::tie(y.prev, y.action);
  });
  return out;
}

std::vector<State> BlocksDomain::end_states(Goal goal) const {
  const auto& word = word_blocks_.at(goal.index);
  std::vector<int> rest;
  for (int b = 0; b < block_count(); ++b) {
    if (std::find(word.begin(), word.end(), b) == word.end()) rest.push_back(b);
  }
  const auto others = all_arrangements(rest, spec_.table_slots - 1);
  std::vector<State> out;
  for (int slot = 0; slot < spec_.table_slots; ++slot) {
    for (const auto& arrangement : others) {
      Stacks stacks = arrangement;
      stacks.insert(stacks.begin() + slot, word);
      out.push_back(encode(stacks));
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<int> BlocksDomain::supports(const Stacks& stacks) const {
  // Support of a block: the block beneath it, or -(slot+1) when on the table.
  std::vector<int> out(static_cast<std::size_t>(block_count()), 0);
  for (std::size_t slot = 0; slot < stacks.size(); ++slot) {
    const auto& stack = stacks[slot];
    for (std::size_t h = 0; h < stack.size(); ++h) {
      out[static_cast<std::size_t>(stack[h])] = h == 0 ? -static_cast<int>(slot) - 1 : stack[h - 1];
    }
  }
  return out;
}

double BlocksDomain::heuristic(State from, State to) const {
  const int tokens = block_count() + spec_.table_slots;
  const auto a = flat_supports(flatten(from.code, tokens));
  const auto b = flat_supports(flatten(to.code, tokens));
  int differing = 0;
  for (int i = 0; i < block_count(); ++i) differing += a[static_cast<std::size_t>(i)] != b[static_cast<std::size_t>(i)] ? 1 : 0;
  return differing;
}

std::optional<std::vector<State>> BlocksDomain::enumerate_states() const {
  double count = 1.0;
  for (int i = 2; i <= block_count(); ++i) count *= i;
  count *= binomial(block_count() + spec_.table_slots - 1, spec_.table_slots - 1);
  if (count > static_cast<double>(kMaxEnumerable)) return std::nullopt;
  std::vector<int> blocks(static_cast<std::size_t>(block_count()));
  std::iota(blocks.begin(), blocks.end(), 0);
  std::vector<State> out;
  for (const auto& stacks : all_arrangements(blocks, spec_.table_slots)) out.push_back(encode(stacks));
  std::sort(out.begin(), out.end());
  return out;
}

std::string BlocksDomain::format_state(State state) const {
  std::string out;
  bool first = true;
  for (const auto& stack : decode(state)) {
    if (!first) out += '|';
    first = false;
    for (int block : stack) out += spec_.letters[static_cast<std::size_t>(block)];
  }
  return out;
}

State BlocksDomain::parse_state(std::string_view literal) const {
  Stacks stacks(1);
  for (char ch : literal) {
    if (ch == '|') {
      stacks.emplace_back();
      continue;
    }
    auto it = std::find(spec_.letters.begin(), spec_.letters.end(), ch);
    if (it == spec_.letters.end()) {
      throw ConfigError("unknown block '" + std::string(1, ch) + "' in '" + std::string(literal) + "'");
    }
    stacks.back().push_back(static_cast<int>(it - spec_.letters.begin()));
  }
  if (static_cast<int>(stacks.size()) != spec_.table_slots) {
    throw ConfigError("blocks literal '" + std::string(literal) + "' must list " +
                      std::to_string(spec_.table_slots) + " slots");
  }
  const State s = encode(stacks);
  if (!is_valid(s)) throw ConfigError("blocks literal '" + std::string(literal) + "' must use every block once");
  return s;
}

int BlocksDomain::moved_block(State from, State to) const {
  const auto a = supports(decode(from));
  const auto b = supports(decode(to));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] != b[i]) return static_cast<int>(i);
  }
  return -1;
}

bool BlocksDomain::touched_before(const std::vector<State>& trace, std::size_t snapshot_index,
                                  int block) const {
  for (std::size_t i = 0; i < snapshot_index && i + 1 < trace.size(); ++i) {
    if (moved_block(trace[i], trace[i + 1]) == block) return true;
  }
  return false;
}

}  // namespace snapinf::domains
