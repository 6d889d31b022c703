#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>

namespace snapinf {

/// Canonical encoding of one domain state. Ordering follows the encoding,
/// which each domain defines so that numeric order equals the lexicographic
/// order of its canonical serialization.
struct State {
  std::uint64_t code = 0;

  friend constexpr auto operator<=>(const State&, const State&) = default;
};

struct StateHash {
  std::size_t operator()(const State& s) const noexcept {
    std::uint64_t z = s.code + 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return static_cast<std::size_t>(z ^ (z >> 31));
  }
};

/// Index into a domain's finite goal set.
struct Goal {
  std::uint32_t index = 0;

  friend constexpr auto operator<=>(const Goal&, const Goal&) = default;
};

struct Action {
  std::uint32_t id = 0;

  friend constexpr auto operator<=>(const Action&, const Action&) = default;
};

struct Transition {
  State next;
  Action action;
  double structural_prob = 1.0;
};

struct Predecessor {
  State prev;
  Action action;
};

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace snapinf
