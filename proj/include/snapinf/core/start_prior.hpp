#pragma once

#include <span>
#include <unordered_map>
#include <utility>
#include <vector>

#include "snapinf/core/types.hpp"

namespace snapinf {

class Rng;

/// Discrete prior over start states. Support is kept in canonical order.
class StartPrior {
 public:
  StartPrior() = default;
  /// Masses are normalized; throws ConfigError on empty support or
  /// non-positive total mass.
  explicit StartPrior(std::vector<std::pair<State, double>> weighted);

  static StartPrior uniform(std::vector<State> support);

  double mass(State s) const;
  std::span<const std::pair<State, double>> support() const { return support_; }
  bool empty() const { return support_.empty(); }
  State sample(Rng& rng) const;

 private:
  std::vector<std::pair<State, double>> support_;
  std::vector<double> cumulative_;
  std::unordered_map<State, double, StateHash> lookup_;
};

}  // namespace snapinf
