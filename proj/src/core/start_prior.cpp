#include "snapinf/core/start_prior.hpp"

#include <algorithm>

#include "snapinf/core/rng.hpp"

namespace snapinf {

StartPrior::StartPrior(std::vector<std::pair<State, double>> weighted) {
  std::sort(weighted.begin(), weighted.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  double total = 0.0;
  for (const auto& [state, w] : weighted) {
    if (w < 0.0) throw ConfigError("start prior has a negative mass");
    total += w;
  }
  if (weighted.empty() || !(total > 0.0)) throw ConfigError("start prior is empty");
  for (auto& [state, w] : weighted) {
    if (w == 0.0) continue;
    if (!support_.empty() && support_.back().first == state) {
      throw ConfigError("start prior lists a state twice");
    }
    support_.emplace_back(state, w / total);
  }
  double acc = 0.0;
  cumulative_.reserve(support_.size());
  for (const auto& [state, p] : support_) {
    acc += p;
    cumulative_.push_back(acc);
    lookup_.emplace(state, p);
  }
}

StartPrior StartPrior::uniform(std::vector<State> support) {
  std::vector<std::pair<State, double>> weighted;
  weighted.reserve(support.size());
  for (State s : support) weighted.emplace_back(s, 1.0);
  return StartPrior(std::move(weighted));
}

double StartPrior::mass(State s) const {
  auto it = lookup_.find(s);
  return it == lookup_.end() ? 0.0 : it->second;
}

State StartPrior::sample(Rng& rng) const {
  const double u = rng.uniform() * cumulative_.back();
  auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
  if (it == cumulative_.end()) --it;
  return support_[static_cast<std::size_t>(it - cumulative_.begin())].first;
}

}  // namespace snapinf
