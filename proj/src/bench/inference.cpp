#include "snapinf/bench/inference.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace snapinf::bench {

RunSettings resolve_settings(const Domain& domain, RunSettings settings) {
  if (!settings.max_steps_given) settings.sampler.max_forward_steps = samplers::default_max_forward_steps(domain);
  settings.sampler.use_cache = settings.method == samplers::Method::kBdpt && settings.sampler.cache_rollouts > 0;
  settings.sampler.validate();
  settings.policy.validate();
  if (settings.threads == 0) settings.threads = 1;
  return settings;
}

GoalInference infer_goals(const Domain& domain, policy::Policy& policy, State snapshot, samplers::Method method,
                          const samplers::SamplerConfig& config, const posterior::GoalPrior& prior,
                          const std::vector<samplers::ConnectionCache>* caches) {
  GoalInference out;
  for (Goal g : goals_of(domain)) {
    const samplers::ConnectionCache* cache = caches != nullptr ? &caches->at(g.index) : nullptr;
    out.estimates.push_back(samplers::estimate_likelihood(domain, policy, snapshot, g, config, method, cache));
  }
  out.posterior = posterior::posterior_over_goals(out.estimates, prior);
  return out;
}

std::vector<samplers::ConnectionCache> build_caches(const Domain& domain, policy::Policy& policy,
                                                    const samplers::SamplerConfig& config) {
  std::vector<samplers::ConnectionCache> out;
  for (Goal g : goals_of(domain)) out.push_back(samplers::build_connection_cache(domain, policy, g, config));
  return out;
}

std::vector<domains::Cell> parse_mask(std::string_view text) {
  std::vector<domains::Cell> out;
  std::istringstream lines{std::string(text)};
  std::string line;
  int number = 0;
  while (std::getline(lines, line)) {
    ++number;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream words(line);
    std::string word;
    while (words >> word) {
      const auto comma = word.find(',');
      try {
        if (comma == std::string::npos) throw std::invalid_argument(word);
        std::size_t used_r = 0;
        std::size_t used_c = 0;
        const int r = std::stoi(word.substr(0, comma), &used_r);
        const int c = std::stoi(word.substr(comma + 1), &used_c);
        if (used_r != comma || used_c != word.size() - comma - 1) throw std::invalid_argument(word);
        out.push_back(domains::Cell{r, c});
      } catch (const std::logic_error&) {
        throw ConfigError("mask line " + std::to_string(number) + ": expected row,col, got '" + word + "'");
      }
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<domains::Cell> load_mask(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open mask file " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_mask(buffer.str());
}

std::vector<SweepCell> sweep_cells(const domains::GridWorld& grid, std::string_view inventory,
                                   const std::vector<domains::Cell>& mask) {
  std::vector<SweepCell> out;
  for (int r = 0; r < grid.height(); ++r) {
    for (int c = 0; c < grid.width(); ++c) {
      SweepCell cell{{r, c}, std::nullopt, std::binary_search(mask.begin(), mask.end(), domains::Cell{r, c})};
      if (!grid.is_wall(cell.cell)) {
        std::string literal = std::to_string(r) + "," + std::to_string(c);
        if (!inventory.empty()) literal += " " + std::string(inventory);
        try {
          cell.state = grid.parse_state(literal);
        } catch (const ConfigError&) {
          // A closed door is not somewhere the agent can stand.
        }
      }
      out.push_back(cell);
    }
  }
  return out;
}

}  // namespace snapinf::bench
