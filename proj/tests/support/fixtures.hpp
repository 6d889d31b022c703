#pragma once

#include <memory>
#include <string>
#include <vector>

#include "snapinf/domains/chain.hpp"
#include "snapinf/domains/gridworld.hpp"
#include "snapinf/domains/parser.hpp"

namespace snapinf::testing {

inline std::string fixture_path(const std::string& name) { return std::string(SNAPINF_FIXTURE_DIR) + "/" + name; }

inline std::unique_ptr<Domain> load_fixture(const std::string& name) {
  return domains::load_domain_file(fixture_path(name));
}

/// Open w x h grid, one gem per entry of `gems`, entryways along row 0
/// unless listed explicitly.
inline domains::GridWorld open_grid(int width, int height, std::vector<domains::Cell> gems,
                                    std::vector<domains::Cell> entryways = {}) {
  domains::GridSpec spec;
  spec.width = width;
  spec.height = height;
  char label = 'a';
  for (domains::Cell c : gems) {
    spec.gems.push_back(domains::GemSpec{label, std::string(1, label), c, {200, 200, 200}});
    ++label;
  }
  if (entryways.empty()) {
    for (int c = 0; c < width; ++c) entryways.push_back({0, c});
  }
  spec.entryways = std::move(entryways);
  return domains::GridWorld(std::move(spec));
}

/// Every state of an enumerable domain.
inline std::vector<State> all_states(const Domain& d) {
  auto states = d.enumerate_states();
  if (!states) throw ConfigError("domain is not enumerable");
  return std::move(*states);
}

inline domains::ChainDomain reference_chain() { return domains::ChainDomain(domains::ChainSpec{}); }

}  // namespace snapinf::testing
