#include "snapinf/core/domain.hpp"

namespace snapinf {

std::vector<Goal> goals_of(const Domain& domain) {
  std::vector<Goal> goals;
  goals.reserve(domain.goal_count());
  for (std::uint32_t i = 0; i < domain.goal_count(); ++i) goals.push_back(Goal{i});
  return goals;
}

Goal goal_by_name(const Domain& domain, std::string_view name) {
  for (Goal g : goals_of(domain)) {
    if (domain.goal_name(g) == name) return g;
  }
  throw ConfigError("unknown goal '" + std::string(name) + "'");
}

}  // namespace snapinf
