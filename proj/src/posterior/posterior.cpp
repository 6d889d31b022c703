#include "snapinf/posterior/posterior.hpp"

#include <cmath>

namespace snapinf::posterior {

GoalPrior GoalPrior::uniform(std::size_t goals) { return GoalPrior(std::vector<double>(goals, 1.0)); }

GoalPrior::GoalPrior(std::vector<double> weights) : probs_(std::move(weights)) {
  double total = 0.0;
  for (double w : probs_) {
    if (!(w >= 0.0)) throw ConfigError("goal prior weights must be non-negative");
    total += w;
  }
  if (!(total > 0.0)) throw ConfigError("goal prior has no mass");
  for (double& w : probs_) w /= total;
}

GoalPosterior posterior_over_goals(const std::vector<samplers::LikelihoodEstimate>& estimates,
                                   const GoalPrior& prior) {
  if (estimates.size() != prior.size()) {
    throw ConfigError("likelihood estimates and goal prior cover different goal sets");
  }
  GoalPosterior out;
  double total = 0.0;
  for (std::size_t g = 0; g < estimates.size(); ++g) {
    out.per_goal_nonzero.push_back(estimates[g].nonzero_count);
    total += estimates[g].mean * prior[g];
  }
  if (!(total > 0.0)) {
    out.status = PosteriorStatus::kNoValidSamples;
    return out;
  }
  out.probs.reserve(estimates.size());
  for (std::size_t g = 0; g < estimates.size(); ++g) out.probs.push_back(estimates[g].mean * prior[g] / total);
  return out;
}

double tv_distance(const GoalPosterior& p, const GoalPosterior& q) {
  if (!p.ok() || !q.ok()) return 1.0;
  if (p.probs.size() != q.probs.size()) throw ConfigError("posteriors cover different goal sets");
  double sum = 0.0;
  for (std::size_t g = 0; g < p.probs.size(); ++g) sum += std::abs(p.probs[g] - q.probs[g]);
  return 0.5 * sum;
}

MarginalResult path_statistic_marginal(const std::vector<std::vector<samplers::PathSample>>& samples,
                                       const GoalPosterior& posterior, const PathPredicate& predicate) {
  if (!posterior.ok()) return MarginalResult{0.0, PosteriorStatus::kNoValidSamples};
  if (samples.size() != posterior.probs.size()) throw ConfigError("samples and posterior cover different goals");
  double value = 0.0;
  for (std::size_t g = 0; g < samples.size(); ++g) {
    if (posterior.probs[g] == 0.0) continue;
    double weight = 0.0;
    double hit = 0.0;
    for (const auto& s : samples[g]) {
      if (s.contribution <= 0.0) continue;
      weight += s.contribution;
      if (predicate(s)) hit += s.contribution;
    }
    if (!(weight > 0.0)) return MarginalResult{0.0, PosteriorStatus::kNoValidSamples};
    value += posterior.probs[g] * (hit / weight);
  }
  return MarginalResult{value, PosteriorStatus::kOk};
}

}  // namespace snapinf::posterior
