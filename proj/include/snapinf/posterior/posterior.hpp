#pragma once

#include <functional>
#include <vector>

#include "snapinf/core/domain.hpp"
#include "snapinf/samplers/path_sample.hpp"

namespace snapinf::posterior {

enum class PosteriorStatus { kOk, kNoValidSamples };

/// Probabilities indexed by goal. Empty when status is kNoValidSamples.
struct GoalPosterior {
  std::vector<double> probs;
  PosteriorStatus status = PosteriorStatus::kOk;
  std::vector<std::size_t> per_goal_nonzero;

  bool ok() const { return status == PosteriorStatus::kOk; }
};

/// Prior over goals indexed by goal.
class GoalPrior {
 public:
  static GoalPrior uniform(std::size_t goals);
  /// Normalizes; throws ConfigError on negative or all-zero weights.
  explicit GoalPrior(std::vector<double> weights);

  double operator[](std::size_t goal) const { return probs_[goal]; }
  std::size_t size() const { return probs_.size(); }

 private:
  std::vector<double> probs_;
};

/// p(g | x) proportional to p(x | g) p(g). Throws ConfigError when the
/// estimate and prior goal sets differ in size.
GoalPosterior posterior_over_goals(const std::vector<samplers::LikelihoodEstimate>& estimates,
                                   const GoalPrior& prior);

/// Half the L1 distance. 1 when either side has no valid samples.
double tv_distance(const GoalPosterior& p, const GoalPosterior& q);

struct MarginalResult {
  double value = 0.0;
  PosteriorStatus status = PosteriorStatus::kOk;
  bool ok() const { return status == PosteriorStatus::kOk; }
};

using PathPredicate = std::function<bool(const samplers::PathSample&)>;

/// Posterior-weighted, per-goal self-normalized expectation of a path
/// predicate, with each sample weighted by its contribution.
MarginalResult path_statistic_marginal(const std::vector<std::vector<samplers::PathSample>>& samples,
                                       const GoalPosterior& posterior, const PathPredicate& predicate);

}  // namespace snapinf::posterior
