#include <cmath>

#include "doctest.h"
#include "snapinf/domains/blocks.hpp"
#include "snapinf/domains/chain.hpp"
#include "snapinf/policy/policy.hpp"
#include "snapinf/posterior/posterior.hpp"
#include "snapinf/samplers/samplers.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace snapinf;
using namespace snapinf::posterior;
using samplers::LikelihoodEstimate;
using snapinf::testing::load_fixture;

namespace {

LikelihoodEstimate with_mean(double mean, std::size_t nonzero = 1) {
  LikelihoodEstimate e;
  e.mean = mean;
  e.n = 10;
  e.nonzero_count = mean > 0.0 ? nonzero : 0;
  return e;
}

GoalPosterior from_probs(std::vector<double> probs) {
  GoalPosterior p;
  p.probs = std::move(probs);
  return p;
}

}  // namespace

TEST_CASE("single goal and all-zero likelihoods") {
  const auto one = posterior_over_goals({with_mean(0.013)}, GoalPrior::uniform(1));
  REQUIRE(one.ok());
  CHECK(one.probs[0] == 1.0);

  const auto none = posterior_over_goals({with_mean(0.0), with_mean(0.0)}, GoalPrior::uniform(2));
  CHECK(none.status == PosteriorStatus::kNoValidSamples);
  CHECK(none.probs.empty());
  CHECK(none.per_goal_nonzero == std::vector<std::size_t>{0, 0});

  CHECK_THROWS_AS(posterior_over_goals({with_mean(0.1)}, GoalPrior::uniform(2)), ConfigError);
  CHECK_THROWS_AS(GoalPrior({-1.0, 2.0}), ConfigError);
  CHECK_THROWS_AS(GoalPrior({0.0, 0.0}), ConfigError);
}

TEST_CASE("posterior sums to one, respects the prior and ignores scale") {
  const std::vector<LikelihoodEstimate> est{with_mean(0.2), with_mean(0.05), with_mean(0.0), with_mean(0.15)};
  const auto p = posterior_over_goals(est, GoalPrior::uniform(4));
  REQUIRE(p.ok());
  double total = 0.0;
  for (double v : p.probs) total += v;
  CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(p.probs[0] == doctest::Approx(0.5));
  CHECK(p.probs[2] == 0.0);

  const auto skewed = posterior_over_goals(est, GoalPrior({0.0, 1.0, 1.0, 1.0}));
  CHECK(skewed.probs[0] == 0.0);
  CHECK(skewed.probs[1] == doctest::Approx(0.25));

  for (double c : {1e-9, 0.5, 3.0, 1e6}) {
    std::vector<LikelihoodEstimate> scaled = est;
    for (auto& e : scaled) e.mean *= c;
    const auto q = posterior_over_goals(scaled, GoalPrior::uniform(4));
    for (std::size_t g = 0; g < 4; ++g) CHECK(q.probs[g] == doctest::Approx(p.probs[g]).epsilon(1e-12));
  }
}

TEST_CASE("total variation") {
  CHECK(tv_distance(from_probs({0.3, 0.7}), from_probs({0.3, 0.7})) == 0.0);
  CHECK(tv_distance(from_probs({1.0, 0.0}), from_probs({0.0, 1.0})) == 1.0);
  CHECK(tv_distance(from_probs({0.8, 0.2}), from_probs({0.6, 0.4})) == doctest::Approx(0.2));
  GoalPosterior failed;
  failed.status = PosteriorStatus::kNoValidSamples;
  CHECK(tv_distance(failed, from_probs({0.5, 0.5})) == 1.0);
  CHECK(tv_distance(from_probs({0.5, 0.5}), failed) == 1.0);
}

TEST_CASE("two-goal chain posterior matches Bayes on oracle likelihoods") {
  domains::ChainSpec spec;
  spec.length = 4;
  spec.goal_positions = {3, 0};
  spec.goal_names = {"right", "left"};
  spec.start_positions = {1, 2};
  spec.rightward_only = false;
  const domains::ChainDomain chain(spec);
  auto policy = policy::make_policy(chain, policy::PolicyConfig{});
  const State x{1};

  std::vector<double> exact;
  for (Goal g : goals_of(chain)) {
    exact.push_back(snapinf::testing::enumerate_likelihood(chain, *policy, x, g, 1e-14).likelihood);
  }
  const double bayes_right = exact[0] / (exact[0] + exact[1]);
  CHECK(bayes_right < 0.5);

  std::vector<LikelihoodEstimate> estimates;
  samplers::SamplerConfig c;
  c.n_samples = 100000;
  c.seed = 4;
  for (Goal g : goals_of(chain)) {
    estimates.push_back(samplers::estimate_likelihood(chain, *policy, x, g, c, samplers::Method::kBdpt));
    CHECK(std::abs(estimates.back().mean - exact[g.index]) <= 3.0 * estimates.back().standard_error());
  }
  const auto post = posterior_over_goals(estimates, GoalPrior::uniform(2));
  REQUIRE(post.ok());
  CHECK(std::abs(post.probs[0] - bayes_right) < 0.01);
}

TEST_CASE("path statistic marginals") {
  samplers::PathSample a;
  a.contribution = 0.5;
  samplers::PathSample b;
  b.contribution = 0.25;
  samplers::PathSample zero;
  const std::vector<std::vector<samplers::PathSample>> samples{{a, zero, b}, {b}};
  const auto post = from_probs({0.6, 0.4});
  CHECK(path_statistic_marginal(samples, post, [](const auto&) { return true; }).value == 1.0);
  CHECK(path_statistic_marginal(samples, post, [](const auto&) { return false; }).value == 0.0);
  const auto half = path_statistic_marginal(samples, post, [](const auto& s) { return s.contribution > 0.3; });
  CHECK(half.value == doctest::Approx(0.6 * (0.5 / 0.75)));

  const std::vector<std::vector<samplers::PathSample>> starved{{a}, {zero}};
  CHECK(path_statistic_marginal(starved, post, [](const auto&) { return true; }).status ==
        PosteriorStatus::kNoValidSamples);
  // A goal without posterior mass does not need samples.
  CHECK(path_statistic_marginal(starved, from_probs({1.0, 0.0}), [](const auto&) { return true; }).ok());
}

TEST_CASE("blocks micro-instance touched marginal matches enumeration") {
  const auto d = load_fixture("blocks_micro.txt");
  const auto& blocks = dynamic_cast<const domains::BlocksDomain&>(*d);
  auto policy = policy::make_policy(blocks, policy::PolicyConfig{});
  const State x = blocks.parse_state("A||B");
  const int block = 0;

  std::vector<double> lik;
  std::vector<double> touched;
  for (Goal g : goals_of(blocks)) {
    const auto r = snapinf::testing::enumerate_touched(
        blocks, *policy, x, g, block, [&](State s, State t) { return blocks.moved_block(s, t); });
    lik.push_back(r.likelihood);
    touched.push_back(r.touched_mass / r.likelihood);
    CHECK(r.likelihood ==
          doctest::Approx(snapinf::testing::enumerate_likelihood(blocks, *policy, x, g, 1e-13).likelihood));
  }
  const double expected = (lik[0] * touched[0] + lik[1] * touched[1]) / (lik[0] + lik[1]);

  samplers::SamplerConfig c;
  c.n_samples = 100000;
  c.seed = 8;
  std::vector<std::vector<samplers::PathSample>> samples;
  std::vector<LikelihoodEstimate> estimates;
  for (Goal g : goals_of(blocks)) {
    samples.push_back(samplers::draw_samples(blocks, *policy, x, g, c, samplers::Method::kBdpt));
    samplers::EstimateAccumulator acc;
    for (const auto& s : samples.back()) acc.add(s);
    estimates.push_back(acc.finish());
  }
  const auto post = posterior_over_goals(estimates, GoalPrior::uniform(2));
  const auto marginal = path_statistic_marginal(samples, post, [&](const samplers::PathSample& s) {
    return blocks.touched_before(s.trace, s.snapshot_index, block);
  });
  REQUIRE(marginal.ok());
  CHECK(marginal.value >= 0.0);
  CHECK(marginal.value <= 1.0);
  CHECK(std::abs(marginal.value - expected) <= 0.02);
}
