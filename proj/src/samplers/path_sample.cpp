#include "snapinf/samplers/path_sample.hpp"

namespace snapinf::samplers {

void EstimateAccumulator::add(const PathSample& sample) { add(sample.contribution, sample.overflow); }

void EstimateAccumulator::add(double contribution, bool overflow) {
  ++n_;
  if (contribution > 0.0) ++nonzero_;
  if (overflow) ++overflow_;
  const double delta = contribution - mean_;
  mean_ += delta / static_cast<double>(n_);
  m2_ += delta * (contribution - mean_);
}

LikelihoodEstimate EstimateAccumulator::finish() const {
  LikelihoodEstimate out;
  out.n = n_;
  out.mean = mean_;
  out.nonzero_count = nonzero_;
  out.overflow_count = overflow_;
  out.variance = n_ > 1 ? m2_ / static_cast<double>(n_ - 1) : 0.0;
  return out;
}

}  // namespace snapinf::samplers
