#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <vector>

#include "snapinf/core/types.hpp"

namespace snapinf::samplers {

/// One Monte Carlo term of a likelihood estimate.
struct PathSample {
  double contribution = 0.0;
  /// Number of states in the full path, including any cached prefix.
  std::size_t total_length = 0;
  /// nullopt when the path was completed through the cache.
  std::optional<State> start_state;
  /// States this sample actually walked, in time order.
  std::vector<State> trace;
  /// Position of the snapshot in `trace` (its last visit).
  std::size_t snapshot_index = 0;
  bool overflow = false;
  bool cache_connected = false;
};

/// Summary statistics of n independent contributions.
struct LikelihoodEstimate {
  double mean = 0.0;
  std::size_t n = 0;
  std::size_t nonzero_count = 0;
  /// Unbiased sample variance of the contributions.
  double variance = 0.0;
  std::size_t overflow_count = 0;

  double standard_error() const { return n > 0 ? std::sqrt(variance / static_cast<double>(n)) : 0.0; }
};

/// Welford accumulator for LikelihoodEstimate.
class EstimateAccumulator {
 public:
  void add(const PathSample& sample);
  void add(double contribution, bool overflow = false);
  LikelihoodEstimate finish() const;

 private:
  std::size_t n_ = 0;
  std::size_t nonzero_ = 0;
  std::size_t overflow_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
};

}  // namespace snapinf::samplers
