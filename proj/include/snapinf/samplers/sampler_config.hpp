#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>

namespace snapinf::samplers {

enum class Method { kRejection, kBdpt };

struct SamplerConfig {
  /// Importance-sampling strength for predecessor choice; 0 is uniform.
  double alpha = 1.0;
  /// Mean Russian-roulette depth; the walk stops with probability 1/depth.
  double depth = 5.0;
  std::size_t n_samples = 10;
  std::size_t max_forward_steps = 1000;
  std::uint64_t seed = 0;
  bool use_cache = false;
  /// Forward rollouts per half of the connection cache.
  std::size_t cache_rollouts = 0;

  void validate() const;
};

std::string_view to_string(Method method);
Method parse_method(std::string_view text);

}  // namespace snapinf::samplers
