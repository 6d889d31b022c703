#pragma once

#include <cstdint>
#include <limits>
#include <span>

namespace snapinf {

/// xoshiro256** seeded through splitmix64. Streams are derived from a root
/// seed and a (goal, index) counter so that any sample can be regenerated
/// independently of execution order.
class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t seed);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()();

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform();
  /// Uniform integer in [0, n). n must be positive.
  std::size_t below(std::size_t n);
  /// Index drawn proportionally to non-negative weights. Total must be > 0.
  std::size_t categorical(std::span<const double> weights);

 private:
  std::uint64_t s_[4];
};

std::uint64_t splitmix64(std::uint64_t& state);

/// Stream salts keep sampler, cache and trial streams disjoint.
enum class StreamKind : std::uint64_t {
  kSample = 1,
  kCacheMembership = 2,
  kCacheWeights = 3,
  kTrial = 4,
};

std::uint64_t derive_seed(std::uint64_t root, StreamKind kind, std::uint64_t a,
                          std::uint64_t b = 0);

inline Rng derive_stream(std::uint64_t root, StreamKind kind, std::uint64_t a,
                         std::uint64_t b = 0) {
  return Rng(derive_seed(root, kind, a, b));
}

}  // namespace snapinf
