#include "snapinf/samplers/sampler_config.hpp"

#include <cmath>
#include <string>

#include "snapinf/core/types.hpp"

namespace snapinf::samplers {

void SamplerConfig::validate() const {
  if (!(alpha >= 0.0) || !std::isfinite(alpha)) throw ConfigError("alpha must be non-negative");
  if (!(depth > 1.0) || !std::isfinite(depth)) throw ConfigError("roulette depth must exceed 1");
  if (n_samples == 0) throw ConfigError("n_samples must be at least 1");
  if (max_forward_steps == 0) throw ConfigError("max_forward_steps must be at least 1");
}

std::string_view to_string(Method method) { return method == Method::kRejection ? "rejection" : "bdpt"; }

Method parse_method(std::string_view text) {
  if (text == "rejection") return Method::kRejection;
  if (text == "bdpt") return Method::kBdpt;
  throw ConfigError("unknown method '" + std::string(text) + "'");
}

}  // namespace snapinf::samplers
