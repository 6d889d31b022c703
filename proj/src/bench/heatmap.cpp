#include <algorithm>
#include <cmath>
#include <ostream>

#include "snapinf/bench/commands.hpp"
#include "snapinf/bench/parallel.hpp"

namespace snapinf::bench {

namespace {

std::string_view kind_name(HeatCellKind k) {
  switch (k) {
    case HeatCellKind::kBlocked:
      return "blocked";
    case HeatCellKind::kMasked:
      return "masked";
    case HeatCellKind::kOk:
      return "ok";
    case HeatCellKind::kNoValidSamples:
      return "no_valid_samples";
  }
  return "blocked";
}

}  // namespace

Heatmap run_heatmap(const Domain& domain, const HeatmapOptions& options) {
  const auto* grid = dynamic_cast<const domains::GridWorld*>(&domain);
  if (grid == nullptr) throw ConfigError("heatmaps need a grid or keys domain");
  const RunSettings settings = resolve_settings(domain, options.settings);

  Heatmap map;
  map.width = grid->width();
  map.height = grid->height();
  for (const auto& gem : grid->gems()) {
    map.goal_names.push_back(gem.name);
    map.goal_colors.push_back(gem.color);
  }
  const auto sweep = sweep_cells(*grid, options.inventory, options.mask);
  map.cells.resize(sweep.size());

  const auto base_policy = policy::make_policy(domain, settings.policy);
  std::vector<samplers::ConnectionCache> caches;
  if (settings.sampler.use_cache) caches = build_caches(domain, *base_policy, settings.sampler);
  const std::size_t threads = std::max<std::size_t>(1, settings.threads);
  std::vector<std::unique_ptr<policy::Policy>> clones(threads);
  const auto prior = posterior::GoalPrior::uniform(domain.goal_count());

  parallel_for(sweep.size(), threads, [&](std::size_t i, std::size_t worker) {
    HeatCell& out = map.cells[i];
    out.cell = sweep[i].cell;
    if (!sweep[i].state) {
      out.kind = HeatCellKind::kBlocked;
      return;
    }
    out.literal = domain.format_state(*sweep[i].state);
    if (sweep[i].masked) {
      out.kind = HeatCellKind::kMasked;
      return;
    }
    if (!clones[worker]) clones[worker] = base_policy->clone();
    out.posterior = infer_goals(domain, *clones[worker], *sweep[i].state, settings.method, settings.sampler, prior,
                                settings.sampler.use_cache ? &caches : nullptr)
                        .posterior;
    out.kind = out.posterior.ok() ? HeatCellKind::kOk : HeatCellKind::kNoValidSamples;
  });
  return map;
}

nlohmann::ordered_json heatmap_json(const Heatmap& map, const HeatmapOptions& options) {
  const RunSettings& s = options.settings;
  nlohmann::ordered_json out;
  out["width"] = map.width;
  out["height"] = map.height;
  out["inventory"] = options.inventory;
  out["goals"] = map.goal_names;
  const auto shared = settings_json(s);
  for (const auto& [key, value] : shared.items()) out[key] = value;
  auto cells = nlohmann::ordered_json::array();
  for (const auto& c : map.cells) {
    if (c.kind == HeatCellKind::kBlocked) continue;
    nlohmann::ordered_json cell;
    cell["cell"] = {c.cell.row, c.cell.col};
    cell["state"] = c.literal;
    cell["status"] = std::string(kind_name(c.kind));
    if (c.kind == HeatCellKind::kOk) {
      cell["posterior"] = c.posterior.probs;
    } else {
      cell["posterior"] = nullptr;
    }
    cells.push_back(cell);
  }
  out["cells"] = cells;
  return out;
}

void write_ppm(const Heatmap& map, int cell_pixels, std::ostream& out) {
  const int px = std::max(cell_pixels, 4);
  const int w = map.width * px;
  const int h = map.height * px;
  std::vector<std::uint8_t> pixels(static_cast<std::size_t>(w) * static_cast<std::size_t>(h) * 3, 0);
  auto put = [&](int x, int y, domains::Rgb rgb) {
    const std::size_t at = (static_cast<std::size_t>(y) * static_cast<std::size_t>(w) + static_cast<std::size_t>(x)) * 3;
    pixels[at] = rgb[0];
    pixels[at + 1] = rgb[1];
    pixels[at + 2] = rgb[2];
  };
  for (const auto& c : map.cells) {
    domains::Rgb fill{0, 0, 0};
    if (c.kind == HeatCellKind::kMasked) fill = {150, 150, 150};
    if (c.kind == HeatCellKind::kNoValidSamples) fill = {255, 255, 255};
    if (c.kind == HeatCellKind::kOk) {
      double rgb[3] = {0.0, 0.0, 0.0};
      for (std::size_t g = 0; g < c.posterior.probs.size(); ++g) {
        for (int k = 0; k < 3; ++k) rgb[k] += c.posterior.probs[g] * map.goal_colors[g][static_cast<std::size_t>(k)];
      }
      for (int k = 0; k < 3; ++k) {
        fill[static_cast<std::size_t>(k)] = static_cast<std::uint8_t>(std::clamp(std::lround(rgb[k]), 0L, 255L));
      }
    }
    const int x0 = c.cell.col * px;
    const int y0 = c.cell.row * px;
    for (int dy = 0; dy < px; ++dy) {
      for (int dx = 0; dx < px; ++dx) {
        const bool border = dx == 0 || dy == 0;
        const bool cross = c.kind == HeatCellKind::kNoValidSamples && dx > 2 && dx < px - 3 &&
                           (std::abs(dx - dy) <= 1 || std::abs(dx - (px - 1 - dy)) <= 1);
        domains::Rgb colour = fill;
        if (cross) colour = {30, 30, 30};
        if (border && c.kind != HeatCellKind::kBlocked) colour = {60, 60, 60};
        put(x0 + dx, y0 + dy, colour);
      }
    }
  }
  out << "P6\n" << w << ' ' << h << "\n255\n";
  out.write(reinterpret_cast<const char*>(pixels.data()), static_cast<std::streamsize>(pixels.size()));
}

}  // namespace snapinf::bench
