#include "contractible/random.hpp"

#include <limits>

#include "contractible/conditions.hpp"
#include "contractible/error.hpp"
#include "contractible/queries.hpp"

namespace contractible {

std::uint64_t draw_uniform(std::mt19937_64& rng, std::uint64_t lo, std::uint64_t hi) {
  if (lo > hi) throw Error(ErrorCode::InvalidArgument, "empty draw range");
  const std::uint64_t span = hi - lo;
  if (span == std::numeric_limits<std::uint64_t>::max()) return rng();
  const std::uint64_t range = span + 1;
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % range;
  std::uint64_t x;
  do x = rng();
  while (x >= limit);
  return lo + x % range;
}

bool draw_chance(std::mt19937_64& rng, double p) {
  const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  return u < p;
}

namespace {

std::pair<Graph, VertexSet> draw_once(const RandomSpec& spec, std::mt19937_64& rng) {
  const std::uint64_t n = draw_uniform(rng, spec.min_core, spec.max_core);
  GraphDescription d;
  for (std::uint64_t i = 0; i < n; ++i) d.vertices.push_back("v" + std::to_string(i));
  auto name = [&](std::uint64_t i) { return d.vertices[i]; };
  auto mult = [&]() {
    if (draw_chance(rng, spec.omega_probability)) return Multiplicity::omega();
    return Multiplicity(draw_uniform(rng, 1, spec.max_mult));
  };

  std::vector<bool> emits(n, false);
  for (std::uint64_t s = 0; s < n; ++s)
    for (std::uint64_t t = 0; t < n; ++t) {
      if (s == t && !spec.allow_loops) continue;
      if (!draw_chance(rng, spec.edge_density)) continue;
      d.edges.push_back({name(s), name(t), mult()});
      emits[s] = true;
    }

  const std::uint64_t rays = draw_uniform(rng, spec.min_rays, spec.max_rays);
  for (std::uint64_t r = 0; r < rays; ++r) {
    RaySpec ray;
    ray.id = "R" + std::to_string(r);
    const std::uint64_t entries = draw_uniform(rng, 1, std::min<std::uint64_t>(2, n));
    for (std::uint64_t i = 0; i < entries; ++i) {
      std::uint64_t s = draw_uniform(rng, 0, n - 1);
      ray.entry.push_back({name(s), Multiplicity(1)});
      emits[s] = true;
    }
    auto bag = [&]() {
      std::vector<TargetSpec> b;
      if (draw_chance(rng, spec.ray_target_probability))
        b.push_back({name(draw_uniform(rng, 0, n - 1)), Multiplicity(draw_uniform(rng, 1, spec.max_mult))});
      return b;
    };
    const std::uint64_t prefix = draw_uniform(rng, 0, spec.max_prefix);
    for (std::uint64_t k = 0; k < prefix; ++k) ray.prefix.push_back(bag());
    const std::uint64_t cycle = draw_uniform(rng, 1, spec.max_cycle);
    for (std::uint64_t k = 0; k < cycle; ++k) ray.cycle.push_back(bag());
    bool any = false;
    for (const auto& b : ray.cycle) any = any || !b.empty();
    if (!any) ray.cycle[draw_uniform(rng, 0, cycle - 1)].push_back({name(draw_uniform(rng, 0, n - 1)), Multiplicity(1)});
    d.rays.push_back(std::move(ray));
  }

  if (spec.no_sinks)
    for (std::uint64_t s = 0; s < n; ++s)
      if (!emits[s]) d.edges.push_back({name(s), name(draw_uniform(rng, 0, n - 1)), Multiplicity(1)});

  Graph g = build_graph(d);
  VertexSet g0(g);
  for (auto v : singularities(g)) g0.insert_core(v.index);
  for (std::uint32_t u = 0; u < g.core_size(); ++u)
    if (draw_chance(rng, spec.g0_density)) g0.insert_core(u);
  for (std::uint32_t r = 0; r < g.ray_count(); ++r)
    if (draw_chance(rng, spec.ray_in_g0_probability)) g0.set_ray_from(r, 0);
  return {std::move(g), std::move(g0)};
}

}  // namespace

RandomInstance generate_random(const RandomSpec& spec) {
  if (spec.min_core == 0 || spec.min_core > spec.max_core || spec.min_rays > spec.max_rays || spec.max_mult == 0 ||
      spec.max_cycle == 0)
    throw Error(ErrorCode::InvalidArgument, "inconsistent random graph parameters");
  if (spec.max_core > 64) throw Error(ErrorCode::InvalidArgument, "max_core above 64");
  std::mt19937_64 rng(spec.seed);
  const std::uint64_t attempts = spec.require_pass ? std::max<std::uint64_t>(spec.max_attempts, 1) : 1;
  for (std::uint64_t a = 1; a <= attempts; ++a) {
    auto [g, g0] = draw_once(spec, rng);
    if (!spec.require_pass || check_theorem(g, g0).pass) return {std::move(g), std::move(g0), a};
  }
  throw Error(ErrorCode::GenerationExhausted,
              "no passing instance in " + std::to_string(attempts) + " attempts (seed " + std::to_string(spec.seed) + ")");
}

}  // namespace contractible
