#pragma once

#include <cstdint>
#include <random>

#include "contractible/graph.hpp"
#include "contractible/vertex_set.hpp"

namespace contractible {

// Draws that give the same values on every platform: std::uniform_*
// distributions are implementation-defined, the engine is not.
std::uint64_t draw_uniform(std::mt19937_64& rng, std::uint64_t lo, std::uint64_t hi);
bool draw_chance(std::mt19937_64& rng, double p);

struct RandomSpec {
  std::uint64_t seed = 1;
  std::uint64_t min_core = 1;
  std::uint64_t max_core = 6;
  double edge_density = 0.3;
  std::uint64_t max_mult = 2;
  double omega_probability = 0.1;
  bool allow_loops = true;
  // Every core vertex gets at least one out-edge.
  bool no_sinks = false;
  std::uint64_t min_rays = 0;
  std::uint64_t max_rays = 2;
  std::uint64_t max_prefix = 2;
  std::uint64_t max_cycle = 2;
  double ray_target_probability = 0.5;
  // Chance that a non-singular core vertex joins G⁰ (singular ones always
  // do), and that a ray is put in G⁰ whole.
  double g0_density = 0.5;
  double ray_in_g0_probability = 0.3;
  // Redraw until check_theorem passes, at most this many times.
  bool require_pass = false;
  std::uint64_t max_attempts = 1000;
};

struct RandomInstance {
  Graph graph;
  VertexSet g0;
  std::uint64_t attempts = 1;
};

// Vertices "v0", "v1", ...; rays "R0", "R1", .... Every ray has a nonempty
// cycle bag, so no draw has tails.
// Errors: INVALID_ARGUMENT (inconsistent ranges), GENERATION_EXHAUSTED.
RandomInstance generate_random(const RandomSpec& spec);

}  // namespace contractible
