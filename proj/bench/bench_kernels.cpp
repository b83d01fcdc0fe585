#include <benchmark/benchmark.h>

#include <random>

#include "contractible/contraction.hpp"
#include "contractible/ideals.hpp"
#include "contractible/moves.hpp"
#include "contractible/random.hpp"

using namespace contractible;

namespace {

// Tree graph: every tree vertex is outside G0, so one long DP per source.
void contract_tree(benchmark::State& state, bool parallel) {
  Graph g = binary_tree_graph(static_cast<unsigned>(state.range(0)));
  VertexSet g0(g);
  g0.insert_core(*g.find_core("v"));
  g0.insert_core(*g.find_core("w"));
  ContractOptions opt;
  opt.parallel = parallel;
  for (auto _ : state) benchmark::DoNotOptimize(contract(g, g0, opt));
}

RandomInstance wide_instance(std::uint64_t core) {
  RandomSpec spec;
  spec.seed = 7;
  spec.min_core = spec.max_core = core;
  spec.edge_density = 0.15;
  spec.omega_probability = 0.05;
  spec.g0_density = 0.5;
  spec.max_rays = 0;
  return generate_random(spec);
}

// Layers of `width` vertices with random forward edges; G0 is the first
// and last layer, so T is the acyclic middle.
std::pair<Graph, VertexSet> layered(std::uint64_t layers, std::uint64_t width) {
  std::mt19937_64 rng(7);
  GraphDescription d;
  auto name = [](std::uint64_t l, std::uint64_t i) { return "l" + std::to_string(l) + "_" + std::to_string(i); };
  for (std::uint64_t l = 0; l < layers; ++l)
    for (std::uint64_t i = 0; i < width; ++i) d.vertices.push_back(name(l, i));
  for (std::uint64_t l = 0; l + 1 < layers; ++l)
    for (std::uint64_t i = 0; i < width; ++i) {
      d.edges.push_back({name(l, i), name(l + 1, draw_uniform(rng, 0, width - 1)), draw_uniform(rng, 1, 2)});
      for (std::uint64_t j = 0; j < width; ++j)
        if (draw_chance(rng, 0.3)) d.edges.push_back({name(l, i), name(l + 1, j), 1});
    }
  Graph g = build_graph(d);
  VertexSet g0(g);
  for (std::uint64_t i = 0; i < width; ++i) {
    g0.insert_core(*g.find_core(name(0, i)));
    g0.insert_core(*g.find_core(name(layers - 1, i)));
  }
  return {std::move(g), std::move(g0)};
}

void contract_layered(benchmark::State& state, bool parallel) {
  auto [g, g0] = layered(static_cast<std::uint64_t>(state.range(0)), 8);
  ContractOptions opt;
  opt.parallel = parallel;
  for (auto _ : state) benchmark::DoNotOptimize(contract(g, g0, opt));
}

void enumerate(benchmark::State& state, bool parallel) {
  RandomInstance r = wide_instance(static_cast<std::uint64_t>(state.range(0)));
  SHOptions opt;
  opt.parallel = parallel;
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_SH(r.graph, opt));
}

}  // namespace

BENCHMARK_CAPTURE(contract_tree, serial, false)->DenseRange(8, 14, 3)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(contract_tree, parallel, true)->DenseRange(8, 14, 3)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(contract_layered, serial, false)->Arg(6)->Arg(10)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(contract_layered, parallel, true)->Arg(6)->Arg(10)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(enumerate, serial, false)->Arg(12)->Arg(16)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(enumerate, parallel, true)->Arg(12)->Arg(16)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
