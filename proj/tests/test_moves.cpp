#include <doctest.h>

#include <map>

#include "contractible/conditions.hpp"
#include "contractible/contraction.hpp"
#include "contractible/ktheory.hpp"
#include "contractible/moves.hpp"
#include "contractible/queries.hpp"
#include "contractible/random.hpp"
#include "fixtures.hpp"
#include "test_support.hpp"

using namespace contractible;

namespace {

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error raised");
  return ErrorCode::InvalidArgument;
}

bool has_omega(const Graph& g) {
  for (const auto& e : g.edges())
    if (e.mult.is_infinite()) return true;
  return false;
}

// Random plan: every slot of some finite-degree vertices gets a stage in
// 0..2. In-slots are core edges plus prefix targets; edges into a ray's x0
// are entries and belong to the source.
std::vector<DelayPlan> random_plans(const Graph& g, bool out, std::mt19937_64& rng) {
  std::vector<DelayPlan> plans;
  for (std::uint32_t u = 0; u < g.core_size(); ++u) {
    const VertexRef v = VertexRef::core(u);
    Multiplicity deg = out ? g.out_degree(v) : g.in_degree(v);
    if (deg.is_infinite() || !draw_chance(rng, 0.6)) continue;
    DelayPlan p{g.vertices()[u], {}};
    for (std::uint64_t s = 0; s < deg.count(); ++s) p.stages.push_back({s, draw_uniform(rng, 0, 2)});
    plans.push_back(std::move(p));
  }
  return plans;
}

}  // namespace

TEST_CASE("desingularize examples") {
  Graph inf = fixtures::inf();
  Graph d = desingularize(inf);
  CHECK(d == build_graph({{"v", "w"}, {{"v", "w", 1}}, {{"v_tail", {{"v", 1}}, {}, {{{"w", 1}}}}}}));
  CHECK(d.is_row_finite());
  CHECK(desingularize(fixtures::b2()) == fixtures::b2());

  Graph two = build_graph({{"v", "w1", "w2"}, {{"v", "w1", fixtures::kOmega}, {"v", "w2", fixtures::kOmega}}, {}});
  Graph d2 = desingularize(two);
  REQUIRE(d2.ray_count() == 1);
  CHECK(d2.ray(0).cycle.size() == 2);
  CHECK(d2.is_row_finite());
  CHECK(contract(d2, fixtures::set(d2, {"v", "w1", "w2"})).graph == two);

  // a taken name is avoided
  Graph clash = build_graph({{"v", "v_tail", "w"}, {{"v", "w", fixtures::kOmega}, {"v_tail", "w", 1}}, {}});
  CHECK(desingularize(clash).ray(0).id == "v_tail_");

  Graph tail = build_graph({{"a", "b"}, {{"a", "b", fixtures::kOmega}}, {{"T", {{"a", 1}}, {}, {{}}}}});
  CHECK(code_of([&] { desingularize(tail); }) == ErrorCode::HasTails);
}

TEST_CASE("desingularization round trip on random graphs") {
  std::size_t done = 0;
  for (std::uint64_t seed = 1; done < 100; ++seed) {
    RandomSpec spec;
    spec.seed = seed;
    spec.omega_probability = 0.35;
    spec.max_core = 6;
    Graph g = generate_random(spec).graph;
    if (!has_omega(g)) continue;
    ++done;
    Graph d = desingularize(g);
    VertexSet e0 = carried_vertices(g, d);
    CHECK(d.is_row_finite());
    CHECK(detect_tails(d).empty());
    for (auto s : singularities(g))
      if (g.out_degree(s).is_zero()) CHECK(d.out_degree(VertexRef::core(*d.find_core(g.vertices()[s.index]))).is_zero());
    CHECK(check_theorem(d, e0).pass);
    CHECK(check_proposition(d, e0).pass);
    CHECK(contract(d, e0).graph == g);
  }
}

TEST_CASE("delay examples") {
  Graph loop = fixtures::loop();
  Graph d = out_delay(loop, {{"u", {{0, 1}}}});
  CHECK(d == build_graph({{"u", "u_1"}, {{"u", "u_1", 1}, {"u_1", "u", 1}}, {}}));
  CHECK(in_delay(loop, {{"u", {{0, 1}}}}) == build_graph({{"u", "u_1"}, {{"u", "u_1", 1}, {"u_1", "u", 1}}, {}}));

  Graph b2 = fixtures::b2();
  CHECK(out_delay(b2, {{"t0", {{0, 0}, {1, 0}}}}) == b2);

  Graph ab = build_graph({{"v", "a", "b"}, {{"v", "a", 1}, {"v", "b", 1}}, {}});
  Graph dab = out_delay(ab, {{"v", {{0, 0}, {1, 1}}}});
  CHECK(dab == build_graph({{"v", "a", "b", "v_1"}, {{"v", "a", 1}, {"v", "v_1", 1}, {"v_1", "b", 1}}, {}}));
  CHECK(contract(dab, carried_vertices(ab, dab)).graph == ab);

  Graph in = in_delay(ab, {{"b", {{0, 2}}}});
  CHECK(in == build_graph({{"v", "a", "b", "b_1", "b_2"},
                           {{"v", "a", 1}, {"v", "b_2", 1}, {"b_2", "b_1", 1}, {"b_1", "b", 1}},
                           {}}));

  CHECK(code_of([&] { out_delay(ab, {{"v", {{0, 0}}}}); }) == ErrorCode::StageMismatch);
  CHECK(code_of([&] { out_delay(ab, {{"v", {{0, 0}, {0, 1}}}}); }) == ErrorCode::StageMismatch);
  CHECK(code_of([&] { out_delay(ab, {{"v", {{0, 0}, {2, 1}}}}); }) == ErrorCode::StageMismatch);
  CHECK(code_of([&] { out_delay(ab, {{"zz", {}}}); }) == ErrorCode::UnknownVertex);
  CHECK(code_of([&] { out_delay(fixtures::inf(), {{"v", {}}}); }) == ErrorCode::InfiniteDegree);
  Graph f = fixtures::vi_f();
  CHECK(code_of([&] { in_delay(f, {{"w", {}}}); }) == ErrorCode::InfiniteDegree);
}

TEST_CASE("delays are undone by contraction") {
  std::mt19937_64 rng(7);
  std::vector<Graph> graphs{fixtures::b2(), fixtures::loop(), fixtures::inf(), fixtures::esse(), fixtures::vi_e(),
                            fixtures::vi_f()};
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    RandomSpec spec;
    spec.seed = seed;
    spec.max_prefix = 3;
    graphs.push_back(generate_random(spec).graph);
  }
  for (const auto& g : graphs) {
    for (bool out : {true, false}) {
      auto plans = random_plans(g, out, rng);
      Graph d = out ? out_delay(g, plans) : in_delay(g, plans);
      VertexSet e0 = carried_vertices(g, d);
      CHECK(check_theorem(d, e0).pass);
      CHECK(contract(d, e0).graph == g);
    }
  }
}

TEST_CASE("esse examples") {
  Graph e = fixtures::esse();
  auto [a, x] = esse_split(e, fixtures::set(e, {"a"}), fixtures::set(e, {"x"}));
  CHECK(a == build_graph({{"a"}, {{"a", "a", 1}}, {}}));
  CHECK(x == build_graph({{"x"}, {{"x", "x", 1}}, {}}));

  Graph g3 = build_graph({{"a", "x", "y"}, {{"a", "x", 1}, {"a", "y", 1}, {"x", "a", 1}, {"y", "a", 1}}, {}});
  auto [left, right] = esse_split(g3, fixtures::set(g3, {"a"}), fixtures::set(g3, {"x", "y"}));
  CHECK(left == build_graph({{"a"}, {{"a", "a", 2}}, {}}));
  CHECK(right == build_graph({{"x", "y"}, {{"x", "x", 1}, {"x", "y", 1}, {"y", "x", 1}, {"y", "y", 1}}, {}}));

  CHECK(code_of([&] { esse_split(e, VertexSet::full(e), VertexSet(e)); }) == ErrorCode::NotBipartite);
  CHECK(code_of([&] { esse_split(e, fixtures::set(e, {"a"}), fixtures::set(e, {"a", "x"})); }) ==
        ErrorCode::InvalidArgument);
  Graph sink = build_graph({{"a", "x"}, {{"a", "x", 1}}, {}});
  try {
    esse_split(sink, fixtures::set(sink, {"a"}), fixtures::set(sink, {"x"}));
    FAIL("expected a failed side");
  } catch (const ConditionsFailed& failure) {
    CHECK(std::string(failure.what()).find("side 1") != std::string::npos);
    CHECK(failure.verdict().has(ViolationKind::SingularityOutsideG0));
  }
}

TEST_CASE("esse edge counts are adjacency products") {
  std::mt19937_64 rng(11);
  for (int round = 0; round < 100; ++round) {
    auto [g3, v1, v2] = support::random_bipartite(rng);
    auto [e1, e2] = esse_split(g3, v1, v2);
    using support::block;
    IntMatrix a12 = block(g3, v1, v2), a21 = block(g3, v2, v1);
    CHECK(block(e1, VertexSet::full(e1), VertexSet::full(e1)) == a12 * a21);
    CHECK(block(e2, VertexSet::full(e2), VertexSet::full(e2)) == a21 * a12);
  }
}

TEST_CASE("skew product examples") {
  Graph loop = fixtures::loop();
  CHECK(skew_product(loop, 2, {{0, 1}}) == build_graph({{"u@0", "u@1"}, {{"u@0", "u@1", 1}, {"u@1", "u@0", 1}}, {}}));
  Graph three = skew_product(loop, 3, {{0, 1}});
  CHECK(three == build_graph({{"u@0", "u@1", "u@2"}, {{"u@0", "u@1", 1}, {"u@1", "u@2", 1}, {"u@2", "u@0", 1}}, {}}));
  CHECK(contract(three, fixtures::set(three, {"u@0"})).graph == build_graph({{"u@0"}, {{"u@0", "u@0", 1}}, {}}));
  CHECK(skew_product(loop, 3, {{0, 1}}, true) ==
        build_graph({{"u@0", "u@1", "u@2"}, {{"u@0", "u@2", 1}, {"u@2", "u@1", 1}, {"u@1", "u@0", 1}}, {}}));

  // p = 1 is the identity up to the "@0" suffix
  for (const Graph& g : {fixtures::b2(), fixtures::inf(), fixtures::esse()}) {
    GraphDescription d = describe(g);
    for (auto& v : d.vertices) v += "@0";
    for (auto& e : d.edges) e.source += "@0", e.target += "@0";
    CHECK(skew_product(g, 1, {}) == build_graph(d));
  }
  CHECK(code_of([&] { skew_product(loop, 0, {}); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([&] { skew_product(loop, 2, {{0, 2}}); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([&] { skew_product(loop, 2, {{1, 0}}); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([&] { skew_product(fixtures::vi_e(), 2, {}); }) == ErrorCode::Unsupported);
}

TEST_CASE("skew products keep fibrewise degrees") {
  std::mt19937_64 rng(5);
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    RandomSpec spec;
    spec.seed = seed;
    spec.max_rays = 0;
    Graph g = generate_random(spec).graph;
    const std::uint64_t p = draw_uniform(rng, 1, 4);
    std::vector<SlotLabel> labels;
    for (std::uint64_t s = 0; s < edge_slot_count(g); ++s) labels.push_back({s, draw_uniform(rng, 0, p - 1)});
    Graph sk = skew_product(g, p, labels);
    CHECK(sk.core_size() == g.core_size() * p);
    if (g.edge_count().is_finite()) CHECK(sk.edge_count() == g.edge_count() * Multiplicity(p));
    for (std::uint32_t u = 0; u < g.core_size(); ++u)
      for (std::uint64_t k = 0; k < p; ++k) {
        auto w = sk.find_core(g.vertices()[u] + "@" + std::to_string(k));
        REQUIRE(w);
        CHECK(sk.out_degree(VertexRef::core(*w)) == g.out_degree(VertexRef::core(u)));
      }
  }
}

TEST_CASE("skew products and K-theory") {
  // the two-loop graph and its Z_2 skew product are not Morita equivalent
  Graph o2 = build_graph({{"u"}, {{"u", "u", 2}}, {}});
  Graph sk = skew_product(o2, 2, {{0, 1}, {1, 1}});
  CHECK(format_k0(k_theory(o2)) == "0");
  CHECK(format_k0(k_theory(sk)) == "Z/3");
  // but the fibre over 0 is a full corner of the skew product
  Graph corner = contract(sk, fixtures::set(sk, {"u@0"})).graph;
  CHECK(corner == build_graph({{"u@0"}, {{"u@0", "u@0", 4}}, {}}));
  CHECK(k_theory(corner) == k_theory(sk));

  std::mt19937_64 rng(3);
  std::size_t compared = 0;
  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    RandomSpec spec;
    spec.seed = seed;
    spec.max_rays = 0;
    spec.omega_probability = 0;
    spec.no_sinks = true;
    spec.max_core = 4;
    Graph g = generate_random(spec).graph;
    const std::uint64_t p = draw_uniform(rng, 2, 3);
    std::vector<SlotLabel> labels;
    for (std::uint64_t s = 0; s < edge_slot_count(g); ++s) labels.push_back({s, draw_uniform(rng, 0, p - 1)});
    Graph s = skew_product(g, p, labels);
    VertexSet fibre(s);
    for (const auto& v : g.vertices()) fibre.insert_core(*s.find_core(v + "@0"));
    if (!check_theorem(s, fibre).pass) continue;
    ++compared;
    CHECK(k_theory(contract(s, fibre).graph) == k_theory(s));
  }
  CHECK(compared > 20);
}

TEST_CASE("tails become sinks") {
  Graph pure = build_graph({{"a"}, {{"a", "a", 1}}, {{"T", {{"a", 1}}, {}, {{}}}}});
  CHECK(tails_to_sinks(pure) == build_graph({{"a", "T.x0"}, {{"a", "a", 1}, {"a", "T.x0", 1}}, {}}));

  Graph late = build_graph({{"a"}, {}, {{"T", {{"a", 1}}, {{{"a", 1}}, {}}, {{}}}}});
  CHECK(tails_to_sinks(late) == build_graph({{"a", "T.x0", "T.x1"}, {{"a", "T.x0", 1}, {"T.x0", "T.x1", 1}, {"T.x0", "a", 1}}, {}}));

  Graph chain = build_graph({{"a", "b", "c"}, {{"a", "b", 1}, {"a", "a", 1}, {"b", "c", 1}}, {{"T", {{"c", 1}}, {}, {{}}}}});
  CHECK(tails_to_sinks(chain) == build_graph({{"a", "b"}, {{"a", "b", 1}, {"a", "a", 1}}, {}}));

  for (const Graph& g : {fixtures::b2(), fixtures::vi_e(), fixtures::vi_f()}) CHECK(tails_to_sinks(g) == g);
  for (const Graph& g : {pure, late, chain}) CHECK(detect_tails(tails_to_sinks(g)).empty());
}

TEST_CASE("binary tree gadgets") {
  for (unsigned n = 1; n <= 6; ++n) {
    Graph g = binary_tree_graph(n);
    CHECK(g.core_size() == 2 + (std::size_t(1) << n) - 1);
    Graph c = contract(g, fixtures::set(g, {"v", "w"})).graph;
    CHECK(c == build_graph({{"v", "w"}, {{"v", "w", Multiplicity(std::uint64_t(1) << (n - 1))}}, {}}));
  }
  Graph b2 = binary_tree_graph(2);
  CHECK(b2.core_size() == fixtures::b2().core_size());
  CHECK(b2.edge_count() == fixtures::b2().edge_count());
}
