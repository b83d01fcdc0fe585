#include <doctest.h>

#include <deque>
#include <map>
#include <set>

#include "contractible/error.hpp"
#include "contractible/queries.hpp"
#include "fixtures.hpp"

using namespace contractible;
using fixtures::kOmega;

namespace {

ErrorCode build_error(const GraphDescription& d) {
  try {
    build_graph(d);
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("build_graph accepted an invalid description");
  return ErrorCode::InvalidArgument;
}

std::set<std::string> names_of(const Graph& g, const std::vector<VertexRef>& vs) {
  std::set<std::string> out;
  for (auto v : vs) out.insert(g.name(v));
  return out;
}

// Plain BFS over a ray-free graph; distance or -1.
std::map<std::string, int> bfs(const Graph& g, const std::string& from) {
  std::map<std::string, int> dist;
  auto start = *g.find_core(from);
  std::vector<int> d(g.core_size(), -1);
  std::deque<std::uint32_t> q{start};
  d[start] = 0;
  while (!q.empty()) {
    auto u = q.front();
    q.pop_front();
    for (auto e : g.core_out(u)) {
      auto t = g.edges()[e].target;
      if (d[t] < 0) {
        d[t] = d[u] + 1;
        q.push_back(t);
      }
    }
  }
  for (std::uint32_t u = 0; u < g.core_size(); ++u) dist[g.vertices()[u]] = d[u];
  return dist;
}

std::vector<Graph> all_fixtures() {
  return {fixtures::loop(), fixtures::b2(), fixtures::inf(), fixtures::vi_e(), fixtures::vi_f(), fixtures::esse()};
}

}  // namespace

TEST_CASE("multiplicity arithmetic table") {
  std::vector<Multiplicity> values;
  for (std::uint64_t i = 0; i <= 10; ++i) values.emplace_back(i);
  values.push_back(kOmega);
  for (auto a : values) {
    for (auto b : values) {
      Multiplicity sum = a + b;
      Multiplicity prod = a * b;
      if (a.is_infinite() || b.is_infinite()) {
        CHECK(sum.is_infinite());
      } else {
        CHECK(sum == Multiplicity(a.count() + b.count()));
      }
      if (a.is_zero() || b.is_zero()) {
        CHECK(prod.is_zero());
      } else if (a.is_infinite() || b.is_infinite()) {
        CHECK(prod.is_infinite());
      } else {
        CHECK(prod == Multiplicity(a.count() * b.count()));
      }
      CHECK(a + b == b + a);
      CHECK(a * b == b * a);
      for (auto c : values) {
        CHECK((a + b) + c == a + (b + c));
        CHECK((a * b) * c == a * (b * c));
      }
    }
  }
  CHECK(Multiplicity::parse("inf") == kOmega);
  CHECK(Multiplicity::parse("17") == Multiplicity(17));
  CHECK_FALSE(Multiplicity::parse("-1").has_value());
  CHECK_THROWS_AS((void)kOmega.count(), std::domain_error);
}

TEST_CASE("build_graph shapes") {
  Graph b2 = fixtures::b2();
  CHECK(b2.core_size() == 5);
  CHECK(b2.edges().size() == 5);
  CHECK(b2.ray_count() == 0);

  Graph empty = build_graph({});
  CHECK(empty.core_size() == 0);

  Graph e = fixtures::vi_e();
  CHECK(e.core_size() == 2);
  std::size_t entries = 0;
  for (const auto& r : e.rays()) entries += r.entry.size();
  CHECK(e.edges().size() + entries == 3);
  CHECK(e.ray_count() == 2);

  // an edge to "<ray>.x0" is the same as an entry
  Graph folded = build_graph({{"v", "w"},
                              {{"v", "w", 1}, {"v", "L.x0", 1}, {"v", "R.x0", 1}},
                              {{"L", {}, {}, {{{"w", 1}}}}, {"R", {}, {}, {{{"w", 1}}}}}});
  CHECK(folded == e);
  CHECK(build_graph(describe(e)) == e);
}

TEST_CASE("build_graph errors name the element") {
  CHECK(build_error({{"a", "a"}, {}, {}}) == ErrorCode::DuplicateId);
  CHECK(build_error({{"a"}, {{"a", "b", 1}}, {}}) == ErrorCode::DanglingEndpoint);
  CHECK(build_error({{"a", "b"}, {{"a", "b", 0}}, {}}) == ErrorCode::ZeroMultiplicity);
  CHECK(build_error({{"a"}, {}, {{"R", {{"a", 1}}, {}, {}}}}) == ErrorCode::EmptyCycle);
  CHECK(build_error({{"a"}, {}, {{"R", {{"a", 1}}, {}, {{{"a", kOmega}}}}}}) == ErrorCode::InvalidRayTarget);
  CHECK(build_error({{"a"}, {{"a", "R.x2", 1}}, {{"R", {}, {}, {{{"a", 1}}}}}}) == ErrorCode::InvalidRayEdge);
  CHECK(build_error({{"R"}, {}, {{"R", {}, {}, {{{"R", 1}}}}}}) == ErrorCode::DuplicateId);
  try {
    build_graph({{"a"}, {{"a", "zz", 1}}, {}});
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("zz") != std::string::npos);
  }
}

TEST_CASE("singularities") {
  Graph b2 = fixtures::b2();
  CHECK(names_of(b2, singularities(b2)) == std::set<std::string>{"w"});
  Graph loop = fixtures::loop();
  CHECK(singularities(loop).empty());
  Graph f = fixtures::vi_f();
  CHECK(names_of(f, singularities(f)) == std::set<std::string>{"v", "w"});
}

TEST_CASE("reaches") {
  Graph b2 = fixtures::b2();
  CHECK(reaches(b2, fixtures::set(b2, {"v"}), *b2.resolve("w")));
  CHECK_FALSE(reaches(b2, fixtures::set(b2, {"w"}), *b2.resolve("v")));
  Graph e = fixtures::vi_e();
  CHECK(reaches(e, fixtures::set(e, {"v"}), *e.resolve("L.x5")));

  // the same query answered by BFS on the truncation
  Graph m = materialize(e, 6);
  CHECK(bfs(m, "v").at("L.x5") == 6);
}

TEST_CASE("reaches agrees with BFS on truncations") {
  for (const Graph& g : all_fixtures()) {
    for (std::uint64_t d = 0; d <= 8; ++d) {
      Graph m = materialize(g, d);
      for (const auto& a : m.vertices()) {
        auto dist = bfs(m, a);
        auto from = VertexSet(g);
        auto ra = *g.resolve(a);
        if (ra.is_core()) {
          from.insert_core(ra.index);
        } else {
          continue;  // ray positions are not singleton-representable
        }
        for (const auto& [b, k] : dist) {
          bool ours = reaches(g, from, *g.resolve(b));
          if (k >= 0 && k <= static_cast<int>(d)) CHECK(ours);
          if (d == 8) CHECK(ours == (k >= 0));
        }
      }
    }
  }
}

TEST_CASE("simple cycles") {
  Graph loop = fixtures::loop();
  auto c = simple_cycles(loop, VertexSet::full(loop));
  REQUIRE(c.size() == 1);
  CHECK(format_path(loop, c[0]) == "u -> u");

  Graph b2 = fixtures::b2();
  CHECK(simple_cycles(b2, VertexSet::full(b2)).empty());

  Graph esse = fixtures::esse();
  auto ce = simple_cycles(esse, VertexSet::full(esse));
  REQUIRE(ce.size() == 1);
  CHECK(format_path(esse, ce[0]) == "a -> x -> a");

  // a cycle leaving a ray from its prefix, and one from the periodic part
  Graph r = build_graph({{"u", "w"}, {{"u", "w", 1}}, {{"R", {{"u", 1}}, {{}, {{"u", 1}}}, {{{"w", 1}}}}}});
  auto cr = simple_cycles(r, VertexSet::full(r));
  REQUIRE(cr.size() == 1);
  CHECK(format_path(r, cr[0]) == "u -> R.x0 -> R.x1 -> u");
  Graph p = build_graph({{"u"}, {}, {{"R", {{"u", 1}}, {}, {{}, {{"u", 1}}}}}});
  auto cp = simple_cycles(p, VertexSet::full(p));
  REQUIRE(cp.size() == 1);
  CHECK(format_path(p, cp[0]) == "u -> R.x0 -> R.x1 -> u");
  CHECK(simple_cycles(p, fixtures::set(p, {"R.x0+"})).empty());

  for (const Graph& g : all_fixtures()) {
    for (const auto& cyc : simple_cycles(g, VertexSet::full(g))) {
      CHECK(path_exists(g, cyc));
      CHECK(cyc.source == cyc.range());
      std::set<VertexRef> seen;
      for (std::size_t i = 0; i < cyc.length(); ++i) CHECK(seen.insert(cyc.vertex_at(i)).second);
    }
  }
}

TEST_CASE("detect tails") {
  CHECK(detect_tails(fixtures::vi_e()).empty());
  CHECK(detect_tails(fixtures::b2()).empty());
  for (const Graph& g : all_fixtures()) CHECK(detect_tails(g).empty());

  Graph t = build_graph({{"v", "w"}, {{"v", "w", 1}}, {{"T", {{"v", 1}}, {}, {{}}}}});
  auto tails = detect_tails(t);
  REQUIRE(tails.size() == 1);
  CHECK(tails[0].core_chain.empty());
  CHECK(t.name(tails[0].head()) == "T.x0");

  // a chain of single-edge core vertices is part of the tail
  Graph chain = build_graph({{"a", "b", "v"}, {{"v", "a", 1}, {"v", "v", 1}, {"a", "b", 1}}, {{"T", {{"b", 1}}, {{{"v", 1}}}, {{}}}}});
  auto ct = detect_tails(chain);
  REQUIRE(ct.size() == 1);
  CHECK(ct[0].start_position == 1);
  CHECK(format_tail(chain, ct[0]) == "T.x1 -> ...");
}

TEST_CASE("materialize") {
  Graph e0 = materialize(fixtures::vi_e(), 0);
  Graph expected = build_graph({{"v", "w", "L.x0", "R.x0"},
                                {{"v", "w", 1}, {"v", "L.x0", 1}, {"v", "R.x0", 1}, {"L.x0", "w", 1}, {"R.x0", "w", 1}},
                                {}});
  CHECK(e0 == expected);
  CHECK(materialize(fixtures::b2(), 3) == fixtures::b2());
  Graph f2 = materialize(fixtures::vi_f(), 2);
  CHECK(f2.core_size() == 5);
  CHECK(edge_multiplicity(f2, *f2.resolve("v"), *f2.resolve("w")).is_infinite());

  for (const Graph& g : all_fixtures()) {
    auto core_sing = names_of(g, singularities(g));
    for (std::uint64_t d = 0; d <= 8; ++d) {
      Graph m = materialize(g, d);
      auto ms = names_of(m, singularities(m));
      for (const auto& s : core_sing) CHECK(ms.count(s) == 1);
    }
  }
}

TEST_CASE("vertex sets") {
  Graph e = fixtures::vi_e();
  VertexSet s = fixtures::set(e, {"w", "L.x2+"});
  CHECK(s.contains(*e.resolve("w")));
  CHECK_FALSE(s.contains(*e.resolve("v")));
  CHECK_FALSE(s.contains(*e.resolve("L.x1")));
  CHECK(s.contains(*e.resolve("L.x7")));
  CHECK(s.names(e) == std::vector<std::string>{"w", "L.x2+"});
  CHECK_THROWS_AS(fixtures::set(e, {"nope"}), Error);
  CHECK_THROWS_AS(fixtures::set(e, {"L.x2"}), Error);
  CHECK(VertexSet::full(e).is_full());
  CHECK(hereditary_closure(e, fixtures::set(e, {"v"})).is_full());
}

TEST_CASE("paths") {
  Graph f = fixtures::vi_f();
  Path p{*f.resolve("v"), {{*f.resolve("X.x0"), 0}, {*f.resolve("X.x1"), 0}, {*f.resolve("w"), 0}}};
  CHECK(path_exists(f, p));
  CHECK(format_path(f, p) == "v -> X.x0 -> X.x1 -> w");
  Path wide{*f.resolve("v"), {{*f.resolve("w"), 12345}}};
  CHECK(path_exists(f, wide));
  Path bad{*f.resolve("v"), {{*f.resolve("X.x1"), 0}}};
  CHECK_FALSE(path_exists(f, bad));
}
