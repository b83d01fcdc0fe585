#include "contractible/moves.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "contractible/conditions.hpp"
#include "contractible/error.hpp"
#include "contractible/queries.hpp"

namespace contractible {

namespace {

std::set<std::string> taken_names(const Graph& g) {
  std::set<std::string> names(g.vertices().begin(), g.vertices().end());
  for (const auto& r : g.rays()) names.insert(r.id);
  return names;
}

// base, base_, base__, ... : the first that clashes with nothing in `taken`
// under any of the given suffixes.
std::string fresh_base(const std::set<std::string>& taken, std::string base, const std::vector<std::string>& suffixes) {
  for (;;) {
    bool clash = std::any_of(suffixes.begin(), suffixes.end(), [&](const std::string& s) { return taken.count(base + s); });
    if (!clash) return base;
    base += "_";
  }
}

std::uint32_t plan_vertex(const Graph& g, const std::string& name) {
  auto v = g.resolve(name);
  if (!v) throw Error(ErrorCode::UnknownVertex, "unknown vertex '" + name + "'");
  if (!v->is_core()) throw Error(ErrorCode::Unsupported, "delays apply to core vertices only, not '" + name + "'");
  return v->index;
}

// slot -> stage, checked to be a bijection onto 0..slots-1.
std::vector<std::uint64_t> stage_table(const DelayPlan& plan, std::uint64_t slots) {
  std::vector<std::optional<std::uint64_t>> table(slots);
  for (const auto& a : plan.stages) {
    if (a.slot >= slots)
      throw Error(ErrorCode::StageMismatch, "slot " + std::to_string(a.slot) + " at '" + plan.vertex + "' does not exist (" +
                                                std::to_string(slots) + " slots)");
    if (table[a.slot])
      throw Error(ErrorCode::StageMismatch, "slot " + std::to_string(a.slot) + " at '" + plan.vertex + "' staged twice");
    table[a.slot] = a.stage;
  }
  std::vector<std::uint64_t> out;
  for (std::uint64_t s = 0; s < slots; ++s) {
    if (!table[s])
      throw Error(ErrorCode::StageMismatch, "slot " + std::to_string(s) + " at '" + plan.vertex + "' has no stage");
    out.push_back(*table[s]);
  }
  return out;
}

void check_distinct(const std::vector<DelayPlan>& plans) {
  std::set<std::string> seen;
  for (const auto& p : plans)
    if (!seen.insert(p.vertex).second) throw Error(ErrorCode::StageMismatch, "two plans for '" + p.vertex + "'");
}

std::vector<std::string> gantlet_names(const Graph& g, const std::string& v, std::uint64_t m) {
  std::vector<std::string> suffixes;
  for (std::uint64_t k = 1; k <= m; ++k) suffixes.push_back("_" + std::to_string(k));
  std::string base = fresh_base(taken_names(g), v, suffixes);
  std::vector<std::string> names{v};
  for (const auto& s : suffixes) names.push_back(base + s);
  return names;
}

Graph out_delay_one(const Graph& g, const DelayPlan& plan) {
  const std::uint32_t u = plan_vertex(g, plan.vertex);
  const VertexRef v = VertexRef::core(u);
  if (g.out_degree(v).is_infinite()) throw Error(ErrorCode::InfiniteDegree, "'" + plan.vertex + "' emits infinitely many edges");

  struct Slot {
    bool entry;
    std::string target;
  };
  std::vector<Slot> slots;
  for (auto e : g.core_out(u))
    for (std::uint64_t i = 0; i < g.edges()[e].mult.count(); ++i) slots.push_back({false, g.vertices()[g.edges()[e].target]});
  for (const auto& [r, m] : g.entries_from(u))
    for (std::uint64_t i = 0; i < m.count(); ++i) slots.push_back({true, g.ray(r).id});
  const auto stages = stage_table(plan, slots.size());
  const std::uint64_t depth = stages.empty() ? 0 : *std::max_element(stages.begin(), stages.end());
  const auto names = gantlet_names(g, plan.vertex, depth);

  GraphDescription d = describe(g);
  std::erase_if(d.edges, [&](const EdgeSpec& e) { return e.source == plan.vertex; });
  for (auto& ray : d.rays) std::erase_if(ray.entry, [&](const EntrySpec& e) { return e.source == plan.vertex; });
  for (std::uint64_t k = 1; k <= depth; ++k) {
    d.vertices.push_back(names[k]);
    d.edges.push_back({names[k - 1], names[k], Multiplicity(1)});
  }
  for (std::size_t s = 0; s < slots.size(); ++s) {
    const std::string& from = names[stages[s]];
    if (!slots[s].entry) {
      d.edges.push_back({from, slots[s].target, Multiplicity(1)});
    } else {
      for (auto& ray : d.rays)
        if (ray.id == slots[s].target) ray.entry.push_back({from, Multiplicity(1)});
    }
  }
  return build_graph(d);
}

Graph in_delay_one(const Graph& g, const DelayPlan& plan) {
  const std::uint32_t u = plan_vertex(g, plan.vertex);
  if (g.in_degree(VertexRef::core(u)).is_infinite())
    throw Error(ErrorCode::InfiniteDegree, "'" + plan.vertex + "' receives infinitely many edges");

  struct Slot {
    std::string source;  // core id, or ray id with a prefix position
    std::optional<std::uint64_t> position;
  };
  std::vector<Slot> slots;
  std::vector<std::uint32_t> in = g.core_in(u);
  std::sort(in.begin(), in.end(), [&](auto a, auto b) { return g.edges()[a].source < g.edges()[b].source; });
  for (auto e : in)
    for (std::uint64_t i = 0; i < g.edges()[e].mult.count(); ++i) slots.push_back({g.vertices()[g.edges()[e].source], {}});
  for (const auto& ray : g.rays())
    for (std::uint64_t k = 0; k < ray.prefix.size(); ++k)
      for (const auto& t : ray.prefix[k])
        if (t.vertex == u)
          for (std::uint64_t i = 0; i < t.mult; ++i) slots.push_back({ray.id, k});
  const auto stages = stage_table(plan, slots.size());
  const std::uint64_t depth = stages.empty() ? 0 : *std::max_element(stages.begin(), stages.end());
  const auto names = gantlet_names(g, plan.vertex, depth);

  GraphDescription d = describe(g);
  std::erase_if(d.edges, [&](const EdgeSpec& e) { return e.target == plan.vertex; });
  for (auto& ray : d.rays)
    for (auto& bag : ray.prefix) std::erase_if(bag, [&](const TargetSpec& t) { return t.target == plan.vertex; });
  for (std::uint64_t k = 1; k <= depth; ++k) {
    d.vertices.push_back(names[k]);
    d.edges.push_back({names[k], names[k - 1], Multiplicity(1)});
  }
  for (std::size_t s = 0; s < slots.size(); ++s) {
    const std::string& to = names[stages[s]];
    if (!slots[s].position) {
      d.edges.push_back({slots[s].source, to, Multiplicity(1)});
    } else {
      for (auto& ray : d.rays)
        if (ray.id == slots[s].source) ray.prefix[*slots[s].position].push_back({to, Multiplicity(1)});
    }
  }
  return build_graph(d);
}

}  // namespace

Graph desingularize(const Graph& g) {
  auto tails = detect_tails(g);
  if (!tails.empty()) throw Error(ErrorCode::HasTails, "graph has a tail: " + format_tail(g, tails.front()));

  GraphDescription d = describe(g);
  std::set<std::string> taken = taken_names(g);
  for (std::uint32_t u = 0; u < g.core_size(); ++u) {
    const std::string& v = g.vertices()[u];
    for (const auto& [r, m] : g.entries_from(u))
      if (m.is_infinite())
        throw Error(ErrorCode::Unsupported, "'" + v + "' enters ray '" + g.ray(r).id + "' infinitely often");
    RaySpec tail;
    for (auto e : g.core_out(u))
      if (g.edges()[e].mult.is_infinite()) tail.cycle.push_back({{g.vertices()[g.edges()[e].target], Multiplicity(1)}});
    if (tail.cycle.empty()) continue;
    tail.id = fresh_base(taken, v + "_tail", {""});
    taken.insert(tail.id);
    tail.entry.push_back({v, Multiplicity(1)});
    d.rays.push_back(std::move(tail));
  }
  for (auto& e : d.edges)
    if (e.mult.is_infinite()) e.mult = Multiplicity(1);
  return build_graph(d);
}

VertexSet carried_vertices(const Graph& original, const Graph& larger) {
  VertexSet s(larger);
  for (const auto& v : original.vertices())
    if (auto u = larger.find_core(v)) s.insert_core(*u);
  for (const auto& ray : original.rays())
    if (auto r = larger.find_ray(ray.id)) s.set_ray_from(*r, 0);
  return s;
}

Graph out_delay(const Graph& g, const std::vector<DelayPlan>& plans) {
  check_distinct(plans);
  for (const auto& p : plans) plan_vertex(g, p.vertex);
  Graph out = g;
  for (const auto& p : plans) out = out_delay_one(out, p);
  return out;
}

Graph in_delay(const Graph& g, const std::vector<DelayPlan>& plans) {
  check_distinct(plans);
  for (const auto& p : plans) plan_vertex(g, p.vertex);
  Graph out = g;
  for (const auto& p : plans) out = in_delay_one(out, p);
  return out;
}

std::pair<Graph, Graph> esse_split(const Graph& g3, const VertexSet& v1, const VertexSet& v2) {
  if (g3.has_rays()) throw Error(ErrorCode::Unsupported, "esse_split needs a graph without rays");
  if (v1.core_capacity() != g3.core_size() || v2.core_capacity() != g3.core_size())
    throw Error(ErrorCode::UnknownVertex, "vertex set does not belong to this graph");
  for (std::uint32_t u = 0; u < g3.core_size(); ++u)
    if (v1.contains_core(u) == v2.contains_core(u))
      throw Error(ErrorCode::InvalidArgument, "'" + g3.vertices()[u] + "' must lie in exactly one side");
  for (const auto& e : g3.edges())
    if (v1.contains_core(e.source) == v1.contains_core(e.target))
      throw Error(ErrorCode::NotBipartite,
                  "edge " + g3.vertices()[e.source] + " -> " + g3.vertices()[e.target] + " stays inside one side");

  auto side = [&](const VertexSet& s, int index) {
    try {
      return contract(g3, s).graph;
    } catch (const ConditionsFailed& failure) {
      std::string what = failure.what();
      what = what.substr(what.find(": ") + 2);
      throw ConditionsFailed(failure.verdict(), "side " + std::to_string(index) + ": " + what);
    }
  };
  return {side(v1, 1), side(v2, 2)};
}

std::uint64_t edge_slot_count(const Graph& g) {
  std::uint64_t n = 0;
  for (const auto& e : g.edges()) n += e.mult.is_infinite() ? 1 : e.mult.count();
  return n;
}

Graph skew_product(const Graph& g, std::uint64_t p, const std::vector<SlotLabel>& labels, bool reverse) {
  if (p == 0) throw Error(ErrorCode::InvalidArgument, "skew product needs p >= 1");
  if (g.has_rays()) throw Error(ErrorCode::Unsupported, "skew product needs a graph without rays");
  const std::uint64_t slots = edge_slot_count(g);
  std::vector<std::uint64_t> label(slots, 0);
  for (const auto& l : labels) {
    if (l.slot >= slots) throw Error(ErrorCode::InvalidArgument, "edge slot " + std::to_string(l.slot) + " does not exist");
    if (l.label >= p)
      throw Error(ErrorCode::InvalidArgument, "label " + std::to_string(l.label) + " is not below p = " + std::to_string(p));
    label[l.slot] = l.label;
  }

  auto at = [](const std::string& v, std::uint64_t k) { return v + "@" + std::to_string(k); };
  GraphDescription d;
  for (const auto& v : g.vertices())
    for (std::uint64_t k = 0; k < p; ++k) d.vertices.push_back(at(v, k));
  std::uint64_t slot = 0;
  for (const auto& e : g.edges()) {
    const std::uint64_t copies = e.mult.is_infinite() ? 1 : e.mult.count();
    const Multiplicity each = e.mult.is_infinite() ? Multiplicity::omega() : Multiplicity(1);
    for (std::uint64_t i = 0; i < copies; ++i, ++slot) {
      const std::uint64_t c = reverse ? (p - label[slot]) % p : label[slot];
      for (std::uint64_t k = 0; k < p; ++k)
        d.edges.push_back({at(g.vertices()[e.source], k), at(g.vertices()[e.target], (k + c) % p), each});
    }
  }
  return build_graph(d);
}

Graph tails_to_sinks(const Graph& g) {
  GraphDescription d = describe(g);
  std::set<std::string> drop_vertices;
  std::set<std::string> drop_rays;
  std::set<std::string> silence;  // heads: lose their out-edges
  for (const auto& t : detect_tails(g)) {
    const Ray& ray = g.ray(t.ray);
    drop_rays.insert(ray.id);
    if (!t.core_chain.empty()) {
      silence.insert(g.vertices()[t.core_chain.front()]);
      for (std::size_t i = 1; i < t.core_chain.size(); ++i) drop_vertices.insert(g.vertices()[t.core_chain[i]]);
      continue;
    }
    auto pos = [&](std::uint64_t k) { return ray.id + ".x" + std::to_string(k); };
    for (std::uint64_t k = 0; k <= t.start_position; ++k) d.vertices.push_back(pos(k));
    for (const auto& e : ray.entry) d.edges.push_back({g.vertices()[e.source], pos(0), e.mult});
    for (std::uint64_t k = 0; k < t.start_position; ++k) {
      d.edges.push_back({pos(k), pos(k + 1), Multiplicity(1)});
      for (const auto& x : ray.prefix[k]) d.edges.push_back({pos(k), g.vertices()[x.vertex], Multiplicity(x.mult)});
    }
  }
  std::erase_if(d.vertices, [&](const std::string& v) { return drop_vertices.count(v) > 0; });
  std::erase_if(d.edges, [&](const EdgeSpec& e) {
    return silence.count(e.source) || drop_vertices.count(e.source) || drop_vertices.count(e.target);
  });
  std::erase_if(d.rays, [&](const RaySpec& r) { return drop_rays.count(r.id) > 0; });
  for (auto& r : d.rays)
    std::erase_if(r.entry, [&](const EntrySpec& e) { return silence.count(e.source) || drop_vertices.count(e.source); });
  return build_graph(d);
}

Graph binary_tree_graph(unsigned generations) {
  if (generations == 0 || generations > 24) throw Error(ErrorCode::InvalidArgument, "generations must be in 1..24");
  GraphDescription d;
  d.vertices = {"v", "w"};
  std::vector<std::string> level{"t"};
  d.edges.push_back({"v", "t", Multiplicity(1)});
  for (unsigned gen = 1; gen <= generations; ++gen) {
    std::vector<std::string> next;
    for (const auto& t : level) {
      d.vertices.push_back(t);
      if (gen == generations) {
        d.edges.push_back({t, "w", Multiplicity(1)});
        continue;
      }
      for (const char* side : {"L", "R"}) {
        next.push_back(t + side);
        d.edges.push_back({t, t + side, Multiplicity(1)});
      }
    }
    level = std::move(next);
  }
  return build_graph(d);
}

}  // namespace contractible
