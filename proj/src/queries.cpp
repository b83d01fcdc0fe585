#include "contractible/queries.hpp"

#include <algorithm>
#include <deque>
#include <set>

#include "contractible/detail/condensation.hpp"
#include "contractible/error.hpp"

namespace contractible {

bool is_singular(const Graph& g, VertexRef v) {
  if (v.is_ray()) return false;
  Multiplicity d = g.out_degree(v);
  return d.is_zero() || d.is_infinite();
}

std::vector<VertexRef> singularities(const Graph& g) {
  std::vector<VertexRef> out;
  for (std::uint32_t u = 0; u < g.core_size(); ++u)
    if (is_singular(g, VertexRef::core(u))) out.push_back(VertexRef::core(u));
  return out;
}

VertexSet hereditary_closure(const Graph& g, const VertexSet& from) {
  VertexSet h = from;
  std::deque<std::uint32_t> core_queue;
  std::vector<bool> ray_dirty(g.ray_count(), false);
  for (std::uint32_t u = 0; u < g.core_size(); ++u)
    if (h.contains_core(u)) core_queue.push_back(u);
  for (std::uint32_t r = 0; r < g.ray_count(); ++r) ray_dirty[r] = h.ray_from(r).has_value();

  auto add_core = [&](std::uint32_t w) {
    if (!h.contains_core(w)) {
      h.insert_core(w);
      core_queue.push_back(w);
    }
  };

  bool progress = true;
  while (progress) {
    progress = false;
    while (!core_queue.empty()) {
      std::uint32_t u = core_queue.front();
      core_queue.pop_front();
      for (auto e : g.core_out(u)) add_core(g.edges()[e].target);
      for (const auto& [r, m] : g.entries_from(u)) {
        auto state = h.ray_from(r);
        if (!state || *state != 0) {
          h.set_ray_from(r, 0);
          ray_dirty[r] = true;
        }
      }
    }
    for (std::uint32_t r = 0; r < g.ray_count(); ++r) {
      if (!ray_dirty[r]) continue;
      ray_dirty[r] = false;
      progress = true;
      const Ray& ray = g.ray(r);
      const std::uint64_t f = *h.ray_from(r);
      for (std::uint64_t p = f; p < ray.prefix_length(); ++p)
        for (const auto& t : ray.prefix[p]) add_core(t.vertex);
      for (const auto& bag : ray.cycle)
        for (const auto& t : bag) add_core(t.vertex);
    }
    if (!core_queue.empty()) progress = true;
  }
  return h;
}

bool reaches(const Graph& g, const VertexSet& from, VertexRef to) {
  return hereditary_closure(g, from).contains(to);
}

std::vector<Path> simple_cycles(const Graph& g, const VertexSet& restrict_to) {
  detail::Condensation c(g, restrict_to);
  std::vector<Path> cycles;
  const std::uint32_t n = c.size();

  // For each start s, DFS over nodes > s; a return edge to s closes a cycle.
  // Core nodes have the smallest indices, and every cycle contains a core
  // node, so each start is a concrete vertex.
  struct Frame {
    std::uint32_t node;
    std::size_t next;
  };
  for (std::uint32_t s = 0; s < n; ++s) {
    if (!c.in_set(s) || c.is_suffix(s)) continue;
    std::vector<bool> on_path(n, false);
    std::vector<Frame> stack{{s, 0}};
    std::vector<const detail::CEdge*> chosen;
    on_path[s] = true;
    while (!stack.empty()) {
      Frame& top = stack.back();
      const auto& edges = c.out(top.node);
      if (top.next == edges.size()) {
        on_path[top.node] = false;
        stack.pop_back();
        if (!chosen.empty()) chosen.pop_back();
        continue;
      }
      const detail::CEdge& e = edges[top.next++];
      if (!c.in_set(e.to)) continue;
      if (e.to == s) {
        Path p{c.entry_vertex(s), {}};
        std::uint32_t at = s;
        for (std::size_t i = 0; i < chosen.size(); ++i) {
          c.append_edge(p, at, *chosen[i], 0);
          at = chosen[i]->to;
        }
        c.append_edge(p, at, e, 0);
        cycles.push_back(std::move(p));
        continue;
      }
      if (e.to < s || on_path[e.to]) continue;
      on_path[e.to] = true;
      chosen.push_back(&e);
      stack.push_back({e.to, 0});
    }
  }
  std::sort(cycles.begin(), cycles.end());
  cycles.erase(std::unique(cycles.begin(), cycles.end()), cycles.end());
  return cycles;
}

std::vector<TailWitness> detect_tails(const Graph& g) {
  std::vector<TailWitness> tails;
  for (std::uint32_t r = 0; r < g.ray_count(); ++r) {
    const Ray& ray = g.ray(r);
    if (std::any_of(ray.cycle.begin(), ray.cycle.end(), [](const TargetBag& b) { return !b.empty(); })) continue;
    std::uint64_t start = ray.prefix_length();
    while (start > 0 && ray.prefix[start - 1].empty()) --start;

    TailWitness tail;
    tail.ray = r;
    tail.start_position = start;
    if (start == 0) {
      // Walk back while the head receives exactly one edge from a vertex
      // that emits only that edge.
      VertexRef head = VertexRef::ray(r, 0);
      std::set<std::uint32_t> seen;
      for (;;) {
        auto in = g.in_edges(head);
        if (in.size() != 1 || in[0].periodic || in[0].mult != Multiplicity(1)) break;
        VertexRef pred = in[0].other;
        if (!pred.is_core() || g.out_degree(pred) != Multiplicity(1)) break;
        if (!seen.insert(pred.index).second) break;
        tail.core_chain.insert(tail.core_chain.begin(), pred.index);
        head = pred;
      }
    }
    tails.push_back(std::move(tail));
  }
  return tails;
}

std::string format_tail(const Graph& g, const TailWitness& t) {
  std::string out;
  for (auto u : t.core_chain) out += g.vertices()[u] + " -> ";
  out += g.name(VertexRef::ray(t.ray, t.start_position)) + " -> ...";
  return out;
}

Graph materialize(const Graph& g, std::uint64_t depth) {
  GraphDescription d = describe(g);
  d.rays.clear();
  for (const auto& ray : g.rays()) {
    auto pos = [&](std::uint64_t k) { return ray.id + ".x" + std::to_string(k); };
    for (std::uint64_t k = 0; k <= depth; ++k) d.vertices.push_back(pos(k));
    for (const auto& e : ray.entry) d.edges.push_back({g.vertices()[e.source], pos(0), e.mult});
    for (std::uint64_t k = 0; k <= depth; ++k) {
      if (k < depth) d.edges.push_back({pos(k), pos(k + 1), Multiplicity(1)});
      for (const auto& t : ray.targets_at(k)) d.edges.push_back({pos(k), g.vertices()[t.vertex], Multiplicity(t.mult)});
    }
  }
  return build_graph(d);
}

}  // namespace contractible
