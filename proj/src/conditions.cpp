#include "contractible/conditions.hpp"

#include <algorithm>
#include <deque>
#include <functional>

#include "contractible/detail/condensation.hpp"

namespace contractible {

namespace {

using detail::CEdge;
using detail::Condensation;

void require_compatible(const Graph& g, const VertexSet& g0) {
  if (g0.core_capacity() != g.core_size() || g0.ray_capacity() != g.ray_count())
    throw Error(ErrorCode::UnknownVertex, "vertex set does not belong to this graph");
}

// Saturating path count: 0, 1 or "2 or more".
int saturate(Multiplicity m) {
  if (m.is_infinite()) return 2;
  return static_cast<int>(std::min<std::uint64_t>(m.count(), 2));
}

int slots_of(const CEdge& e) { return saturate(e.mult); }

// One move of a walk through the condensation. edge == nullptr means "stay
// on the spine of the suffix we are in".
struct Choice {
  std::uint32_t from = 0;
  const CEdge* edge = nullptr;
  std::uint64_t slot = 0;
  std::uint64_t extra = 0;
};

using Route = std::vector<Choice>;

void apply(const Condensation& c, Path& p, const Choice& ch) {
  if (ch.edge) c.append_edge(p, ch.from, *ch.edge, ch.slot, ch.extra);
}

void extend_along_spine(Path& p) {
  VertexRef at = p.range();
  p.steps.push_back({VertexRef::ray(at.index, at.position + 1), 0});
}

// Two paths sharing a source, cut to the shortest prefixes that differ. A
// path ending on a spine is a stand-in for its infinite continuation and is
// extended until the other one leaves it.
std::pair<Path, Path> diverging_prefixes(Path a, Path b) {
  for (int guard = 0; guard < 1 << 20; ++guard) {
    if (a.is_prefix_of(b) && a.range().is_ray() && a.length() < b.length()) {
      extend_along_spine(a);
    } else if (b.is_prefix_of(a) && b.range().is_ray() && b.length() < a.length()) {
      extend_along_spine(b);
    } else {
      break;
    }
  }
  std::size_t i = 0;
  while (i < a.length() && i < b.length() && a.steps[i] == b.steps[i]) ++i;
  if (i < a.length()) a.steps.resize(i + 1);
  if (i < b.length()) b.steps.resize(i + 1);
  return {std::move(a), std::move(b)};
}

// A G⁰ source of condition (a): a node of the condensation, and for a suffix
// node the residue of the concrete position we start from.
struct Source {
  std::uint32_t node;
  VertexRef vertex;
  bool residue_only;  // only periodic edges leaving exactly at vertex.position
};

std::vector<Source> g0_sources(const Condensation& c) {
  std::vector<Source> out;
  for (std::uint32_t n = 0; n < c.size(); ++n) {
    if (!c.in_set(n)) continue;
    if (!c.is_suffix(n)) {
      out.push_back({n, c.entry_vertex(n), false});
      continue;
    }
    const auto& node = c.node(n);
    const std::uint64_t period = c.graph().ray(node.index).period();
    for (std::uint64_t i = 0; i < period; ++i)
      out.push_back({n, VertexRef::ray(node.index, node.position + i), true});
  }
  return out;
}

// Edges a walk standing at `src` may take: for a residue source only the
// exits at its own position, otherwise everything.
bool usable_from(const Source& src, const CEdge& e) {
  return !src.residue_only || (e.periodic && e.exit_position == src.vertex.position);
}

Path concretize(const Condensation& c, VertexRef start, const Route& route) {
  Path p{start, {}};
  for (const auto& ch : route) apply(c, p, ch);
  return p;
}

Path cycle_path(const Condensation& c, std::uint32_t start, const std::vector<const CEdge*>& edges) {
  Path p{c.entry_vertex(start), {}};
  std::uint32_t at = start;
  for (const CEdge* e : edges) {
    c.append_edge(p, at, *e, 0);
    at = e->to;
  }
  return p;
}

// Marks one vertex per ray: the earliest flagged node of that ray.
template <class Flag>
std::vector<std::uint32_t> flagged_nodes(const Condensation& c, Flag flag) {
  std::vector<std::uint32_t> out;
  const Graph& g = c.graph();
  for (std::uint32_t u = 0; u < g.core_size(); ++u)
    if (flag(u)) out.push_back(u);
  for (std::uint32_t r = 0; r < g.ray_count(); ++r) {
    const std::uint32_t base = c.first_ray_node(r);
    for (std::uint64_t k = 0; k <= c.explicit_depth(r); ++k) {
      auto n = static_cast<std::uint32_t>(base + k);
      if (flag(n)) {
        out.push_back(n);
        break;
      }
    }
  }
  return out;
}

void ambient_checks(const Graph& g, const VertexSet& g0, ContractionVerdict& v) {
  for (auto& tail : detect_tails(g)) {
    Violation x{ViolationKind::TailsPresent};
    x.tail = tail;
    v.violations.push_back(std::move(x));
  }
  for (auto s : singularities(g)) {
    if (g0.contains(s)) continue;
    Violation x{ViolationKind::SingularityOutsideG0};
    x.vertex = s;
    v.violations.push_back(std::move(x));
  }
}

void edge_into_violations(const Condensation& c, ViolationKind kind, const std::vector<bool>& target_ok,
                          const std::function<bool(std::uint32_t, std::uint32_t)>& continues,
                          ContractionVerdict& v) {
  const Graph& g = c.graph();
  for (std::uint32_t z = 0; z < g.core_size(); ++z) {
    if (!g.out_degree(VertexRef::core(z)).is_infinite()) continue;
    for (const auto& e : c.out(z)) {
      if (c.in_set(e.to) || !target_ok[e.to] || !continues(z, e.to)) continue;
      Violation x{kind};
      x.vertex = VertexRef::core(z);
      Path p{VertexRef::core(z), {}};
      c.append_edge(p, z, e, 0);
      x.paths.push_back(std::move(p));
      v.violations.push_back(std::move(x));
    }
  }
}

// ---- component-DP analysis used by check_theorem and induced_T ----

struct TAnalysis {
  detail::Components scc;
  std::vector<bool> cyclic_component;
  std::vector<bool> simple_cycle_component;
  std::vector<bool> infinite;  // T node admits an infinite path inside T
  std::vector<int> count;      // infinite T paths from here, saturated at 2
  bool acyclic = true;
};

TAnalysis analyse(const Condensation& c) {
  const std::uint32_t n = c.size();
  auto in_t = [&](std::uint32_t x) { return !c.in_set(x); };
  TAnalysis a;
  a.scc = detail::strongly_connected(c, in_t);
  const int k = a.scc.count;
  std::vector<std::vector<std::uint32_t>> members(k);
  for (std::uint32_t x = 0; x < n; ++x)
    if (a.scc.component[x] >= 0) members[a.scc.component[x]].push_back(x);

  a.cyclic_component.assign(k, false);
  a.simple_cycle_component.assign(k, false);
  for (int comp = 0; comp < k; ++comp) {
    const auto& ms = members[comp];
    bool cyclic = ms.size() > 1;
    if (!cyclic)
      for (const auto& e : c.out(ms[0])) cyclic |= e.to == ms[0];
    a.cyclic_component[comp] = cyclic;
    if (cyclic) a.acyclic = false;
  }

  a.infinite.assign(n, false);
  a.count.assign(n, 0);
  // Tarjan numbers components sinks first, so successors are done already.
  for (int comp = 0; comp < k; ++comp) {
    const auto& ms = members[comp];
    bool inf = a.cyclic_component[comp];
    for (auto x : ms) {
      if (c.is_suffix(x)) inf = true;
      for (const auto& e : c.out(x))
        if (in_t(e.to) && a.scc.component[e.to] != comp && a.infinite[e.to]) inf = true;
    }
    for (auto x : ms) a.infinite[x] = inf;

    if (a.cyclic_component[comp]) {
      bool simple = true;
      for (auto x : ms) {
        if (c.is_suffix(x)) simple = false;
        int inside = 0;
        for (const auto& e : c.out(x)) {
          if (!in_t(e.to)) continue;
          if (a.scc.component[e.to] == comp) {
            inside += slots_of(e);
          } else if (a.infinite[e.to]) {
            simple = false;
          }
        }
        if (inside != 1) simple = false;
      }
      a.simple_cycle_component[comp] = simple;
      for (auto x : ms) a.count[x] = simple ? 1 : 2;
      continue;
    }
    const std::uint32_t x = ms[0];
    int total = c.is_suffix(x) ? 1 : 0;
    for (const auto& e : c.out(x))
      if (in_t(e.to)) total = std::min(2, total + saturate(e.effective()) * a.count[e.to]);
    a.count[x] = total;
  }
  return a;
}

// Moves a walk could make from `at` that keep an infinite T continuation
// open, each distinct move listed once (at most two slots per edge).
std::vector<Choice> live_choices(const Condensation& c, const TAnalysis& a, std::uint32_t at,
                                 const Source* source) {
  std::vector<Choice> out;
  for (const auto& e : c.out(at)) {
    if (c.in_set(e.to) || a.count[e.to] == 0) continue;
    if (source && !usable_from(*source, e)) continue;
    if (e.periodic && !source) {
      out.push_back({at, &e, 0, 0});
      out.push_back({at, &e, 0, 1});
      continue;
    }
    for (int s = 0; s < slots_of(e); ++s) out.push_back({at, &e, static_cast<std::uint64_t>(s), 0});
  }
  if (!source && c.is_suffix(at)) out.push_back({at, nullptr, 0, 0});
  return out;
}

int source_count(const Condensation& c, const TAnalysis& a, const Source& s) {
  int total = 0;
  for (const auto& e : c.out(s.node)) {
    if (c.in_set(e.to) || !usable_from(s, e)) continue;
    Multiplicity m = s.residue_only ? e.mult : e.effective();
    total = std::min(2, total + saturate(m) * a.count[e.to]);
  }
  return total;
}

// Follows the branch structure from a G⁰ source until two live moves exist.
std::optional<std::pair<Path, Path>> cond_a_witness(const Condensation& c, const TAnalysis& a, const Source& s) {
  Route common;
  std::uint32_t at = s.node;
  const Source* src = &s;
  for (std::uint32_t guard = 0; guard <= 2 * c.size() + 2; ++guard) {
    auto opts = live_choices(c, a, at, src);
    if (opts.size() >= 2) {
      Route r1 = common, r2 = common;
      r1.push_back(opts[0]);
      r2.push_back(opts[1]);
      return diverging_prefixes(concretize(c, s.vertex, r1), concretize(c, s.vertex, r2));
    }
    if (opts.empty() || !opts[0].edge) return std::nullopt;
    common.push_back(opts[0]);
    at = opts[0].edge->to;
    src = nullptr;
  }
  return std::nullopt;
}

// Some cycle through `start` inside its component.
std::vector<const CEdge*> cycle_in_component(const Condensation& c, const detail::Components& scc,
                                             std::uint32_t start) {
  const int comp = scc.component[start];
  std::vector<const CEdge*> via(c.size(), nullptr);
  std::vector<std::uint32_t> parent(c.size(), 0);
  std::vector<bool> seen(c.size(), false);
  std::deque<std::uint32_t> queue{start};
  seen[start] = true;
  while (!queue.empty()) {
    std::uint32_t x = queue.front();
    queue.pop_front();
    for (const auto& e : c.out(x)) {
      if (scc.component[e.to] != comp) continue;
      if (e.to == start) {
        std::vector<const CEdge*> edges{&e};
        for (std::uint32_t y = x; y != start; y = parent[y]) edges.push_back(via[y]);
        std::reverse(edges.begin(), edges.end());
        return edges;
      }
      if (seen[e.to]) continue;
      seen[e.to] = true;
      via[e.to] = &e;
      parent[e.to] = x;
      queue.push_back(e.to);
    }
  }
  return {};
}

// ---- independent helpers for check_proposition and validation ----

// T nodes from which some acyclic infinite path stays in T: exactly those
// that reach a T suffix node through T.
std::vector<bool> acyclic_infinite_starts(const Condensation& c) {
  const std::uint32_t n = c.size();
  std::vector<std::vector<std::uint32_t>> rev(n);
  for (std::uint32_t x = 0; x < n; ++x)
    if (!c.in_set(x))
      for (const auto& e : c.out(x))
        if (!c.in_set(e.to)) rev[e.to].push_back(x);
  std::vector<bool> mark(n, false);
  std::deque<std::uint32_t> queue;
  for (std::uint32_t x = 0; x < n; ++x)
    if (!c.in_set(x) && c.is_suffix(x)) {
      mark[x] = true;
      queue.push_back(x);
    }
  while (!queue.empty()) {
    std::uint32_t x = queue.front();
    queue.pop_front();
    for (auto y : rev[x])
      if (!mark[y]) {
        mark[y] = true;
        queue.push_back(y);
      }
  }
  return mark;
}

std::vector<bool> reached_from_set(const Condensation& c) {
  std::vector<bool> seen(c.size(), false);
  std::deque<std::uint32_t> queue;
  for (std::uint32_t x = 0; x < c.size(); ++x)
    if (c.in_set(x)) {
      seen[x] = true;
      queue.push_back(x);
    }
  while (!queue.empty()) {
    std::uint32_t x = queue.front();
    queue.pop_front();
    for (const auto& e : c.out(x))
      if (!seen[e.to]) {
        seen[e.to] = true;
        queue.push_back(e.to);
      }
  }
  return seen;
}

bool reaches_suffix_avoiding(const Condensation& c, std::uint32_t from, std::uint32_t avoid) {
  if (from == avoid) return false;
  std::vector<bool> seen(c.size(), false);
  std::deque<std::uint32_t> queue{from};
  seen[from] = true;
  while (!queue.empty()) {
    std::uint32_t x = queue.front();
    queue.pop_front();
    if (c.is_suffix(x)) return true;
    for (const auto& e : c.out(x))
      if (!c.in_set(e.to) && e.to != avoid && !seen[e.to]) {
        seen[e.to] = true;
        queue.push_back(e.to);
      }
  }
  return false;
}

// Up to two acyclic routes from a G⁰ source whose ranges stay in T.
std::vector<Route> two_routes(const Condensation& c, const std::vector<bool>& starts, const Source& s) {
  std::vector<Route> found;
  std::vector<bool> visited(c.size(), false);
  Route route;
  std::function<void(std::uint32_t, const Source*)> walk = [&](std::uint32_t at, const Source* src) {
    if (!src && c.is_suffix(at)) {
      route.push_back({at, nullptr, 0, 0});
      found.push_back(route);
      route.pop_back();
    }
    for (const auto& e : c.out(at)) {
      if (found.size() >= 2) return;
      if (c.in_set(e.to) || !starts[e.to] || visited[e.to]) continue;
      if (src && !usable_from(*src, e)) continue;
      std::vector<std::pair<std::uint64_t, std::uint64_t>> variants;  // (slot, extra periods)
      if (e.periodic && !src) {
        variants = {{0, 0}, {0, 1}};
      } else {
        for (int k = 0; k < slots_of(e); ++k) variants.emplace_back(k, 0);
      }
      for (auto [slot, extra] : variants) {
        if (found.size() >= 2) return;
        visited[e.to] = true;
        route.push_back({at, &e, slot, extra});
        walk(e.to, nullptr);
        route.pop_back();
        visited[e.to] = false;
      }
    }
  };
  walk(s.node, &s);
  return found;
}

// T nodes from which an infinite path inside T exists, by reachability of a
// T suffix or of a cycle (Kahn elimination on the reachable part).
bool admits_infinite_t_path(const Condensation& c, std::uint32_t from) {
  if (c.in_set(from)) return false;
  std::vector<bool> seen(c.size(), false);
  std::vector<std::uint32_t> order{from};
  seen[from] = true;
  for (std::size_t i = 0; i < order.size(); ++i) {
    std::uint32_t x = order[i];
    if (c.is_suffix(x)) return true;
    for (const auto& e : c.out(x))
      if (!c.in_set(e.to) && !seen[e.to]) {
        seen[e.to] = true;
        order.push_back(e.to);
      }
  }
  std::vector<int> indeg(c.size(), 0);
  for (auto x : order)
    for (const auto& e : c.out(x))
      if (!c.in_set(e.to)) ++indeg[e.to];
  std::deque<std::uint32_t> ready;
  for (auto x : order)
    if (indeg[x] == 0) ready.push_back(x);
  std::size_t removed = 0;
  while (!ready.empty()) {
    std::uint32_t x = ready.front();
    ready.pop_front();
    ++removed;
    for (const auto& e : c.out(x))
      if (!c.in_set(e.to) && --indeg[e.to] == 0) ready.push_back(e.to);
  }
  return removed < order.size();
}

}  // namespace

std::string_view violation_name(ViolationKind kind) noexcept {
  switch (kind) {
    case ViolationKind::TailsPresent: return "TAILS_PRESENT";
    case ViolationKind::SingularityOutsideG0: return "SINGULARITY_OUTSIDE_G0";
    case ViolationKind::TCycle: return "T_CYCLE";
    case ViolationKind::CondA: return "COND_A";
    case ViolationKind::CondB: return "COND_B";
    case ViolationKind::CondC: return "COND_C";
    case ViolationKind::CondD: return "COND_D";
    case ViolationKind::Cond1: return "COND_1";
    case ViolationKind::CondAPrime: return "COND_A_PRIME";
    case ViolationKind::CondBPrime: return "COND_B_PRIME";
    case ViolationKind::CondCPrime: return "COND_C_PRIME";
    case ViolationKind::CondDPrime: return "COND_D_PRIME";
  }
  return "?";
}

bool ContractionVerdict::has(ViolationKind kind) const {
  return std::any_of(violations.begin(), violations.end(), [&](const Violation& v) { return v.kind == kind; });
}

std::vector<ViolationKind> ContractionVerdict::kinds() const {
  std::vector<ViolationKind> out;
  for (const auto& v : violations) out.push_back(v.kind);
  return out;
}

std::string format_violation(const Graph& g, const Violation& v) {
  std::string out(violation_name(v.kind));
  std::vector<std::string> parts;
  if (v.tail) parts.push_back(format_tail(g, *v.tail));
  if (v.vertex) parts.push_back(g.name(*v.vertex));
  for (const auto& p : v.paths) parts.push_back(format_path(g, p));
  if (v.degree) parts.push_back("in-degree " + v.degree->to_string());
  out += "(";
  for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? "; " : "") + parts[i];
  return out + ")";
}

std::string format_verdict(const Graph& g, const ContractionVerdict& verdict) {
  if (verdict.pass) return "pass\n";
  std::string out;
  for (const auto& v : verdict.violations) out += format_violation(g, v) + "\n";
  return out;
}

bool SubgraphT::contains(VertexRef v) const {
  if (v.is_core()) return std::binary_search(core_vertices.begin(), core_vertices.end(), v.index);
  if (v.index >= ray_parts.size() || !ray_parts[v.index]) return false;
  const auto& end = *ray_parts[v.index];
  return !end || v.position < *end;
}

SubgraphT induced_T(const Graph& g, const VertexSet& g0) {
  require_compatible(g, g0);
  Condensation c(g, g0);
  const TAnalysis a = analyse(c);
  SubgraphT t;
  for (std::uint32_t u = 0; u < g.core_size(); ++u)
    if (!g0.contains_core(u)) t.core_vertices.push_back(u);
  t.ray_parts.resize(g.ray_count());
  for (std::uint32_t r = 0; r < g.ray_count(); ++r) {
    auto from = g0.ray_from(r);
    if (!from) {
      t.ray_parts[r] = std::optional<std::uint64_t>{};
    } else if (*from > 0) {
      t.ray_parts[r] = std::optional<std::uint64_t>{*from};
    }
  }

  for (std::uint32_t x = 0; x < c.size(); ++x) {
    if (c.in_set(x)) continue;
    const VertexRef src = c.entry_vertex(x);
    for (const auto& e : c.out(x)) {
      if (c.in_set(e.to)) continue;
      TEdge te{src, c.entry_vertex(e.to), e.mult, TEdge::Kind::Plain};
      if (e.periodic) {
        te.source = VertexRef::ray(src.index, e.exit_position);
        te.kind = TEdge::Kind::Periodic;
      }
      t.edges.push_back(te);
    }
    if (c.is_suffix(x)) t.edges.push_back({src, VertexRef::ray(src.index, src.position + 1), 1, TEdge::Kind::Spine});
    if (a.infinite[x]) t.infinite_starts.push_back(src);
  }
  t.acyclic = a.acyclic;
  return t;
}

ContractionVerdict check_theorem(const Graph& g, const VertexSet& g0) {
  require_compatible(g, g0);
  ContractionVerdict verdict;
  ambient_checks(g, g0, verdict);

  Condensation c(g, g0);
  const TAnalysis a = analyse(c);
  std::vector<bool> reported(a.scc.count, false);
  for (std::uint32_t x = 0; x < c.size(); ++x) {
    const int comp = a.scc.component[x];
    if (comp < 0 || !a.cyclic_component[comp] || reported[comp]) continue;
    reported[comp] = true;
    Violation v{ViolationKind::TCycle};
    v.paths.push_back(cycle_path(c, x, cycle_in_component(c, a.scc, x)));
    verdict.violations.push_back(std::move(v));
  }

  const VertexSet reach = hereditary_closure(g, g0);
  for (auto x : flagged_nodes(c, [&](std::uint32_t n) { return a.infinite[n] && !reach.contains(c.entry_vertex(n)); })) {
    Violation v{ViolationKind::CondB};
    v.vertex = c.entry_vertex(x);
    verdict.violations.push_back(std::move(v));
  }

  for (std::uint32_t x = 0; x < c.size(); ++x) {
    if (!a.infinite[x]) continue;
    Multiplicity deg = g.in_degree(c.entry_vertex(x));
    if (deg == Multiplicity(1)) continue;
    Violation v{ViolationKind::CondC};
    v.vertex = c.entry_vertex(x);
    v.degree = deg;
    verdict.violations.push_back(std::move(v));
  }

  edge_into_violations(c, ViolationKind::CondD, a.infinite, [](std::uint32_t, std::uint32_t) { return true; },
                       verdict);

  for (const auto& s : g0_sources(c)) {
    if (source_count(c, a, s) < 2) continue;
    Violation v{ViolationKind::CondA};
    v.vertex = s.vertex;
    if (auto w = cond_a_witness(c, a, s)) {
      v.paths.push_back(std::move(w->first));
      v.paths.push_back(std::move(w->second));
    }
    verdict.violations.push_back(std::move(v));
  }

  verdict.pass = verdict.violations.empty();
  return verdict;
}

ContractionVerdict check_proposition(const Graph& g, const VertexSet& g0) {
  require_compatible(g, g0);
  ContractionVerdict verdict;
  ambient_checks(g, g0, verdict);

  Condensation c(g, g0);
  const std::uint32_t n = c.size();

  // (1): depth-first colouring over T; a grey target closes a cycle.
  {
    std::vector<int> colour(n, 0);
    std::vector<std::uint32_t> node_stack;
    std::vector<const CEdge*> edge_stack;
    std::function<bool(std::uint32_t)> dfs = [&](std::uint32_t x) {
      colour[x] = 1;
      node_stack.push_back(x);
      for (const auto& e : c.out(x)) {
        if (c.in_set(e.to)) continue;
        if (colour[e.to] == 1) {
          auto it = std::find(node_stack.begin(), node_stack.end(), e.to);
          auto offset = static_cast<std::size_t>(it - node_stack.begin());
          std::vector<const CEdge*> edges(edge_stack.begin() + static_cast<std::ptrdiff_t>(offset), edge_stack.end());
          edges.push_back(&e);
          Violation v{ViolationKind::Cond1};
          v.paths.push_back(cycle_path(c, e.to, edges));
          verdict.violations.push_back(std::move(v));
          return true;
        }
        if (colour[e.to] == 0) {
          edge_stack.push_back(&e);
          if (dfs(e.to)) return true;
          edge_stack.pop_back();
        }
      }
      colour[x] = 2;
      node_stack.pop_back();
      return false;
    };
    for (std::uint32_t x = 0; x < n; ++x)
      if (!c.in_set(x) && colour[x] == 0 && dfs(x)) break;
  }

  const std::vector<bool> starts = acyclic_infinite_starts(c);
  const std::vector<bool> reached = reached_from_set(c);

  for (auto x : flagged_nodes(c, [&](std::uint32_t m) { return starts[m] && !reached[m]; })) {
    Violation v{ViolationKind::CondBPrime};
    v.vertex = c.entry_vertex(x);
    verdict.violations.push_back(std::move(v));
  }

  for (std::uint32_t x = 0; x < n; ++x) {
    if (!starts[x]) continue;
    Multiplicity deg = g.in_degree(c.entry_vertex(x));
    if (deg <= Multiplicity(1)) continue;
    Violation v{ViolationKind::CondCPrime};
    v.vertex = c.entry_vertex(x);
    v.degree = deg;
    verdict.violations.push_back(std::move(v));
  }

  edge_into_violations(
      c, ViolationKind::CondDPrime, starts,
      [&](std::uint32_t z, std::uint32_t y) { return c.in_set(z) || reaches_suffix_avoiding(c, y, z); }, verdict);

  for (const auto& s : g0_sources(c)) {
    auto routes = two_routes(c, starts, s);
    if (routes.size() < 2) continue;
    Violation v{ViolationKind::CondAPrime};
    v.vertex = s.vertex;
    auto [p, q] = diverging_prefixes(concretize(c, s.vertex, routes[0]), concretize(c, s.vertex, routes[1]));
    v.paths.push_back(std::move(p));
    v.paths.push_back(std::move(q));
    verdict.violations.push_back(std::move(v));
  }

  verdict.pass = verdict.violations.empty();
  return verdict;
}

std::string validate_verdict(const Graph& g, const VertexSet& g0, const ContractionVerdict& verdict) {
  require_compatible(g, g0);
  if (verdict.pass != verdict.violations.empty()) return "pass flag disagrees with violation list";
  Condensation c(g, g0);
  auto in_t = [&](VertexRef v) { return !g0.contains(v); };
  auto admits = [&](VertexRef v) { return admits_infinite_t_path(c, c.node_of(v)); };
  const VertexSet reach = hereditary_closure(g, g0);

  for (const auto& v : verdict.violations) {
    const std::string what = format_violation(g, v);
    auto bad = [&](const std::string& why) { return what + ": " + why; };
    for (const auto& p : v.paths)
      if (!path_exists(g, p)) return bad("witness path does not exist");

    switch (v.kind) {
      case ViolationKind::TailsPresent: {
        if (!v.tail) return bad("missing tail");
        const Ray& ray = g.ray(v.tail->ray);
        for (const auto& bag : ray.cycle)
          if (!bag.empty()) return bad("ray emits into the core");
        for (std::uint64_t k = v.tail->start_position; k < ray.prefix_length(); ++k)
          if (!ray.prefix[k].empty()) return bad("ray emits into the core after the tail start");
        for (auto u : v.tail->core_chain) {
          if (g.out_degree(VertexRef::core(u)) != Multiplicity(1)) return bad("chain vertex emits more than one edge");
          if (g.in_degree(VertexRef::core(u)) != Multiplicity(1) && u != v.tail->core_chain.front())
            return bad("chain vertex receives more than one edge");
        }
        break;
      }
      case ViolationKind::SingularityOutsideG0:
        if (!v.vertex || !is_singular(g, *v.vertex) || !in_t(*v.vertex)) return bad("not a singularity outside G0");
        break;
      case ViolationKind::TCycle:
      case ViolationKind::Cond1: {
        if (v.paths.size() != 1) return bad("expected one cycle");
        const Path& p = v.paths[0];
        if (p.length() == 0 || p.source != p.range()) return bad("witness is not closed");
        for (std::size_t i = 0; i < p.length(); ++i)
          if (!in_t(p.vertex_at(i))) return bad("cycle meets G0");
        break;
      }
      case ViolationKind::CondA:
      case ViolationKind::CondAPrime: {
        if (!v.vertex || in_t(*v.vertex)) return bad("source not in G0");
        if (v.paths.size() != 2) return bad("expected two prefixes");
        const Path& p = v.paths[0];
        const Path& q = v.paths[1];
        if (p.source != *v.vertex || q.source != *v.vertex) return bad("prefixes do not start at the vertex");
        if (p.is_prefix_of(q) || q.is_prefix_of(p)) return bad("prefixes do not diverge");
        for (const Path* r : {&p, &q}) {
          for (std::size_t i = 1; i <= r->length(); ++i)
            if (!in_t(r->vertex_at(i))) return bad("prefix leaves T");
          if (!admits(r->range())) return bad("prefix cannot be continued inside T");
        }
        break;
      }
      case ViolationKind::CondB:
      case ViolationKind::CondBPrime:
        if (!v.vertex || !admits(*v.vertex)) return bad("vertex starts no infinite path in T");
        if (reach.contains(*v.vertex)) return bad("vertex is reachable from G0");
        break;
      case ViolationKind::CondC:
      case ViolationKind::CondCPrime:
        if (!v.vertex || !admits(*v.vertex)) return bad("vertex starts no infinite path in T");
        if (!v.degree || g.in_degree(*v.vertex) != *v.degree) return bad("in-degree differs");
        if (*v.degree == Multiplicity(1)) return bad("in-degree is one");
        break;
      case ViolationKind::CondD:
      case ViolationKind::CondDPrime: {
        if (!v.vertex || v.paths.size() != 1 || v.paths[0].length() != 1) return bad("expected one edge");
        const Path& e = v.paths[0];
        if (e.source != *v.vertex || !g.out_degree(*v.vertex).is_infinite()) return bad("source is not an infinite emitter");
        if (!admits(e.range())) return bad("edge does not end on an infinite path in T");
        break;
      }
    }
  }
  return {};
}

ConditionsFailed::ConditionsFailed(ContractionVerdict verdict, const std::string& message)
    : Error(ErrorCode::ConditionsFailed, message), verdict_(std::move(verdict)) {}

}  // namespace contractible
