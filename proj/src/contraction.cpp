#include "contractible/contraction.hpp"

#include <algorithm>
#include <exception>
#include <map>
#include <tuple>

#include "contractible/detail/condensation.hpp"

namespace contractible {

namespace {

using detail::CEdge;
using detail::Condensation;

void require_vertex(const Graph& g, VertexRef v) {
  bool ok = v.is_core() ? v.index < g.core_size() : v.index < g.ray_count();
  if (!ok) throw Error(ErrorCode::UnknownVertex, "vertex is not part of the graph");
}

void require_compatible(const Graph& g, const VertexSet& g0) {
  if (g0.core_capacity() != g.core_size() || g0.ray_capacity() != g.ray_count())
    throw Error(ErrorCode::UnknownVertex, "vertex set does not belong to this graph");
}

bool t_is_acyclic(const Condensation& c) {
  auto scc = detail::strongly_connected(c, [&](std::uint32_t n) { return !c.in_set(n); });
  std::vector<int> size(scc.count, 0);
  for (std::uint32_t n = 0; n < c.size(); ++n) {
    if (scc.component[n] < 0) continue;
    if (++size[scc.component[n]] > 1) return false;
    for (const auto& e : c.out(n))
      if (e.to == n) return false;
  }
  return true;
}

void require_acyclic(const Condensation& c) {
  if (!t_is_acyclic(c)) throw Error(ErrorCode::TNotAcyclic, "the subgraph spanned by the complement of G0 has a cycle");
}

// Depth-first listing of route shapes from a node until G⁰ is entered.
class RouteWalker {
 public:
  RouteWalker(const Condensation& c, std::size_t limit) : c_(c), limit_(limit) {}

  void walk_from(std::uint32_t node, VertexRef at) {
    current_ = PathGenerator{at, {}};
    walk(node, at);
  }

  std::vector<PathGenerator>& generators() { return out_; }
  bool truncated() const { return truncated_; }

 private:
  void walk(std::uint32_t node, VertexRef at) {
    for (const auto& e : c_.out(node)) {
      if (out_.size() >= limit_) {
        truncated_ = true;
        return;
      }
      const std::size_t mark = current_.hops.size();
      VertexRef next;
      if (c_.is_suffix(node)) {
        const std::uint64_t period = c_.graph().ray(at.index).period();
        std::uint64_t exit = e.exit_position;
        if (at.position > exit) exit += ((at.position - exit + period - 1) / period) * period;
        current_.hops.push_back({Hop::Kind::Run, VertexRef::ray(at.index, exit), Multiplicity::omega(), period});
        next = VertexRef::core(e.to);
      } else {
        next = c_.entry_vertex(e.to);
      }
      current_.hops.push_back({Hop::Kind::Edge, next, e.mult, 0});
      if (c_.in_set(e.to)) {
        out_.push_back(current_);
      } else {
        walk(e.to, next);
      }
      current_.hops.resize(mark);
    }
  }

  const Condensation& c_;
  std::size_t limit_;
  bool truncated_ = false;
  PathGenerator current_;
  std::vector<PathGenerator> out_;
};

bool hop_less(const Hop& a, const Hop& b) {
  return std::tie(a.kind, a.target, a.count, a.period) < std::tie(b.kind, b.target, b.count, b.period);
}

bool generator_order(const Graph& g, const PathGenerator& a, const PathGenerator& b) {
  const std::string ra = g.name(a.range()), rb = g.name(b.range());
  if (ra != rb) return ra < rb;
  if (a.min_length() != b.min_length()) return a.min_length() < b.min_length();
  return std::lexicographical_compare(a.hops.begin(), a.hops.end(), b.hops.begin(), b.hops.end(), hop_less);
}

// ---- per-vertex rows of the contracted graph ----

using Row = std::map<std::uint32_t, Multiplicity>;

class RowKernel {
 public:
  explicit RowKernel(const Condensation& c) : c_(c), memo_(c.size()) {}

  // Exits into G⁰ reachable from G⁰ node n, by target node. For a ray
  // position the spine edge is left out (it is kept as spine).
  Row source_row(std::uint32_t n) { return accumulate(n, c_.node(n).kind == detail::CNode::Kind::Position); }

 private:
  const Row& t_row(std::uint32_t n) {
    if (!memo_[n]) memo_[n] = accumulate(n, false);
    return *memo_[n];
  }

  Row accumulate(std::uint32_t n, bool skip_spine) {
    Row row;
    const auto& edges = c_.out(n);
    for (std::size_t i = skip_spine ? 1 : 0; i < edges.size(); ++i) {
      const CEdge& e = edges[i];
      const Multiplicity m = c_.is_suffix(n) ? e.effective() : e.mult;
      if (c_.in_set(e.to)) {
        row[e.to] += m;
        continue;
      }
      for (const auto& [t, k] : t_row(e.to)) {
        Multiplicity add = m * k;
        if (!add.is_zero()) row[t] += add;
      }
    }
    return row;
  }

  const Condensation& c_;
  std::vector<std::optional<Row>> memo_;
};

struct Plan {
  std::vector<std::uint64_t> min_explicit;
  std::vector<std::uint32_t> sources;  // G⁰ nodes whose rows make up the result
};

Plan plan_for(const Graph& g, const VertexSet& g0) {
  Plan p;
  p.min_explicit.assign(g.ray_count(), 0);
  for (std::uint32_t r = 0; r < g.ray_count(); ++r) {
    auto from = g0.ray_from(r);
    if (!from) continue;
    if (*from != 0)
      throw Error(ErrorCode::Unsupported, "G0 contains only part of ray " + g.ray(r).id + "; contract needs whole rays");
    p.min_explicit[r] = g.ray(r).prefix_length() + g.ray(r).period();
  }
  return p;
}

void collect_sources(const Condensation& c, Plan& p) {
  for (std::uint32_t n = 0; n < c.size(); ++n)
    if (c.in_set(n) && !c.is_suffix(n)) p.sources.push_back(n);
}

Graph assemble(const Graph& g, const VertexSet& g0, const Condensation& c, const Plan& p, const std::vector<Row>& rows) {
  GraphDescription d;
  for (std::uint32_t u = 0; u < g.core_size(); ++u)
    if (g0.contains_core(u)) d.vertices.push_back(g.vertices()[u]);

  std::map<std::uint32_t, RaySpec> rays;
  for (std::uint32_t r = 0; r < g.ray_count(); ++r) {
    if (!g0.ray_from(r)) continue;
    const Ray& ray = g.ray(r);
    RaySpec spec;
    spec.id = ray.id;
    spec.prefix.resize(ray.prefix_length());
    spec.cycle.resize(ray.period());
    rays.emplace(r, std::move(spec));
  }

  for (std::size_t i = 0; i < p.sources.size(); ++i) {
    const std::uint32_t s = p.sources[i];
    const detail::CNode& src = c.node(s);
    for (const auto& [t, m] : rows[i]) {
      const detail::CNode& dst = c.node(t);
      if (src.kind == detail::CNode::Kind::Core) {
        if (dst.kind == detail::CNode::Kind::Core) {
          d.edges.push_back({g.vertices()[src.index], g.vertices()[dst.index], m});
        } else if (dst.position == 0) {
          rays.at(dst.index).entry.push_back({g.vertices()[src.index], m});
        } else {
          throw Error(ErrorCode::Unrepresentable, "contracted edge would enter a ray after x0");
        }
        continue;
      }
      const std::string where = g.name(c.entry_vertex(s));
      if (dst.kind != detail::CNode::Kind::Core)
        throw Error(ErrorCode::Unrepresentable, "contracted edge from " + where + " would enter a ray");
      if (m.is_infinite())
        throw Error(ErrorCode::Unrepresentable, "ray position " + where + " would emit infinitely many edges");
      RaySpec& spec = rays.at(src.index);
      const Ray& ray = g.ray(src.index);
      const std::uint64_t k = src.position;
      TargetSpec target{g.vertices()[dst.index], m};
      if (k < ray.prefix_length()) {
        spec.prefix[k].push_back(target);
      } else {
        spec.cycle[k - ray.prefix_length()].push_back(target);
      }
    }
  }
  for (auto& [r, spec] : rays) d.rays.push_back(std::move(spec));
  return build_graph(d);
}

std::vector<Row> rows_parallel(const Condensation& c, const std::vector<std::uint32_t>& sources, bool parallel) {
  std::vector<Row> rows(sources.size());
  std::exception_ptr failure;
  const auto count = static_cast<std::int64_t>(sources.size());
#pragma omp parallel for schedule(dynamic) if (parallel)
  for (std::int64_t i = 0; i < count; ++i) {
    try {
      RowKernel kernel(c);
      rows[static_cast<std::size_t>(i)] = kernel.source_row(sources[static_cast<std::size_t>(i)]);
    } catch (...) {
#pragma omp critical(contract_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return rows;
}

bool is_own_spine(const Condensation& c, std::uint32_t source, const PathGenerator& gen) {
  const detail::CNode& n = c.node(source);
  if (n.kind != detail::CNode::Kind::Position || gen.hops.empty()) return false;
  return gen.hops.front().target == VertexRef::ray(n.index, n.position + 1);
}

std::string verdict_summary(const ContractionVerdict& v) {
  std::string out;
  for (auto k : v.kinds()) out += (out.empty() ? "" : ", ") + std::string(violation_name(k));
  return out;
}

}  // namespace

Multiplicity PathGenerator::count() const {
  Multiplicity m{1};
  for (const auto& h : hops) m *= h.count;
  return m;
}

std::uint64_t PathGenerator::min_length() const {
  std::uint64_t len = 0;
  VertexRef at = source;
  for (const auto& h : hops) {
    len += h.kind == Hop::Kind::Run ? h.target.position - at.position : 1;
    at = h.target;
  }
  return len;
}

std::vector<Path> PathGenerator::expand() const {
  if (!is_finite()) throw Error(ErrorCode::BvInfinite, "generator denotes infinitely many paths");
  std::vector<Path> out{Path{source, {}}};
  for (const auto& h : hops) {
    std::vector<Path> next;
    const std::uint64_t k = h.count.count();
    next.reserve(out.size() * k);
    for (const auto& p : out)
      for (std::uint64_t s = 0; s < k; ++s) {
        Path q = p;
        q.steps.push_back({h.target, s});
        next.push_back(std::move(q));
      }
    out = std::move(next);
  }
  return out;
}

std::string format_generator(const Graph& g, const PathGenerator& gen) {
  std::string out = g.name(gen.source);
  for (const auto& h : gen.hops) {
    if (h.kind == Hop::Kind::Run) {
      out += " ~> " + g.name(h.target) + "+" + std::to_string(h.period) + "n";
    } else if (h.count == Multiplicity(1)) {
      out += " -> " + g.name(h.target);
    } else {
      out += " =" + h.count.to_string() + "=> " + g.name(h.target);
    }
  }
  return out;
}

bool path_order(const Graph& g, const Path& a, const Path& b) {
  const std::string ra = g.name(a.range()), rb = g.name(b.range());
  if (ra != rb) return ra < rb;
  if (a.length() != b.length()) return a.length() < b.length();
  return a.steps < b.steps;
}

PathFamily enumerate_Bv(const Graph& g, const VertexSet& g0, VertexRef v) {
  require_compatible(g, g0);
  require_vertex(g, v);
  std::vector<std::uint64_t> min_explicit(g.ray_count(), 0);
  if (v.is_ray()) min_explicit[v.index] = v.position + 1;
  Condensation c(g, g0, min_explicit);
  require_acyclic(c);

  RouteWalker walker(c, static_cast<std::size_t>(-1));
  walker.walk_from(c.node_of(v), v);

  PathFamily family;
  family.owner = v;
  bool unbounded = false;
  std::uint64_t longest = 0;
  for (auto& gen : walker.generators()) {
    family.cardinality += gen.count();
    bool runs = std::any_of(gen.hops.begin(), gen.hops.end(), [](const Hop& h) { return h.kind == Hop::Kind::Run; });
    unbounded |= runs;
    longest = std::max(longest, gen.min_length());
    if (gen.is_finite()) {
      for (auto& p : gen.expand()) family.finite_part.push_back(std::move(p));
    } else {
      family.infinite_families.push_back(std::move(gen));
    }
  }
  if (!family.empty()) family.max_length = unbounded ? Multiplicity::omega() : Multiplicity(longest);
  std::sort(family.finite_part.begin(), family.finite_part.end(),
            [&](const Path& a, const Path& b) { return path_order(g, a, b); });
  std::sort(family.infinite_families.begin(), family.infinite_families.end(),
            [&](const PathGenerator& a, const PathGenerator& b) { return generator_order(g, a, b); });
  return family;
}

ContractedGraph contract(const Graph& g, const VertexSet& g0, const ContractOptions& options) {
  require_compatible(g, g0);
  if (options.mode == ContractMode::Checked) {
    ContractionVerdict verdict = check_theorem(g, g0);
    if (!verdict.pass) {
      std::string summary = verdict_summary(verdict);
      throw ConditionsFailed(std::move(verdict), "G0 does not satisfy the contraction conditions: " + summary);
    }
  }
  Plan plan = plan_for(g, g0);
  Condensation c(g, g0, plan.min_explicit);
  require_acyclic(c);
  collect_sources(c, plan);

  const std::vector<Row> rows = rows_parallel(c, plan.sources, options.parallel);
  ContractedGraph result{assemble(g, g0, c, plan, rows), options.mode, {}};

  if (options.provenance) {
    for (std::size_t i = 0; i < plan.sources.size(); ++i) {
      const std::uint32_t s = plan.sources[i];
      const VertexRef at = c.entry_vertex(s);
      RouteWalker walker(c, options.max_generators * 64);
      walker.walk_from(s, at);
      std::map<std::uint32_t, ProvenanceEntry> by_target;
      for (auto& gen : walker.generators()) {
        const std::uint32_t t = c.node_of(gen.range());
        if (is_own_spine(c, s, gen)) continue;
        auto [it, fresh] = by_target.try_emplace(t);
        ProvenanceEntry& entry = it->second;
        if (fresh) {
          entry.source = g.name(at);
          entry.target = g.name(c.entry_vertex(t));
          entry.mult = rows[i].at(t);
          entry.truncated = walker.truncated();
        }
        if (entry.generators.size() < options.max_generators) {
          entry.generators.push_back(std::move(gen));
        } else {
          entry.truncated = true;
        }
      }
      for (auto& [t, entry] : by_target) {
        std::sort(entry.generators.begin(), entry.generators.end(),
                  [&](const PathGenerator& a, const PathGenerator& b) { return generator_order(g, a, b); });
        result.provenance.push_back(std::move(entry));
      }
    }
  }
  return result;
}

Graph contract_reference(const Graph& g, const VertexSet& g0) {
  require_compatible(g, g0);
  Plan plan = plan_for(g, g0);
  Condensation c(g, g0, plan.min_explicit);
  require_acyclic(c);
  collect_sources(c, plan);
  std::vector<Row> rows(plan.sources.size());
  for (std::size_t i = 0; i < plan.sources.size(); ++i) {
    RouteWalker walker(c, static_cast<std::size_t>(-1));
    walker.walk_from(plan.sources[i], c.entry_vertex(plan.sources[i]));
    for (const auto& gen : walker.generators()) {
      if (is_own_spine(c, plan.sources[i], gen)) continue;
      rows[i][c.node_of(gen.range())] += gen.count();
    }
  }
  return assemble(g, g0, c, plan, rows);
}

std::vector<Path> ck_expand(const Graph& g, const VertexSet& g0, VertexRef v) {
  const PathFamily family = enumerate_Bv(g, g0, v);
  if (family.empty()) throw Error(ErrorCode::BvEmpty, "B_v is empty for " + g.name(v));
  if (family.cardinality.is_infinite()) throw Error(ErrorCode::BvInfinite, "B_v is infinite for " + g.name(v));
  const std::uint64_t bound = family.max_length->count();

  std::vector<Path> leaves{Path{v, {}}};
  for (std::uint64_t round = 0;; ++round) {
    std::vector<Path> next;
    bool changed = false;
    for (auto& leaf : leaves) {
      const VertexRef at = leaf.range();
      if (leaf.length() > 0 && g0.contains(at)) {
        next.push_back(std::move(leaf));
        continue;
      }
      changed = true;
      auto outs = g.out_edges(at);
      if (outs.empty()) throw Error(ErrorCode::StuckAtSingularity, "expansion reached " + g.name(at) + ", which emits nothing");
      for (const auto& inc : outs) {
        if (inc.mult.is_infinite()) throw Error(ErrorCode::BvInfinite, g.name(at) + " emits infinitely many edges");
        for (std::uint64_t s = 0; s < inc.mult.count(); ++s) {
          Path p = leaf;
          p.steps.push_back({inc.other, s});
          next.push_back(std::move(p));
        }
      }
    }
    leaves = std::move(next);
    if (!changed) break;
    if (round + 1 > bound) throw Error(ErrorCode::Nonterminating, "expansion of " + g.name(v) + " exceeded N(v) rounds");
  }
  std::sort(leaves.begin(), leaves.end(), [&](const Path& a, const Path& b) { return path_order(g, a, b); });
  return leaves;
}

}  // namespace contractible
