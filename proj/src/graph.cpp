#include "contractible/graph.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "contractible/error.hpp"

namespace contractible {

const TargetBag& Ray::targets_at(std::uint64_t position) const {
  if (position < prefix.size()) return prefix[position];
  return cycle[(position - prefix.size()) % cycle.size()];
}

Multiplicity Ray::entry_multiplicity() const {
  Multiplicity total{0};
  for (const auto& e : entry) total += e.mult;
  return total;
}

std::optional<std::pair<std::string, std::uint64_t>> split_ray_position(std::string_view name) {
  auto dot = name.rfind(".x");
  if (dot == std::string_view::npos || dot == 0 || dot + 2 >= name.size()) return std::nullopt;
  auto digits = name.substr(dot + 2);
  if (digits.size() > 1 && digits.front() == '0') return std::nullopt;
  auto parsed = Multiplicity::parse(digits);
  if (!parsed || parsed->is_infinite()) return std::nullopt;
  return std::make_pair(std::string(name.substr(0, dot)), parsed->count());
}

std::optional<std::uint32_t> Graph::find_core(std::string_view id) const {
  auto it = std::lower_bound(vertices_.begin(), vertices_.end(), id,
                             [](const std::string& a, std::string_view b) { return a < b; });
  if (it == vertices_.end() || *it != id) return std::nullopt;
  return static_cast<std::uint32_t>(it - vertices_.begin());
}

std::optional<std::uint32_t> Graph::find_ray(std::string_view id) const {
  auto it = std::lower_bound(rays_.begin(), rays_.end(), id,
                             [](const Ray& a, std::string_view b) { return a.id < b; });
  if (it == rays_.end() || it->id != id) return std::nullopt;
  return static_cast<std::uint32_t>(it - rays_.begin());
}

std::optional<VertexRef> Graph::resolve(std::string_view name) const {
  if (auto c = find_core(name)) return VertexRef::core(*c);
  if (auto split = split_ray_position(name)) {
    if (auto r = find_ray(split->first)) return VertexRef::ray(*r, split->second);
  }
  return std::nullopt;
}

std::string Graph::name(VertexRef v) const {
  if (v.is_core()) return vertices_.at(v.index);
  return rays_.at(v.index).id + ".x" + std::to_string(v.position);
}

std::vector<Incidence> Graph::out_edges(VertexRef v) const {
  std::vector<Incidence> out;
  if (v.is_core()) {
    for (auto e : core_out_.at(v.index)) out.push_back({VertexRef::core(edges_[e].target), edges_[e].mult, false});
    for (const auto& [r, m] : entries_from_.at(v.index)) out.push_back({VertexRef::ray(r, 0), m, false});
  } else {
    const Ray& ray = rays_.at(v.index);
    out.push_back({VertexRef::ray(v.index, v.position + 1), Multiplicity(1), false});
    for (const auto& t : ray.targets_at(v.position)) out.push_back({VertexRef::core(t.vertex), t.mult, false});
  }
  return out;
}

std::vector<Incidence> Graph::in_edges(VertexRef v) const {
  std::vector<Incidence> in;
  if (v.is_core()) {
    for (auto e : core_in_.at(v.index)) in.push_back({VertexRef::core(edges_[e].source), edges_[e].mult, false});
    for (std::uint32_t r = 0; r < rays_.size(); ++r) {
      const Ray& ray = rays_[r];
      for (std::uint64_t p = 0; p < ray.prefix.size(); ++p)
        for (const auto& t : ray.prefix[p])
          if (t.vertex == v.index) in.push_back({VertexRef::ray(r, p), t.mult, false});
      for (std::uint64_t c = 0; c < ray.cycle.size(); ++c)
        for (const auto& t : ray.cycle[c])
          if (t.vertex == v.index)
            in.push_back({VertexRef::ray(r, ray.prefix.size() + c), Multiplicity::omega(), true});
    }
  } else if (v.position == 0) {
    for (const auto& e : rays_.at(v.index).entry) in.push_back({VertexRef::core(e.source), e.mult, false});
  } else {
    in.push_back({VertexRef::ray(v.index, v.position - 1), Multiplicity(1), false});
  }
  return in;
}

Multiplicity Graph::out_degree(VertexRef v) const {
  Multiplicity total{0};
  for (const auto& e : out_edges(v)) total += e.mult;
  return total;
}

Multiplicity Graph::in_degree(VertexRef v) const {
  Multiplicity total{0};
  for (const auto& e : in_edges(v)) total += e.mult;
  return total;
}

bool Graph::is_row_finite() const {
  for (std::uint32_t u = 0; u < vertices_.size(); ++u)
    if (out_degree(VertexRef::core(u)).is_infinite()) return false;
  return true;
}

Multiplicity Graph::edge_count() const {
  if (!rays_.empty()) return Multiplicity::omega();
  Multiplicity total{0};
  for (const auto& e : edges_) total += e.mult;
  return total;
}

void Graph::index() {
  core_out_.assign(vertices_.size(), {});
  core_in_.assign(vertices_.size(), {});
  entries_from_.assign(vertices_.size(), {});
  for (std::uint32_t i = 0; i < edges_.size(); ++i) {
    core_out_[edges_[i].source].push_back(i);
    core_in_[edges_[i].target].push_back(i);
  }
  for (std::uint32_t r = 0; r < rays_.size(); ++r)
    for (const auto& e : rays_[r].entry) entries_from_[e.source].emplace_back(r, e.mult);
}

namespace {

TargetBag build_bag(const std::vector<TargetSpec>& specs, const std::vector<std::string>& vertices,
                    const std::string& where) {
  std::map<std::uint32_t, std::uint64_t> merged;
  for (const auto& t : specs) {
    auto it = std::lower_bound(vertices.begin(), vertices.end(), t.target);
    if (it == vertices.end() || *it != t.target)
      throw Error(ErrorCode::DanglingEndpoint, where + " targets unknown core vertex '" + t.target + "'");
    if (t.mult.is_infinite())
      throw Error(ErrorCode::InvalidRayTarget, where + " emits infinitely many edges to '" + t.target + "'");
    if (t.mult.is_zero())
      throw Error(ErrorCode::ZeroMultiplicity, where + " target '" + t.target + "' has multiplicity 0");
    auto idx = static_cast<std::uint32_t>(it - vertices.begin());
    merged[idx] = (Multiplicity(merged[idx]) + t.mult).count();
  }
  TargetBag bag;
  for (const auto& [v, m] : merged) bag.push_back({v, m});
  return bag;
}

}  // namespace

Graph build_graph(const GraphDescription& description) {
  Graph g;
  g.vertices_ = description.vertices;
  std::sort(g.vertices_.begin(), g.vertices_.end());
  for (std::size_t i = 0; i < g.vertices_.size(); ++i) {
    if (g.vertices_[i].empty()) throw Error(ErrorCode::DuplicateId, "empty vertex id");
    if (i > 0 && g.vertices_[i] == g.vertices_[i - 1])
      throw Error(ErrorCode::DuplicateId, "vertex '" + g.vertices_[i] + "' declared twice");
  }

  std::set<std::string> ray_ids;
  for (const auto& r : description.rays) {
    if (r.id.empty()) throw Error(ErrorCode::DuplicateId, "empty ray id");
    if (!ray_ids.insert(r.id).second) throw Error(ErrorCode::DuplicateId, "ray '" + r.id + "' declared twice");
    if (std::binary_search(g.vertices_.begin(), g.vertices_.end(), r.id))
      throw Error(ErrorCode::DuplicateId, "ray id '" + r.id + "' collides with a core vertex");
  }
  for (const auto& v : g.vertices_) {
    if (auto split = split_ray_position(v); split && ray_ids.count(split->first))
      throw Error(ErrorCode::DuplicateId, "core vertex '" + v + "' collides with a ray position name");
  }

  auto core_index = [&](const std::string& id) -> std::optional<std::uint32_t> {
    auto it = std::lower_bound(g.vertices_.begin(), g.vertices_.end(), id);
    if (it == g.vertices_.end() || *it != id) return std::nullopt;
    return static_cast<std::uint32_t>(it - g.vertices_.begin());
  };

  std::map<std::string, std::vector<EntrySpec>> entries;
  for (const auto& r : description.rays) entries[r.id] = r.entry;

  std::map<std::pair<std::uint32_t, std::uint32_t>, Multiplicity> merged;
  for (const auto& e : description.edges) {
    const std::string label = "edge " + e.source + " -> " + e.target;
    if (e.mult.is_zero()) throw Error(ErrorCode::ZeroMultiplicity, label + " has multiplicity 0");
    auto s = core_index(e.source);
    if (!s) {
      auto split = split_ray_position(e.source);
      if (split && ray_ids.count(split->first))
        throw Error(ErrorCode::InvalidRayEdge, label + ": ray positions emit only through prefix/cycle targets");
      throw Error(ErrorCode::DanglingEndpoint, label + ": unknown source '" + e.source + "'");
    }
    if (auto t = core_index(e.target)) {
      auto& slot = merged[{*s, *t}];
      slot += e.mult;
      continue;
    }
    auto split = split_ray_position(e.target);
    if (split && ray_ids.count(split->first)) {
      if (split->second != 0)
        throw Error(ErrorCode::InvalidRayEdge, label + ": rays receive edges only at x0");
      entries[split->first].push_back({e.source, e.mult});
      continue;
    }
    throw Error(ErrorCode::DanglingEndpoint, label + ": unknown target '" + e.target + "'");
  }
  for (const auto& [key, m] : merged) g.edges_.push_back({key.first, key.second, m});

  for (const auto& spec : description.rays) {
    Ray ray;
    ray.id = spec.id;
    if (spec.cycle.empty()) throw Error(ErrorCode::EmptyCycle, "ray '" + spec.id + "' has an empty cycle");
    std::map<std::uint32_t, Multiplicity> merged_entry;
    for (const auto& e : entries[spec.id]) {
      auto s = core_index(e.source);
      if (!s)
        throw Error(ErrorCode::DanglingEndpoint, "ray '" + spec.id + "' entry from unknown vertex '" + e.source + "'");
      if (e.mult.is_zero())
        throw Error(ErrorCode::ZeroMultiplicity, "ray '" + spec.id + "' entry from '" + e.source + "' has multiplicity 0");
      merged_entry[*s] += e.mult;
    }
    for (const auto& [s, m] : merged_entry) ray.entry.push_back({s, m});
    for (std::size_t i = 0; i < spec.prefix.size(); ++i)
      ray.prefix.push_back(build_bag(spec.prefix[i], g.vertices_, spec.id + ".x" + std::to_string(i)));
    for (std::size_t i = 0; i < spec.cycle.size(); ++i)
      ray.cycle.push_back(build_bag(spec.cycle[i], g.vertices_, "ray '" + spec.id + "' cycle[" + std::to_string(i) + "]"));
    g.rays_.push_back(std::move(ray));
  }
  std::sort(g.rays_.begin(), g.rays_.end(), [](const Ray& a, const Ray& b) { return a.id < b.id; });
  g.index();
  return g;
}

GraphDescription describe(const Graph& g) {
  GraphDescription d;
  d.vertices = g.vertices();
  for (const auto& e : g.edges()) d.edges.push_back({g.vertices()[e.source], g.vertices()[e.target], e.mult});
  auto bag_spec = [&](const TargetBag& bag) {
    std::vector<TargetSpec> out;
    for (const auto& t : bag) out.push_back({g.vertices()[t.vertex], Multiplicity(t.mult)});
    return out;
  };
  for (const auto& r : g.rays()) {
    RaySpec spec;
    spec.id = r.id;
    for (const auto& e : r.entry) spec.entry.push_back({g.vertices()[e.source], e.mult});
    for (const auto& bag : r.prefix) spec.prefix.push_back(bag_spec(bag));
    for (const auto& bag : r.cycle) spec.cycle.push_back(bag_spec(bag));
    d.rays.push_back(std::move(spec));
  }
  return d;
}

}  // namespace contractible
