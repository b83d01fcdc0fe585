#include "contractible/detail/condensation.hpp"

#include <algorithm>
#include <stdexcept>

namespace contractible::detail {

Condensation::Condensation(const Graph& g, const VertexSet& set, std::span<const std::uint64_t> min_explicit)
    : graph_(&g) {
  const auto n = static_cast<std::uint32_t>(g.core_size());
  for (std::uint32_t u = 0; u < n; ++u) nodes_.push_back({CNode::Kind::Core, u, 0, set.contains_core(u)});

  depth_.resize(g.ray_count());
  ray_base_.resize(g.ray_count());
  for (std::uint32_t r = 0; r < g.ray_count(); ++r) {
    const Ray& ray = g.ray(r);
    std::uint64_t m = ray.prefix_length();
    if (auto from = set.ray_from(r)) m = std::max(m, *from);
    if (r < min_explicit.size()) m = std::max(m, min_explicit[r]);
    depth_[r] = m;
    ray_base_[r] = static_cast<std::uint32_t>(nodes_.size());
    for (std::uint64_t k = 0; k < m; ++k)
      nodes_.push_back({CNode::Kind::Position, r, k, set.contains(VertexRef::ray(r, k))});
    nodes_.push_back({CNode::Kind::Suffix, r, m, set.contains(VertexRef::ray(r, m))});
  }

  out_.resize(nodes_.size());
  for (std::uint32_t u = 0; u < n; ++u) {
    for (auto e : g.core_out(u)) out_[u].push_back({g.edges()[e].target, g.edges()[e].mult, false, 0});
    for (const auto& [r, m] : g.entries_from(u)) out_[u].push_back({ray_base_[r], m, false, 0});
  }
  for (std::uint32_t r = 0; r < g.ray_count(); ++r) {
    const Ray& ray = g.ray(r);
    const std::uint64_t m = depth_[r];
    for (std::uint64_t k = 0; k < m; ++k) {
      auto id = static_cast<std::uint32_t>(ray_base_[r] + k);
      out_[id].push_back({id + 1, Multiplicity(1), false, k});
      for (const auto& t : ray.targets_at(k)) out_[id].push_back({t.vertex, Multiplicity(t.mult), false, k});
    }
    auto suffix = static_cast<std::uint32_t>(ray_base_[r] + m);
    for (std::uint64_t i = 0; i < ray.period(); ++i)
      for (const auto& t : ray.targets_at(m + i)) out_[suffix].push_back({t.vertex, Multiplicity(t.mult), true, m + i});
  }
}

std::uint32_t Condensation::node_of(VertexRef v) const {
  if (v.is_core()) return v.index;
  const std::uint64_t m = depth_.at(v.index);
  return static_cast<std::uint32_t>(ray_base_[v.index] + std::min(v.position, m));
}

VertexRef Condensation::entry_vertex(std::uint32_t n) const {
  const CNode& node = nodes_[n];
  if (node.kind == CNode::Kind::Core) return VertexRef::core(node.index);
  return VertexRef::ray(node.index, node.position);
}

void Condensation::append_edge(Path& path, std::uint32_t from, const CEdge& e, std::uint64_t slot,
                               std::uint64_t extra_periods) const {
  const CNode& src = nodes_[from];
  const CNode& dst = nodes_[e.to];
  if (src.kind == CNode::Kind::Suffix) {
    const VertexRef at = path.range();
    if (!at.is_ray() || at.index != src.index || at.position < src.position)
      throw std::logic_error("condensation walk is not inside the suffix it leaves");
    const std::uint64_t period = graph_->ray(src.index).period();
    std::uint64_t exit = e.exit_position;
    if (at.position > exit) exit += ((at.position - exit + period - 1) / period) * period;
    exit += extra_periods * period;
    for (std::uint64_t p = at.position + 1; p <= exit; ++p) path.steps.push_back({VertexRef::ray(src.index, p), 0});
    path.steps.push_back({VertexRef::core(dst.index), slot});
    return;
  }
  if (dst.kind == CNode::Kind::Core) {
    path.steps.push_back({VertexRef::core(dst.index), slot});
    return;
  }
  if (src.kind == CNode::Kind::Core) {
    path.steps.push_back({VertexRef::ray(dst.index, 0), slot});
    return;
  }
  // spine edge out of an explicit position
  path.steps.push_back({VertexRef::ray(src.index, src.position + 1), 0});
}

}  // namespace contractible::detail
