#include "contractible/path.hpp"

namespace contractible {

bool Path::is_prefix_of(const Path& other) const {
  if (source != other.source || steps.size() > other.steps.size()) return false;
  for (std::size_t i = 0; i < steps.size(); ++i)
    if (steps[i] != other.steps[i]) return false;
  return true;
}

std::string format_path(const Graph& g, const Path& p) {
  std::string out = g.name(p.source);
  for (const auto& s : p.steps) {
    out += s.slot == 0 ? " -> " : " -[" + std::to_string(s.slot) + "]-> ";
    out += g.name(s.target);
  }
  return out;
}

Multiplicity edge_multiplicity(const Graph& g, VertexRef u, VertexRef w) {
  if (u.is_core() && u.index >= g.core_size()) return 0;
  if (u.is_ray() && u.index >= g.ray_count()) return 0;
  for (const auto& e : g.out_edges(u))
    if (e.other == w) return e.mult;
  return 0;
}

bool path_exists(const Graph& g, const Path& p) {
  VertexRef at = p.source;
  if (at.is_core() ? at.index >= g.core_size() : at.index >= g.ray_count()) return false;
  for (const auto& s : p.steps) {
    Multiplicity m = edge_multiplicity(g, at, s.target);
    if (m.is_zero()) return false;
    if (m.is_finite() && s.slot >= m.count()) return false;
    at = s.target;
  }
  return true;
}

}  // namespace contractible
