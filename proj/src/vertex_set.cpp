#include "contractible/vertex_set.hpp"

#include <algorithm>

#include "contractible/error.hpp"

namespace contractible {

VertexSet VertexSet::full(const Graph& g) {
  VertexSet s(g);
  std::fill(s.core_.begin(), s.core_.end(), true);
  for (auto& r : s.rays_) r = 0;
  return s;
}

VertexSet VertexSet::core_only(const Graph& g, std::span<const std::uint32_t> members) {
  VertexSet s(g);
  for (auto u : members) s.core_.at(u) = true;
  return s;
}

VertexSet VertexSet::from_names(const Graph& g, std::span<const std::string> names) {
  VertexSet s(g);
  for (const auto& name : names) {
    if (auto c = g.find_core(name)) {
      s.core_[*c] = true;
      continue;
    }
    if (!name.empty() && name.back() == '+') {
      auto ref = g.resolve(std::string_view(name).substr(0, name.size() - 1));
      if (ref && ref->is_ray()) {
        s.insert_ray_suffix(ref->index, ref->position);
        continue;
      }
    }
    if (auto ref = g.resolve(name); ref && ref->is_ray())
      throw Error(ErrorCode::UnknownVertex,
                  "'" + name + "' is a single ray position; write '" + name + "+' for the ray from there on");
    throw Error(ErrorCode::UnknownVertex, "unknown vertex '" + name + "'");
  }
  return s;
}

bool VertexSet::contains(VertexRef v) const {
  if (v.is_core()) return core_.at(v.index);
  const auto& state = rays_.at(v.index);
  return state && v.position >= *state;
}

void VertexSet::insert_ray_suffix(std::uint32_t r, std::uint64_t pos) {
  auto& state = rays_.at(r);
  if (!state || pos < *state) state = pos;
}

std::size_t VertexSet::core_count() const {
  return static_cast<std::size_t>(std::count(core_.begin(), core_.end(), true));
}

bool VertexSet::empty() const {
  return core_count() == 0 && std::none_of(rays_.begin(), rays_.end(), [](const auto& r) { return r.has_value(); });
}

bool VertexSet::is_full() const {
  return core_count() == core_.size() &&
         std::all_of(rays_.begin(), rays_.end(), [](const auto& r) { return r && *r == 0; });
}

bool VertexSet::includes_core(const VertexSet& other) const {
  for (std::size_t i = 0; i < core_.size(); ++i)
    if (other.core_[i] && !core_[i]) return false;
  return true;
}

bool VertexSet::includes(const VertexSet& other) const {
  if (!includes_core(other)) return false;
  for (std::size_t r = 0; r < rays_.size(); ++r) {
    if (!other.rays_[r]) continue;
    if (!rays_[r] || *rays_[r] > *other.rays_[r]) return false;
  }
  return true;
}

VertexSet VertexSet::unite(const VertexSet& other) const {
  VertexSet out = *this;
  for (std::size_t i = 0; i < core_.size(); ++i)
    if (other.core_[i]) out.core_[i] = true;
  for (std::size_t r = 0; r < rays_.size(); ++r)
    if (other.rays_[r]) out.insert_ray_suffix(static_cast<std::uint32_t>(r), *other.rays_[r]);
  return out;
}

VertexSet VertexSet::intersect(const VertexSet& other) const {
  VertexSet out = *this;
  for (std::size_t i = 0; i < core_.size(); ++i) out.core_[i] = core_[i] && other.core_[i];
  for (std::size_t r = 0; r < rays_.size(); ++r) {
    if (!rays_[r] || !other.rays_[r])
      out.rays_[r].reset();
    else
      out.rays_[r] = std::max(*rays_[r], *other.rays_[r]);
  }
  return out;
}

std::vector<std::string> VertexSet::names(const Graph& g) const {
  std::vector<std::string> out;
  for (std::uint32_t i = 0; i < core_.size(); ++i)
    if (core_[i]) out.push_back(g.vertices()[i]);
  for (std::uint32_t r = 0; r < rays_.size(); ++r)
    if (rays_[r]) out.push_back(g.name(VertexRef::ray(r, *rays_[r])) + "+");
  return out;
}

std::string VertexSet::to_string(const Graph& g) const {
  std::string out = "{";
  bool first = true;
  for (const auto& n : names(g)) {
    if (!first) out += ", ";
    out += n;
    first = false;
  }
  return out + "}";
}

bool canonical_less(const VertexSet& a, const VertexSet& b) {
  auto ca = a.core_count(), cb = b.core_count();
  if (ca != cb) return ca < cb;
  for (std::size_t i = 0; i < a.core_.size(); ++i)
    if (a.core_[i] != b.core_[i]) return a.core_[i];  // earlier member sorts first
  for (std::size_t r = 0; r < a.rays_.size(); ++r) {
    const auto& x = a.rays_[r];
    const auto& y = b.rays_[r];
    if (x == y) continue;
    if (!x) return true;
    if (!y) return false;
    return *x > *y;  // smaller rays (later start) first
  }
  return false;
}

}  // namespace contractible
