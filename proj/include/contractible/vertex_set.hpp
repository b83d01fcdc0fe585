#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "contractible/graph.hpp"

namespace contractible {

// A set of vertices of a particular graph. Core membership is explicit; on
// each ray the set holds either nothing or every position from some k on
// (ALL_FROM(k)). These are exactly the shapes hereditary and saturated
// closures produce.
class VertexSet {
 public:
  VertexSet() = default;
  explicit VertexSet(const Graph& g) : core_(g.core_size(), false), rays_(g.ray_count()) {}

  static VertexSet full(const Graph& g);
  static VertexSet core_only(const Graph& g, std::span<const std::uint32_t> members);
  // Names are core ids or "<ray>.x<k>+" (ALL_FROM(k)). UNKNOWN_VERTEX on a
  // name that does not resolve.
  static VertexSet from_names(const Graph& g, std::span<const std::string> names);

  bool contains(VertexRef v) const;
  bool contains_core(std::uint32_t u) const { return core_[u]; }
  std::optional<std::uint64_t> ray_from(std::uint32_t r) const { return rays_[r]; }

  void insert_core(std::uint32_t u) { core_[u] = true; }
  void erase_core(std::uint32_t u) { core_[u] = false; }
  void set_ray_from(std::uint32_t r, std::optional<std::uint64_t> from) { rays_[r] = from; }
  // Adds position `pos` and everything after it on ray r.
  void insert_ray_suffix(std::uint32_t r, std::uint64_t pos);

  std::size_t core_capacity() const noexcept { return core_.size(); }
  std::size_t ray_capacity() const noexcept { return rays_.size(); }
  std::size_t core_count() const;
  bool empty() const;
  bool is_full() const;
  bool includes(const VertexSet& other) const;
  bool includes_core(const VertexSet& other) const;

  VertexSet unite(const VertexSet& other) const;
  VertexSet intersect(const VertexSet& other) const;

  // Canonical listing: sorted core ids then "<ray>.x<k>+" entries.
  std::vector<std::string> names(const Graph& g) const;
  std::string to_string(const Graph& g) const;

  friend bool operator==(const VertexSet&, const VertexSet&) = default;
  // Canonical order: by core count, then core bit pattern, then ray states.
  friend bool canonical_less(const VertexSet& a, const VertexSet& b);

 private:
  std::vector<bool> core_;
  std::vector<std::optional<std::uint64_t>> rays_;
};

bool canonical_less(const VertexSet& a, const VertexSet& b);

}  // namespace contractible
