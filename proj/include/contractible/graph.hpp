#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "contractible/multiplicity.hpp"

namespace contractible {

// A vertex of a graph: either a core vertex (by index into the sorted core
// list) or spine position x_k of a ray.
struct VertexRef {
  enum class Kind : std::uint8_t { Core, Ray };

  Kind kind = Kind::Core;
  std::uint32_t index = 0;
  std::uint64_t position = 0;

  static constexpr VertexRef core(std::uint32_t i) noexcept { return {Kind::Core, i, 0}; }
  static constexpr VertexRef ray(std::uint32_t r, std::uint64_t pos) noexcept { return {Kind::Ray, r, pos}; }

  constexpr bool is_core() const noexcept { return kind == Kind::Core; }
  constexpr bool is_ray() const noexcept { return kind == Kind::Ray; }

  friend constexpr auto operator<=>(const VertexRef&, const VertexRef&) = default;
};

struct CoreEdge {
  std::uint32_t source = 0;
  std::uint32_t target = 0;
  Multiplicity mult{1};

  friend bool operator==(const CoreEdge&, const CoreEdge&) = default;
};

// One entry of a ray position's target multiset. Ray positions only emit
// finitely many edges, so the count is a plain integer.
struct RayTarget {
  std::uint32_t vertex = 0;
  std::uint64_t mult = 1;

  friend bool operator==(const RayTarget&, const RayTarget&) = default;
};

using TargetBag = std::vector<RayTarget>;

struct RayEntry {
  std::uint32_t source = 0;
  Multiplicity mult{1};

  friend bool operator==(const RayEntry&, const RayEntry&) = default;
};

// Eventually periodic infinite path x_0 → x_1 → ... attached to the core.
// Position i emits the spine edge x_i → x_{i+1} plus targets_at(i); only x_0
// receives edges from outside the spine.
struct Ray {
  std::string id;
  std::vector<RayEntry> entry;
  std::vector<TargetBag> prefix;
  std::vector<TargetBag> cycle;

  std::uint64_t prefix_length() const noexcept { return prefix.size(); }
  std::uint64_t period() const noexcept { return cycle.size(); }
  const TargetBag& targets_at(std::uint64_t position) const;
  Multiplicity entry_multiplicity() const;

  friend bool operator==(const Ray&, const Ray&) = default;
};

// ---- textual description, the input of build_graph ----

struct EdgeSpec {
  std::string source;
  std::string target;
  Multiplicity mult{1};
};

struct TargetSpec {
  std::string target;
  Multiplicity mult{1};
};

struct EntrySpec {
  std::string source;
  Multiplicity mult{1};
};

struct RaySpec {
  std::string id;
  std::vector<EntrySpec> entry;
  std::vector<std::vector<TargetSpec>> prefix;
  std::vector<std::vector<TargetSpec>> cycle;
};

struct GraphDescription {
  std::vector<std::string> vertices;
  std::vector<EdgeSpec> edges;
  std::vector<RaySpec> rays;
};

// An edge incident to a vertex, seen from one end. `periodic` marks the
// aggregated in-edges a core vertex receives from the repeating part of a
// ray (one per period, hence multiplicity ω); `other` is then the first
// such position.
struct Incidence {
  VertexRef other;
  Multiplicity mult{1};
  bool periodic = false;
};

// Finite-core directed multigraph with ω multiplicities and attached rays.
// Immutable once built: core vertices and rays are kept sorted by id and
// parallel edges are merged, so operator== is canonical-form equality.
class Graph {
 public:
  Graph() = default;

  std::size_t core_size() const noexcept { return vertices_.size(); }
  std::size_t ray_count() const noexcept { return rays_.size(); }
  bool has_rays() const noexcept { return !rays_.empty(); }

  const std::vector<std::string>& vertices() const noexcept { return vertices_; }
  const std::vector<CoreEdge>& edges() const noexcept { return edges_; }
  const std::vector<Ray>& rays() const noexcept { return rays_; }
  const Ray& ray(std::uint32_t r) const { return rays_.at(r); }

  std::optional<std::uint32_t> find_core(std::string_view id) const;
  std::optional<std::uint32_t> find_ray(std::string_view id) const;

  // Core id, or "<ray>.x<k>" for ray positions.
  std::optional<VertexRef> resolve(std::string_view name) const;
  std::string name(VertexRef v) const;

  // Out-edges in canonical order: for a core vertex its core edges by target
  // then ray entries by ray; for a ray position the spine edge first, then
  // its targets.
  std::vector<Incidence> out_edges(VertexRef v) const;
  std::vector<Incidence> in_edges(VertexRef v) const;
  Multiplicity out_degree(VertexRef v) const;
  Multiplicity in_degree(VertexRef v) const;

  // Ray entries leaving core vertex u, as (ray index, multiplicity).
  const std::vector<std::pair<std::uint32_t, Multiplicity>>& entries_from(std::uint32_t u) const {
    return entries_from_.at(u);
  }
  const std::vector<std::uint32_t>& core_out(std::uint32_t u) const { return core_out_.at(u); }
  const std::vector<std::uint32_t>& core_in(std::uint32_t u) const { return core_in_.at(u); }

  bool is_row_finite() const;
  // Total number of edges counted with multiplicity; ω if any ω edge or any
  // ray is present.
  Multiplicity edge_count() const;

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.vertices_ == b.vertices_ && a.edges_ == b.edges_ && a.rays_ == b.rays_;
  }

 private:
  friend Graph build_graph(const GraphDescription& description);
  void index();

  std::vector<std::string> vertices_;
  std::vector<CoreEdge> edges_;
  std::vector<Ray> rays_;
  // Derived adjacency: edge indices into edges_.
  std::vector<std::vector<std::uint32_t>> core_out_;
  std::vector<std::vector<std::uint32_t>> core_in_;
  std::vector<std::vector<std::pair<std::uint32_t, Multiplicity>>> entries_from_;
};

// Validates and canonicalizes. Core edges may name "<ray>.x0" as target,
// which is folded into that ray's entry edges.
// Errors: DUPLICATE_ID, DANGLING_ENDPOINT, ZERO_MULTIPLICITY, EMPTY_CYCLE,
// INVALID_RAY_TARGET (ω inside a ray), INVALID_RAY_EDGE (edge at a ray
// position other than as target x0).
Graph build_graph(const GraphDescription& description);

// Canonical description; build_graph(describe(g)) == g.
GraphDescription describe(const Graph& g);

// Parses "<ray>.x<k>" against known ray ids; returns (ray id, k).
std::optional<std::pair<std::string, std::uint64_t>> split_ray_position(std::string_view name);

}  // namespace contractible
