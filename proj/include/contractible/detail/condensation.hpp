#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "contractible/graph.hpp"
#include "contractible/path.hpp"
#include "contractible/vertex_set.hpp"

namespace contractible::detail {

// Finite stand-in for a ray-presentable graph relative to a vertex set S.
// Nodes: every core vertex; for each ray the positions x_0..x_{m-1}
// explicitly; one suffix node for all positions >= m. m is at least the
// prefix length and at least the start of S on that ray, so S membership is
// uniform across a suffix node and suffix targets are purely periodic.
//
// A suffix node has no self-loop: walking its spine is an infinite acyclic
// path, not a cycle. Its exits are `periodic` edges (one per cycle bag
// entry) that recur every period positions.
struct CEdge {
  std::uint32_t to = 0;
  Multiplicity mult{1};
  bool periodic = false;
  std::uint64_t exit_position = 0;

  // Number of distinct edges this condensed edge stands for.
  Multiplicity effective() const { return periodic ? mult * Multiplicity::omega() : mult; }
};

struct CNode {
  enum class Kind : std::uint8_t { Core, Position, Suffix };
  Kind kind = Kind::Core;
  std::uint32_t index = 0;      // core index or ray index
  std::uint64_t position = 0;   // Position: k; Suffix: m
  bool in_set = false;
};

class Condensation {
 public:
  Condensation(const Graph& g, const VertexSet& set, std::span<const std::uint64_t> min_explicit = {});

  const Graph& graph() const noexcept { return *graph_; }
  std::uint32_t size() const noexcept { return static_cast<std::uint32_t>(nodes_.size()); }
  const CNode& node(std::uint32_t n) const { return nodes_[n]; }
  const std::vector<CEdge>& out(std::uint32_t n) const { return out_[n]; }
  bool in_set(std::uint32_t n) const { return nodes_[n].in_set; }
  bool is_suffix(std::uint32_t n) const { return nodes_[n].kind == CNode::Kind::Suffix; }
  std::uint64_t explicit_depth(std::uint32_t ray) const { return depth_[ray]; }

  std::uint32_t node_of(VertexRef v) const;
  // The concrete vertex a walk is at when it enters node n.
  VertexRef entry_vertex(std::uint32_t n) const;

  // Extends `path`, currently ending inside node `from`, along condensed edge
  // `e` using parallel slot `slot`. For a periodic exit the walk runs the
  // spine to the first matching position at or after the current one, plus
  // `extra_periods` whole periods.
  void append_edge(Path& path, std::uint32_t from, const CEdge& e, std::uint64_t slot = 0,
                   std::uint64_t extra_periods = 0) const;

  // Node of x_0 on ray r.
  std::uint32_t first_ray_node(std::uint32_t ray) const { return ray_base_[ray]; }

 private:
  const Graph* graph_;
  std::vector<CNode> nodes_;
  std::vector<std::vector<CEdge>> out_;
  std::vector<std::uint64_t> depth_;
  std::vector<std::uint32_t> ray_base_;
};

// Strongly connected components (Tarjan). component[n] numbers components
// in reverse topological order (sinks first). Only nodes with keep(n) take
// part; others get component -1.
struct Components {
  std::vector<int> component;
  int count = 0;
};

template <class Keep>
Components strongly_connected(const Condensation& c, Keep keep);

}  // namespace contractible::detail

#include "contractible/detail/condensation_impl.hpp"
