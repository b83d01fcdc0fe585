#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "contractible/graph.hpp"

namespace contractible {

// One edge of a concrete path: where it lands, and which of the parallel
// edges between the two endpoints it is (0-based).
struct Step {
  VertexRef target;
  std::uint64_t slot = 0;

  friend constexpr auto operator<=>(const Step&, const Step&) = default;
};

// A finite path; a vertex alone is the path of length zero.
struct Path {
  VertexRef source;
  std::vector<Step> steps;

  std::size_t length() const noexcept { return steps.size(); }
  VertexRef range() const noexcept { return steps.empty() ? source : steps.back().target; }
  // Vertex visited after i edges (0 ⇒ source).
  VertexRef vertex_at(std::size_t i) const noexcept { return i == 0 ? source : steps[i - 1].target; }
  bool is_prefix_of(const Path& other) const;

  friend auto operator<=>(const Path&, const Path&) = default;
};

// "v -> t0 -> w"; a parallel edge other than the first shows as "-[k]->".
std::string format_path(const Graph& g, const Path& p);

// True iff every step is an existing edge and its slot is below that edge's
// multiplicity.
bool path_exists(const Graph& g, const Path& p);

// Multiplicity of the edge u → w (0 if absent).
Multiplicity edge_multiplicity(const Graph& g, VertexRef u, VertexRef w);

}  // namespace contractible
