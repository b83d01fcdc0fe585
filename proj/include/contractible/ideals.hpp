#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "contractible/graph.hpp"
#include "contractible/vertex_set.hpp"

namespace contractible {

// ΣH(X): everything reachable from X, then every vertex with finitely many
// (and some) out-edges all landing inside, repeated to a fixpoint. A ray
// state ALL_FROM(k) is pulled back while the bag at k-1 lies inside; a ray
// the set does not meet is never added by saturation (there is no position
// to start the backward induction from).
// Errors: UNKNOWN_VERTEX.
VertexSet closure_SH(const Graph& g, const VertexSet& x);

bool is_hereditary(const Graph& g, const VertexSet& h);
bool is_saturated(const Graph& g, const VertexSet& h);

// E⁰ ⊆ ΣH(G⁰).
bool check_fullness(const Graph& g, const VertexSet& g0);

struct SHFamily {
  std::vector<VertexSet> members;  // canonical order
  std::size_t nontrivial_count = 0;
};

struct SHOptions {
  std::size_t max_core = 20;
  bool parallel = true;
};

// All saturated hereditary subsets. Per core subset S each ray is either
// missed entirely or held from the least position after which every target
// lies in S.
// Errors: TOO_LARGE when the core exceeds options.max_core (or 30 absolutely).
SHFamily enumerate_SH(const Graph& g, const SHOptions& options = {});

// Covering pairs (i, j): members[i] ⊊ members[j] with nothing in between.
std::vector<std::pair<std::size_t, std::size_t>> hasse_covers(const SHFamily& family);

}  // namespace contractible
