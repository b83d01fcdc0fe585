#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "contractible/graph.hpp"
#include "contractible/path.hpp"
#include "contractible/vertex_set.hpp"

namespace contractible {

// Sinks (nothing emitted) and infinite emitters (ω emitted). Ray positions
// always emit their spine edge plus finitely many targets, so only core
// vertices can be singular.
std::vector<VertexRef> singularities(const Graph& g);
bool is_singular(const Graph& g, VertexRef v);

// Everything reachable from `from` by paths of length >= 0.
VertexSet hereditary_closure(const Graph& g, const VertexSet& from);

bool reaches(const Graph& g, const VertexSet& from, VertexRef to);

// Simple cycles inside `restrict_to`, each reported once starting at its
// smallest core vertex. A cycle may run through a stretch of a ray (entering
// at x_0, leaving through a target). Cycles leaving a ray from its periodic
// part are listed for one period only: a longer exit repeats the same
// targets one period earlier, so the list is empty iff the induced subgraph
// is acyclic.
std::vector<Path> simple_cycles(const Graph& g, const VertexSet& restrict_to);

// A maximal tail: an optional chain of core vertices (head first) followed
// by ray `ray` from position `start_position` on.
struct TailWitness {
  std::vector<std::uint32_t> core_chain;
  std::uint32_t ray = 0;
  std::uint64_t start_position = 0;

  VertexRef head() const {
    return core_chain.empty() ? VertexRef::ray(ray, start_position) : VertexRef::core(core_chain.front());
  }
  friend bool operator==(const TailWitness&, const TailWitness&) = default;
};

std::vector<TailWitness> detect_tails(const Graph& g);
std::string format_tail(const Graph& g, const TailWitness& t);

// Cuts every ray after spine position `depth`. Positions become core vertices
// named "<ray>.x<k>"; the last one keeps its targets but loses its spine edge.
Graph materialize(const Graph& g, std::uint64_t depth);

}  // namespace contractible
