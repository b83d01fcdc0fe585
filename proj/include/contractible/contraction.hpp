#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "contractible/conditions.hpp"
#include "contractible/graph.hpp"
#include "contractible/path.hpp"
#include "contractible/vertex_set.hpp"

namespace contractible {

// One move of a path generator. An Edge hop picks one of `count` parallel
// edges to `target`. A Run hop stays on the current ray's spine up to
// position target.position + n·period for any n >= 0 (count is ω).
struct Hop {
  enum class Kind : std::uint8_t { Edge, Run };
  Kind kind = Kind::Edge;
  VertexRef target;
  Multiplicity count{1};
  std::uint64_t period = 0;

  friend bool operator==(const Hop&, const Hop&) = default;
};

// A set of paths sharing a shape: the product of the choices of its hops.
struct PathGenerator {
  VertexRef source;
  std::vector<Hop> hops;

  VertexRef range() const noexcept { return hops.empty() ? source : hops.back().target; }
  Multiplicity count() const;
  bool is_finite() const { return count().is_finite(); }
  // Length of the shortest path generated.
  std::uint64_t min_length() const;
  // Every path generated, slots in increasing order. Requires is_finite().
  std::vector<Path> expand() const;

  friend bool operator==(const PathGenerator&, const PathGenerator&) = default;
};

// "v -> t0 =2=> w" for two parallel choices, "R.x0 ~> R.x3+2n" for a run.
std::string format_generator(const Graph& g, const PathGenerator& gen);

// B_v: the nontrivial paths from v that end in G⁰ with every earlier range
// in T.
struct PathFamily {
  VertexRef owner;
  std::vector<Path> finite_part;
  std::vector<PathGenerator> infinite_families;
  Multiplicity cardinality{0};
  // Longest member; nullopt for an empty family, ω if unbounded.
  std::optional<Multiplicity> max_length;

  bool empty() const { return finite_part.empty() && infinite_families.empty(); }
};

// Errors: UNKNOWN_VERTEX, T_NOT_ACYCLIC.
PathFamily enumerate_Bv(const Graph& g, const VertexSet& g0, VertexRef v);

// Sort order used for every path listing: exit target id, then length, then
// edge choices.
bool path_order(const Graph& g, const Path& a, const Path& b);

struct ProvenanceEntry {
  std::string source;
  std::string target;
  Multiplicity mult{0};
  std::vector<PathGenerator> generators;
  bool truncated = false;  // more generators exist than were listed
};

enum class ContractMode { Checked, Unchecked };

struct ContractedGraph {
  Graph graph;
  ContractMode mode = ContractMode::Checked;
  std::vector<ProvenanceEntry> provenance;
};

struct ContractOptions {
  ContractMode mode = ContractMode::Checked;
  bool provenance = false;
  std::size_t max_generators = 256;  // per contracted edge class
  bool parallel = true;
};

// The graph on G⁰ with one edge per B-path. Rays entirely inside G⁰ are kept
// (their positions are G⁰ vertices); a ray that is only partly in G⁰ is not
// supported.
// Errors: CONDITIONS_FAILED (checked mode, as ConditionsFailed carrying the
// verdict), T_NOT_ACYCLIC, UNSUPPORTED (G⁰ cuts a ray), UNREPRESENTABLE (a
// kept ray would need infinitely many targets, or an edge into a ray other
// than at x_0).
ContractedGraph contract(const Graph& g, const VertexSet& g0, const ContractOptions& options = {});

// Serial reference: sums generator counts path shape by path shape instead
// of the per-vertex dynamic programme of contract().
Graph contract_reference(const Graph& g, const VertexSet& g0);

// Cuntz–Krieger expansion of the trivial path v: leaves ending outside G⁰
// (and v itself, first) are replaced by their one-edge extensions until all
// leaves end in G⁰. Returns the leaves in path_order.
// Errors: BV_INFINITE, BV_EMPTY, NONTERMINATING (more rounds than N(v)),
// STUCK_AT_SINGULARITY (a leaf ends at a T vertex emitting nothing).
std::vector<Path> ck_expand(const Graph& g, const VertexSet& g0, VertexRef v);

}  // namespace contractible
