#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "contractible/error.hpp"
#include "contractible/graph.hpp"
#include "contractible/path.hpp"
#include "contractible/queries.hpp"
#include "contractible/vertex_set.hpp"

namespace contractible {

namespace detail {
class Condensation;
}

// Kinds of contractibility violations. The first seven come from the
// T-based conditions, the COND_1 / *_PRIME ones from the equivalent
// G⁰-based formulation.
enum class ViolationKind {
  TailsPresent,
  SingularityOutsideG0,
  TCycle,
  CondA,
  CondB,
  CondC,
  CondD,
  Cond1,
  CondAPrime,
  CondBPrime,
  CondCPrime,
  CondDPrime,
};

std::string_view violation_name(ViolationKind kind) noexcept;

// A violation with its witness. Which fields are set depends on the kind:
//   TAILS_PRESENT          tail
//   SINGULARITY_OUTSIDE_G0 vertex
//   T_CYCLE, COND_1        paths[0] = the cycle
//   COND_A, COND_A_PRIME   vertex, paths[0..1] = two diverging prefixes
//   COND_B, COND_B_PRIME   vertex (start of an infinite path in T not reached from G⁰)
//   COND_C, COND_C_PRIME   vertex, degree (its in-degree)
//   COND_D, COND_D_PRIME   vertex (the infinite emitter), paths[0] = the edge
struct Violation {
  Violation() = default;
  explicit Violation(ViolationKind k) : kind(k) {}

  ViolationKind kind{};
  std::optional<VertexRef> vertex;
  std::vector<Path> paths;
  std::optional<TailWitness> tail;
  std::optional<Multiplicity> degree;
};

struct ContractionVerdict {
  bool pass = true;
  std::vector<Violation> violations;

  bool has(ViolationKind kind) const;
  std::vector<ViolationKind> kinds() const;
};

std::string format_violation(const Graph& g, const Violation& v);

// One line per violation, or "pass".
std::string format_verdict(const Graph& g, const ContractionVerdict& verdict);

// An edge class of the induced subgraph T.
struct TEdge {
  enum class Kind : std::uint8_t {
    Plain,     // a single (multi-)edge
    Spine,     // the whole spine of a ray from `source` on
    Periodic,  // `source` → `target` and its repetitions once per period
  };
  VertexRef source;
  VertexRef target;
  Multiplicity mult{1};
  Kind kind = Kind::Plain;
};

// The subgraph T spanned by E⁰ \ G⁰.
struct SubgraphT {
  std::vector<std::uint32_t> core_vertices;
  // Per ray: nullopt if the ray is not in T at all, else the first position
  // not in T (nullopt inside = whole ray in T).
  std::vector<std::optional<std::optional<std::uint64_t>>> ray_parts;
  std::vector<TEdge> edges;
  bool acyclic = true;
  // Vertices (condensed: a ray's periodic part is represented by its first
  // position) from which an infinite path inside T starts.
  std::vector<VertexRef> infinite_starts;

  bool contains(VertexRef v) const;
};

// Errors: UNKNOWN_VERTEX if g0 does not belong to g.
SubgraphT induced_T(const Graph& g, const VertexSet& g0);

// Decides the T-based conditions: no tails, singularities inside G⁰, T
// acyclic, and for infinite paths in T conditions (b), (c), (d) and (a).
// Reports every violation in that order.
ContractionVerdict check_theorem(const Graph& g, const VertexSet& g0);

// Decides the G⁰-based formulation: the same two ambient hypotheses, (1)
// every cycle meets G⁰, and (a′)–(d′) over acyclic infinite paths. Computed
// by a separate route (simple-path search rather than the component DP), so
// agreement with check_theorem is a real cross-check.
ContractionVerdict check_proposition(const Graph& g, const VertexSet& g0);

// Re-validates every witness in `verdict` against the graph: paths exist,
// degrees are as claimed, prefixes diverge and stay in T. Returns an empty
// string if all is well, else a description of the first bad witness.
std::string validate_verdict(const Graph& g, const VertexSet& g0, const ContractionVerdict& verdict);

class ConditionsFailed : public Error {
 public:
  explicit ConditionsFailed(ContractionVerdict verdict, const std::string& message);
  const ContractionVerdict& verdict() const noexcept { return verdict_; }

 private:
  ContractionVerdict verdict_;
};

}  // namespace contractible
