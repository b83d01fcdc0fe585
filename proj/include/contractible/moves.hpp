#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "contractible/contraction.hpp"
#include "contractible/graph.hpp"
#include "contractible/vertex_set.hpp"

namespace contractible {

// Every infinite emitter v gets a ray v_tail entered once from v: v keeps one
// copy of each target it emits ω edges to, and the ray's cycle hands out the
// rest, one bag per such target in id order.
// Errors: HAS_TAILS, UNSUPPORTED (ω edges into a ray).
Graph desingularize(const Graph& g);

// The vertices of `larger` that `original` already had, by id; rays of the
// same id are taken whole. The natural G⁰ for undoing a move by contraction.
VertexSet carried_vertices(const Graph& original, const Graph& larger);

struct StageAssignment {
  std::uint64_t slot = 0;
  std::uint64_t stage = 0;
};

// Stages for the unit edge slots at one vertex. Out-slots are ordered as
// Graph::out_edges lists them (core targets by id, then ray entries by ray),
// in-slots as core sources by id followed by ray prefix positions by ray and
// position.
struct DelayPlan {
  std::string vertex;
  std::vector<StageAssignment> stages;
};

// Out-delay: v becomes the head of a gantlet v -> v_1 -> ... -> v_m and an
// out-slot at stage k leaves from v_k. In-delay is the dual: v_m -> ... ->
// v_1 -> v, and an in-slot at stage k arrives at v_k.
// Errors: UNKNOWN_VERTEX, STAGE_MISMATCH (slots missing, repeated or out of
// range), INFINITE_DEGREE.
Graph out_delay(const Graph& g, const std::vector<DelayPlan>& plans);
Graph in_delay(const Graph& g, const std::vector<DelayPlan>& plans);

// Splits a bipartite graph into the two graphs it is a strong shift
// equivalence between, by contracting each side in checked mode.
// Errors: INVALID_ARGUMENT (not a partition), NOT_BIPARTITE, UNSUPPORTED
// (rays), CONDITIONS_FAILED (message names the side).
std::pair<Graph, Graph> esse_split(const Graph& g3, const VertexSet& v1, const VertexSet& v2);

struct SlotLabel {
  std::uint64_t slot = 0;
  std::uint64_t label = 0;
};

// Skew product over Z_p. Edge slots run over Graph::edges() in order, one
// slot per unit of multiplicity and a single slot for an ω edge. Unlabelled
// slots carry 0. Vertex (v, k) is named "v@k"; a slot labelled c gives
// (s, k) -> (r, k + c), or (r, k - c) with `reverse`.
// Errors: INVALID_ARGUMENT (p = 0, label >= p, unknown slot), UNSUPPORTED
// (rays).
Graph skew_product(const Graph& g, std::uint64_t p, const std::vector<SlotLabel>& labels, bool reverse = false);

std::uint64_t edge_slot_count(const Graph& g);

// Replaces each maximal tail by a sink at its head. Ray positions before the
// head become core vertices named "<ray>.x<k>".
Graph tails_to_sinks(const Graph& g);

// v -> (binary tree with n generations) -> w, every leaf feeding w. Tree
// vertices are "t" followed by the left/right choices, e.g. "t", "tL", "tLR".
Graph binary_tree_graph(unsigned generations);

}  // namespace contractible
