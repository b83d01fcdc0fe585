#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "contractible/conditions.hpp"
#include "contractible/contraction.hpp"
#include "contractible/error.hpp"
#include "contractible/ideals.hpp"
#include "contractible/ktheory.hpp"
#include "contractible/moves.hpp"

namespace contractible {

using Json = nlohmann::ordered_json;

// PARSE_ERROR with the 1-based line of a syntax error. Structural problems
// (a missing key, a wrong type) have no line; they name the JSON path
// instead and report line 0.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& message);
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// Graph files: {"vertices": [...], "edges": [{"src", "dst", "mult"}],
// "rays": [{"id", "entry": [{"src", "mult"}], "prefix": [[{"dst", "mult"}]],
// "cycle": [[...]]}]}. "mult" is a natural number or "inf"; it defaults to 1.
Graph parse_graph(std::string_view text);
Graph load_graph(const std::string& path);
// Canonical: fixed key order, sorted vertices, edges and rays, one edge per
// line. parse_graph(serialize_graph(g)) == g.
std::string serialize_graph(const Graph& g);

Json graph_json(const Graph& g);
Graph graph_from_json(const Json& j);

// Plan files: {"plans": [{"vertex": v, "stages": [{"slot": i, "stage": k}]}]}.
// Label files: {"labels": [{"slot": i, "label": c}]}. A bare top-level list
// is accepted for either.
std::vector<DelayPlan> parse_plans(std::string_view text);
std::vector<SlotLabel> parse_labels(std::string_view text);
std::string read_file(const std::string& path);

// DOT rendering. ω edges are one edge labelled "∞", multiplicity n > 1 is
// the label "n". Rays are drawn for `ray_depth` positions, then a dashed
// edge to a "..." marker. Errors: INVALID_ARGUMENT (ray_depth = 0).
std::string export_dot(const Graph& g, std::uint64_t ray_depth = 3);
std::string export_hasse_dot(const Graph& g, const SHFamily& family);

// Machine-readable records, also used for the CLI's --json output.
Json verdict_json(const Graph& g, const ContractionVerdict& v);
Json family_json(const Graph& g, const SHFamily& f);
Json contracted_json(const Graph& source, const ContractedGraph& c);
Json k_json(const KInvariants& k, const std::vector<BigInt>& factors);
Json vertex_set_json(const Graph& g, const VertexSet& s);

}  // namespace contractible
