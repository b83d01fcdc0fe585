#pragma once

// The shared example graphs, built directly from descriptions so that the
// JSON parser can be tested against them.

#include <string>
#include <vector>

#include "contractible/graph.hpp"
#include "contractible/vertex_set.hpp"

namespace fixtures {

using namespace contractible;

inline const Multiplicity kOmega = Multiplicity::omega();

inline Graph loop() { return build_graph({{"u"}, {{"u", "u", 1}}, {}}); }

inline Graph b2() {
  return build_graph({{"v", "t0", "ta", "tb", "w"},
                      {{"v", "t0", 1}, {"t0", "ta", 1}, {"t0", "tb", 1}, {"ta", "w", 1}, {"tb", "w", 1}},
                      {}});
}

inline Graph inf() { return build_graph({{"v", "w"}, {{"v", "w", kOmega}}, {}}); }

inline Graph vi_e() {
  return build_graph({{"v", "w"},
                      {{"v", "w", 1}},
                      {{"L", {{"v", 1}}, {}, {{{"w", 1}}}}, {"R", {{"v", 1}}, {}, {{{"w", 1}}}}}});
}

inline Graph vi_f() {
  return build_graph({{"v", "w"}, {{"v", "w", kOmega}}, {{"X", {{"v", 1}}, {}, {{{"w", 1}}}}}});
}

inline Graph esse() { return build_graph({{"a", "x"}, {{"a", "x", 1}, {"x", "a", 1}}, {}}); }

inline VertexSet set(const Graph& g, std::vector<std::string> names) { return VertexSet::from_names(g, names); }

inline std::string fixture_path(const std::string& file) { return std::string(CONTRACTIBLE_FIXTURES) + "/" + file; }

}  // namespace fixtures
