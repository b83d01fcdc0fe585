#include "contractible/io.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

namespace contractible {

ParseError::ParseError(std::size_t line, const std::string& message)
    : Error(ErrorCode::ParseError, line ? "line " + std::to_string(line) + ": " + message : message), line_(line) {}

namespace {

[[noreturn]] void shape_error(const std::string& where, const std::string& what) {
  throw ParseError(0, where + ": " + what);
}

Json parse_json(std::string_view text) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error& e) {
    const std::size_t upto = std::min<std::size_t>(e.byte ? e.byte - 1 : 0, text.size());
    const std::size_t line = 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + upto, '\n'));
    std::string msg = e.what();
    // drop nlohmann's "[json.exception.parse_error.101] parse error at line 1, column 2: " prefix
    if (auto colon = msg.find(": "); colon != std::string::npos && msg.rfind("[json", 0) == 0) {
      auto second = msg.find(": ", colon + 2);
      msg = msg.substr(second != std::string::npos ? second + 2 : colon + 2);
    }
    throw ParseError(line, msg);
  }
}

const Json& member(const Json& obj, const char* key, const std::string& where) {
  if (!obj.is_object()) shape_error(where, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) shape_error(where, std::string("missing \"") + key + "\"");
  return *it;
}

const Json* optional_member(const Json& obj, const char* key, const std::string& where) {
  if (!obj.is_object()) shape_error(where, "expected an object");
  auto it = obj.find(key);
  return it == obj.end() ? nullptr : &*it;
}

std::string text_of(const Json& j, const std::string& where) {
  if (!j.is_string()) shape_error(where, "expected a string");
  return j.get<std::string>();
}

const Json& list_of(const Json& j, const std::string& where) {
  if (!j.is_array()) shape_error(where, "expected a list");
  return j;
}

std::uint64_t natural_of(const Json& j, const std::string& where) {
  if (!j.is_number_unsigned()) shape_error(where, "expected a natural number");
  return j.get<std::uint64_t>();
}

Multiplicity mult_of(const Json& obj, const std::string& where) {
  const Json* m = optional_member(obj, "mult", where);
  if (!m) return Multiplicity(1);
  if (m->is_number_unsigned()) return Multiplicity(m->get<std::uint64_t>());
  if (m->is_string()) {
    if (auto parsed = Multiplicity::parse(m->get<std::string>())) return *parsed;
  }
  shape_error(where + "/mult", "expected a natural number or \"inf\"");
}

Json mult_json(Multiplicity m) { return m.is_infinite() ? Json("inf") : Json(m.count()); }

std::vector<TargetSpec> bag_of(const Json& j, const std::string& where) {
  std::vector<TargetSpec> bag;
  std::size_t i = 0;
  for (const auto& t : list_of(j, where)) {
    const std::string at = where + "/" + std::to_string(i++);
    bag.push_back({text_of(member(t, "dst", at), at + "/dst"), mult_of(t, at)});
  }
  return bag;
}

// Compact one-line rendering with a space after ':' and ','.
std::string inline_dump(const Json& j) {
  if (j.is_object()) {
    std::string out = "{";
    bool first = true;
    for (const auto& [k, v] : j.items()) {
      out += (first ? "" : ", ") + Json(k).dump() + ": " + inline_dump(v);
      first = false;
    }
    return out + "}";
  }
  if (j.is_array()) {
    std::string out = "[";
    for (std::size_t i = 0; i < j.size(); ++i) out += (i ? ", " : "") + inline_dump(j[i]);
    return out + "]";
  }
  return j.dump();
}

std::string dot_id(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

std::string dot_label(Multiplicity m) {
  if (m.is_infinite()) return " [label=\"∞\"]";
  if (m.count() > 1) return " [label=\"" + m.to_string() + "\"]";
  return "";
}

}  // namespace

Graph graph_from_json(const Json& j) {
  if (j.is_null()) return build_graph({});
  if (!j.is_object()) shape_error("/", "expected an object");
  GraphDescription d;
  if (const Json* vs = optional_member(j, "vertices", "/")) {
    std::size_t i = 0;
    for (const auto& v : list_of(*vs, "/vertices")) d.vertices.push_back(text_of(v, "/vertices/" + std::to_string(i++)));
  }
  if (const Json* es = optional_member(j, "edges", "/")) {
    std::size_t i = 0;
    for (const auto& e : list_of(*es, "/edges")) {
      const std::string at = "/edges/" + std::to_string(i++);
      d.edges.push_back({text_of(member(e, "src", at), at + "/src"), text_of(member(e, "dst", at), at + "/dst"), mult_of(e, at)});
    }
  }
  if (const Json* rs = optional_member(j, "rays", "/")) {
    std::size_t i = 0;
    for (const auto& r : list_of(*rs, "/rays")) {
      const std::string at = "/rays/" + std::to_string(i++);
      RaySpec ray;
      ray.id = text_of(member(r, "id", at), at + "/id");
      if (const Json* en = optional_member(r, "entry", at)) {
        std::size_t k = 0;
        for (const auto& e : list_of(*en, at + "/entry")) {
          const std::string eat = at + "/entry/" + std::to_string(k++);
          ray.entry.push_back({text_of(member(e, "src", eat), eat + "/src"), mult_of(e, eat)});
        }
      }
      if (const Json* pre = optional_member(r, "prefix", at)) {
        std::size_t k = 0;
        for (const auto& b : list_of(*pre, at + "/prefix")) ray.prefix.push_back(bag_of(b, at + "/prefix/" + std::to_string(k++)));
      }
      std::size_t k = 0;
      for (const auto& b : list_of(member(r, "cycle", at), at + "/cycle"))
        ray.cycle.push_back(bag_of(b, at + "/cycle/" + std::to_string(k++)));
      d.rays.push_back(std::move(ray));
    }
  }
  return build_graph(d);
}

Graph parse_graph(std::string_view text) {
  std::string_view trimmed = text;
  while (!trimmed.empty() && std::isspace(static_cast<unsigned char>(trimmed.front()))) trimmed.remove_prefix(1);
  if (trimmed.empty()) return build_graph({});
  return graph_from_json(parse_json(text));
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::InvalidArgument, "cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

Graph load_graph(const std::string& path) { return parse_graph(read_file(path)); }

Json graph_json(const Graph& g) {
  GraphDescription d = describe(g);
  Json j;
  j["vertices"] = d.vertices;
  j["edges"] = Json::array();
  for (const auto& e : d.edges) j["edges"].push_back(Json{{"src", e.source}, {"dst", e.target}, {"mult", mult_json(e.mult)}});
  j["rays"] = Json::array();
  auto bag = [](const std::vector<TargetSpec>& b) {
    Json out = Json::array();
    for (const auto& t : b) out.push_back(Json{{"dst", t.target}, {"mult", mult_json(t.mult)}});
    return out;
  };
  for (const auto& r : d.rays) {
    Json ray{{"id", r.id}, {"entry", Json::array()}, {"prefix", Json::array()}, {"cycle", Json::array()}};
    for (const auto& e : r.entry) ray["entry"].push_back(Json{{"src", e.source}, {"mult", mult_json(e.mult)}});
    for (const auto& b : r.prefix) ray["prefix"].push_back(bag(b));
    for (const auto& b : r.cycle) ray["cycle"].push_back(bag(b));
    j["rays"].push_back(std::move(ray));
  }
  return j;
}

std::string serialize_graph(const Graph& g) {
  Json j = graph_json(g);
  std::string out = "{\n  \"vertices\": " + inline_dump(j["vertices"]) + ",\n";
  auto block = [&](const char* key, bool last) {
    const Json& list = j[key];
    out += std::string("  \"") + key + "\": [";
    if (list.empty()) {
      out += "]";
    } else {
      out += "\n";
      for (std::size_t i = 0; i < list.size(); ++i) out += "    " + inline_dump(list[i]) + (i + 1 < list.size() ? ",\n" : "\n");
      out += "  ]";
    }
    out += last ? "\n" : ",\n";
  };
  block("edges", false);
  block("rays", true);
  return out + "}\n";
}

std::vector<DelayPlan> parse_plans(std::string_view text) {
  Json j = parse_json(text);
  const Json& list = j.is_array() ? j : member(j, "plans", "/");
  std::vector<DelayPlan> plans;
  std::size_t i = 0;
  for (const auto& p : list_of(list, "/plans")) {
    const std::string at = "/plans/" + std::to_string(i++);
    DelayPlan plan{text_of(member(p, "vertex", at), at + "/vertex"), {}};
    std::size_t k = 0;
    for (const auto& s : list_of(member(p, "stages", at), at + "/stages")) {
      const std::string sat = at + "/stages/" + std::to_string(k++);
      plan.stages.push_back({natural_of(member(s, "slot", sat), sat + "/slot"), natural_of(member(s, "stage", sat), sat + "/stage")});
    }
    plans.push_back(std::move(plan));
  }
  return plans;
}

std::vector<SlotLabel> parse_labels(std::string_view text) {
  Json j = parse_json(text);
  const Json& list = j.is_array() ? j : member(j, "labels", "/");
  std::vector<SlotLabel> labels;
  std::size_t i = 0;
  for (const auto& l : list_of(list, "/labels")) {
    const std::string at = "/labels/" + std::to_string(i++);
    labels.push_back({natural_of(member(l, "slot", at), at + "/slot"), natural_of(member(l, "label", at), at + "/label")});
  }
  return labels;
}

std::string export_dot(const Graph& g, std::uint64_t ray_depth) {
  if (ray_depth == 0) throw Error(ErrorCode::InvalidArgument, "ray depth must be at least 1");
  std::string out = "digraph G {\n";
  for (const auto& v : g.vertices()) out += "  " + dot_id(v) + ";\n";
  for (const auto& e : g.edges())
    out += "  " + dot_id(g.vertices()[e.source]) + " -> " + dot_id(g.vertices()[e.target]) + dot_label(e.mult) + ";\n";
  for (std::uint32_t r = 0; r < g.ray_count(); ++r) {
    const Ray& ray = g.ray(r);
    auto pos = [&](std::uint64_t k) { return dot_id(g.name(VertexRef::ray(r, k))); };
    for (std::uint64_t k = 0; k < ray_depth; ++k) out += "  " + pos(k) + " [shape=point, xlabel=" + pos(k) + "];\n";
    for (const auto& e : ray.entry) out += "  " + dot_id(g.vertices()[e.source]) + " -> " + pos(0) + dot_label(e.mult) + ";\n";
    for (std::uint64_t k = 0; k < ray_depth; ++k) {
      if (k + 1 < ray_depth) out += "  " + pos(k) + " -> " + pos(k + 1) + ";\n";
      for (const auto& t : ray.targets_at(k))
        out += "  " + pos(k) + " -> " + dot_id(g.vertices()[t.vertex]) + dot_label(Multiplicity(t.mult)) + ";\n";
    }
    const std::string more = dot_id(ray.id + "...");
    out += "  " + more + " [shape=none, label=\"...\"];\n";
    out += "  " + pos(ray_depth - 1) + " -> " + more + " [style=dashed];\n";
  }
  return out + "}\n";
}

std::string export_hasse_dot(const Graph& g, const SHFamily& family) {
  std::string out = "digraph SH {\n  rankdir=BT;\n";
  for (std::size_t i = 0; i < family.members.size(); ++i)
    out += "  H" + std::to_string(i) + " [label=" + dot_id(family.members[i].to_string(g)) + "];\n";
  for (auto [a, b] : hasse_covers(family)) out += "  H" + std::to_string(a) + " -> H" + std::to_string(b) + ";\n";
  return out + "}\n";
}

Json vertex_set_json(const Graph& g, const VertexSet& s) { return Json(s.names(g)); }

Json verdict_json(const Graph& g, const ContractionVerdict& v) {
  Json out{{"pass", v.pass}, {"violations", Json::array()}};
  for (const auto& x : v.violations) {
    Json j{{"kind", std::string(violation_name(x.kind))}};
    if (x.vertex) j["vertex"] = g.name(*x.vertex);
    if (!x.paths.empty()) {
      j["paths"] = Json::array();
      for (const auto& p : x.paths) j["paths"].push_back(format_path(g, p));
    }
    if (x.tail) j["tail"] = format_tail(g, *x.tail);
    if (x.degree) j["degree"] = mult_json(*x.degree);
    j["text"] = format_violation(g, x);
    out["violations"].push_back(std::move(j));
  }
  return out;
}

Json family_json(const Graph& g, const SHFamily& f) {
  Json out{{"members", Json::array()}, {"nontrivial", f.nontrivial_count}, {"covers", Json::array()}};
  for (const auto& m : f.members) out["members"].push_back(vertex_set_json(g, m));
  for (auto [a, b] : hasse_covers(f)) out["covers"].push_back(Json{a, b});
  return out;
}

Json contracted_json(const Graph& source, const ContractedGraph& c) {
  Json out{{"mode", c.mode == ContractMode::Checked ? "checked" : "unchecked"}, {"graph", graph_json(c.graph)}};
  if (!c.provenance.empty()) {
    out["provenance"] = Json::array();
    for (const auto& p : c.provenance) {
      Json gens = Json::array();
      for (const auto& gen : p.generators) gens.push_back(format_generator(source, gen));
      out["provenance"].push_back(Json{{"src", p.source},
                                       {"dst", p.target},
                                       {"mult", mult_json(p.mult)},
                                       {"generators", gens},
                                       {"truncated", p.truncated}});
    }
  }
  return out;
}

Json k_json(const KInvariants& k, const std::vector<BigInt>& factors) {
  Json torsion = Json::array();
  for (const auto& t : k.k0_torsion) torsion.push_back(t.str());
  Json raw = Json::array();
  for (const auto& f : factors) raw.push_back(f.str());
  return Json{{"k0", format_k0(k)}, {"k1", format_k1(k)}, {"k0_free_rank", k.k0_rank},
              {"k0_torsion", torsion}, {"k1_rank", k.k1_rank}, {"factors", raw}};
}

}  // namespace contractible
