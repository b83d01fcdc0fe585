#include "contractible/cli.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"

#include "contractible/io.hpp"
#include "contractible/random.hpp"

namespace contractible {

namespace {

std::vector<std::string> split_names(const std::string& list) {
  std::vector<std::string> out;
  std::stringstream in(list);
  std::string item;
  while (std::getline(in, item, ',')) {
    auto b = item.find_first_not_of(" \t");
    auto e = item.find_last_not_of(" \t");
    if (b != std::string::npos) out.push_back(item.substr(b, e - b + 1));
  }
  return out;
}

// G⁰ from the command line: core ids only, or the whole vertex set.
VertexSet g0_from(const Graph& g, const std::string& list, bool all) {
  if (all) return VertexSet::full(g);
  VertexSet s(g);
  for (const auto& name : split_names(list)) {
    auto u = g.find_core(name);
    if (!u) {
      auto pos = split_ray_position(name);
      if (pos && g.find_ray(pos->first))
        throw Error(ErrorCode::InvalidArgument, "ray positions cannot be put in G0 on the command line ('" + name +
                                                    "'); use --g0-all for the whole vertex set");
      throw Error(ErrorCode::UnknownVertex, "unknown vertex '" + name + "'");
    }
    s.insert_core(*u);
  }
  return s;
}

std::string set_line(const Graph& g, const VertexSet& s) { return s.to_string(g); }

struct Options {
  bool json = false;
  std::string file;
  std::string g0;
  bool g0_all = false;
  bool unchecked = false;
  bool provenance = false;
  std::size_t max_generators = 256;
  std::string set;
  bool hasse = false;
  std::string plan;
  std::uint64_t p = 1;
  std::string labels;
  bool reverse = false;
  std::string v1, v2;
  std::uint64_t depth = 3;
  RandomSpec random;
};

void print_verdict(std::ostream& out, const Graph& g, const char* title, const ContractionVerdict& v) {
  out << title << ": " << (v.pass ? "pass" : "fail") << "\n";
  for (const auto& x : v.violations) out << "  " << format_violation(g, x) << "\n";
}

int run_check(const Options& o, std::ostream& out) {
  Graph g = load_graph(o.file);
  VertexSet g0 = g0_from(g, o.g0, o.g0_all);
  ContractionVerdict t = check_theorem(g, g0);
  ContractionVerdict p = check_proposition(g, g0);
  if (o.json) {
    out << Json{{"g0", vertex_set_json(g, g0)},
                {"theorem", verdict_json(g, t)},
                {"proposition", verdict_json(g, p)},
                {"agree", t.pass == p.pass}}
               .dump(2)
        << "\n";
  } else {
    out << "G0: " << set_line(g, g0) << "\n";
    print_verdict(out, g, "theorem", t);
    print_verdict(out, g, "proposition", p);
  }
  return t.pass && p.pass ? kExitOk : kExitViolations;
}

int run_contract(const Options& o, std::ostream& out) {
  Graph g = load_graph(o.file);
  VertexSet g0 = g0_from(g, o.g0, o.g0_all);
  ContractOptions opt;
  opt.mode = o.unchecked ? ContractMode::Unchecked : ContractMode::Checked;
  opt.provenance = o.provenance;
  opt.max_generators = o.max_generators;
  try {
    ContractedGraph c = contract(g, g0, opt);
    if (o.json) {
      out << contracted_json(g, c).dump(2) << "\n";
      return kExitOk;
    }
    out << serialize_graph(c.graph);
    for (const auto& p : c.provenance) {
      out << "# " << p.source << " -> " << p.target << " (" << p.mult.to_string() << "):";
      for (const auto& gen : p.generators) out << "\n#   " << format_generator(g, gen);
      if (p.truncated) out << "\n#   ...";
      out << "\n";
    }
    return kExitOk;
  } catch (const ConditionsFailed& failure) {
    if (o.json)
      out << Json{{"contracted", false}, {"verdict", verdict_json(g, failure.verdict())}}.dump(2) << "\n";
    else
      print_verdict(out, g, "conditions", failure.verdict());
    return kExitViolations;
  }
}

int run_closure(const Options& o, std::ostream& out) {
  Graph g = load_graph(o.file);
  VertexSet x = VertexSet::from_names(g, split_names(o.set));
  VertexSet c = closure_SH(g, x);
  if (o.json)
    out << Json{{"set", vertex_set_json(g, x)}, {"closure", vertex_set_json(g, c)}, {"full", c.is_full()}}.dump(2) << "\n";
  else
    out << "closure: " << set_line(g, c) << "\nfull: " << (c.is_full() ? "yes" : "no") << "\n";
  return kExitOk;
}

int run_ideals(const Options& o, std::ostream& out) {
  Graph g = load_graph(o.file);
  SHFamily f = enumerate_SH(g);
  if (o.hasse) {
    out << export_hasse_dot(g, f);
  } else if (o.json) {
    out << family_json(g, f).dump(2) << "\n";
  } else {
    for (const auto& m : f.members) out << set_line(g, m) << "\n";
    out << "nontrivial: " << f.nontrivial_count << "\n";
  }
  return kExitOk;
}

int run_ktheory(const Options& o, std::ostream& out) {
  Graph g = load_graph(o.file);
  KInvariants k = k_theory(g);
  IntMatrix m = adjacency_matrix(g).transpose();
  for (std::size_t i = 0; i < m.rows(); ++i) m(i, i) -= 1;
  auto factors = smith_normal_form(m).diagonal();
  if (o.json) {
    out << k_json(k, factors).dump(2) << "\n";
  } else {
    out << "K0: " << format_k0(k) << "\nK1: " << format_k1(k) << "\nfactors:";
    for (const auto& f : factors) out << " " << f.str();
    out << "\n";
  }
  return kExitOk;
}

int emit_graph(const Options& o, std::ostream& out, const Graph& g) {
  if (o.json)
    out << graph_json(g).dump(2) << "\n";
  else
    out << serialize_graph(g);
  return kExitOk;
}

int run_esse(const Options& o, std::ostream& out) {
  Graph g = load_graph(o.file);
  VertexSet a = VertexSet::from_names(g, split_names(o.v1));
  VertexSet b = VertexSet::from_names(g, split_names(o.v2));
  try {
    auto [e1, e2] = esse_split(g, a, b);
    if (o.json) {
      out << Json{{"side1", graph_json(e1)}, {"side2", graph_json(e2)}}.dump(2) << "\n";
    } else {
      out << "side 1:\n" << serialize_graph(e1) << "side 2:\n" << serialize_graph(e2);
    }
    return kExitOk;
  } catch (const ConditionsFailed& failure) {
    if (o.json)
      out << Json{{"error", failure.what()}, {"verdict", verdict_json(g, failure.verdict())}}.dump(2) << "\n";
    else
      print_verdict(out, g, failure.what(), failure.verdict());
    return kExitViolations;
  }
}

int run_random(const Options& o, std::ostream& out) {
  RandomInstance r = generate_random(o.random);
  if (o.json)
    out << Json{{"seed", o.random.seed}, {"attempts", r.attempts}, {"graph", graph_json(r.graph)}, {"g0", vertex_set_json(r.graph, r.g0)}}
               .dump(2)
        << "\n";
  else
    out << serialize_graph(r.graph);
  return kExitOk;
}

}  // namespace

int cli_dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Contractible subgraphs of directed multigraphs with ω edges and rays", "contractible"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_flag("--json", o.json, "machine-readable output");

  auto file_arg = [&](CLI::App* sub) { sub->add_option("file", o.file, "graph file")->required(); };
  auto g0_args = [&](CLI::App* sub) {
    sub->add_option("--g0", o.g0, "comma-separated core vertices");
    sub->add_flag("--g0-all", o.g0_all, "use every vertex, rays included");
  };

  auto* check = app.add_subcommand("check", "run both contractibility checkers");
  file_arg(check);
  g0_args(check);

  auto* contract_cmd = app.add_subcommand("contract", "contract onto G0");
  file_arg(contract_cmd);
  g0_args(contract_cmd);
  contract_cmd->add_flag("--unchecked", o.unchecked, "skip the conditions");
  contract_cmd->add_flag("--provenance", o.provenance, "list the paths behind each edge");
  contract_cmd->add_option("--max-generators", o.max_generators, "generators listed per edge");

  auto* closure = app.add_subcommand("closure", "smallest saturated hereditary superset");
  file_arg(closure);
  closure->add_option("--set", o.set, "comma-separated vertices; R.xk+ for a ray from position k");

  auto* ideals = app.add_subcommand("ideals", "saturated hereditary subsets");
  file_arg(ideals);
  ideals->add_flag("--hasse-dot", o.hasse, "print the inclusion order as DOT");

  auto* ktheory = app.add_subcommand("ktheory", "K-groups of a finite row-finite graph without sinks");
  file_arg(ktheory);

  auto* desing = app.add_subcommand("desingularize", "replace infinite emitters by rays");
  file_arg(desing);

  auto* delay_out = app.add_subcommand("delay-out", "out-delay by a stage plan");
  file_arg(delay_out);
  delay_out->add_option("--plan", o.plan, "plan file")->required();
  auto* delay_in = app.add_subcommand("delay-in", "in-delay by a stage plan");
  file_arg(delay_in);
  delay_in->add_option("--plan", o.plan, "plan file")->required();

  auto* skew = app.add_subcommand("skew", "skew product over Z_p");
  file_arg(skew);
  skew->add_option("--p", o.p, "modulus")->required();
  skew->add_option("--labels", o.labels, "label file");
  skew->add_flag("--reverse", o.reverse, "(s,k) -> (r,k-c) instead of (r,k+c)");

  auto* esse = app.add_subcommand("esse", "split a bipartite graph into its two sides");
  file_arg(esse);
  esse->add_option("--v1", o.v1, "first side")->required();
  esse->add_option("--v2", o.v2, "second side")->required();

  auto* tails = app.add_subcommand("tails-to-sinks", "replace tails by sinks");
  file_arg(tails);

  auto* dot = app.add_subcommand("export-dot", "render as DOT");
  file_arg(dot);
  dot->add_option("--depth", o.depth, "ray positions to draw");

  auto* random = app.add_subcommand("random", "draw a random graph");
  RandomSpec& rs = o.random;
  random->add_option("--seed", rs.seed);
  random->add_option("--min-core", rs.min_core);
  random->add_option("--max-core", rs.max_core);
  random->add_option("--density", rs.edge_density);
  random->add_option("--max-mult", rs.max_mult);
  random->add_option("--omega", rs.omega_probability, "chance of an ω edge");
  random->add_option("--min-rays", rs.min_rays);
  random->add_option("--max-rays", rs.max_rays);
  random->add_option("--max-prefix", rs.max_prefix);
  random->add_option("--max-cycle", rs.max_cycle);
  random->add_flag("--no-sinks", rs.no_sinks);
  random->add_flag("--passing", rs.require_pass, "redraw until the conditions hold");
  random->add_option("--max-attempts", rs.max_attempts);

  std::vector<std::string> argv_tail(args.size() > 1 ? args.begin() + 1 : args.end(), args.end());
  std::reverse(argv_tail.begin(), argv_tail.end());
  try {
    app.parse(argv_tail);
  } catch (const CLI::ParseError& e) {
    std::ostringstream o_out, o_err;
    int code = app.exit(e, o_out, o_err);
    out << o_out.str();
    err << o_err.str();
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (*check) return run_check(o, out);
    if (*contract_cmd) return run_contract(o, out);
    if (*closure) return run_closure(o, out);
    if (*ideals) return run_ideals(o, out);
    if (*ktheory) return run_ktheory(o, out);
    if (*desing) return emit_graph(o, out, desingularize(load_graph(o.file)));
    if (*delay_out) return emit_graph(o, out, out_delay(load_graph(o.file), parse_plans(read_file(o.plan))));
    if (*delay_in) return emit_graph(o, out, in_delay(load_graph(o.file), parse_plans(read_file(o.plan))));
    if (*skew) {
      std::vector<SlotLabel> labels = o.labels.empty() ? std::vector<SlotLabel>{} : parse_labels(read_file(o.labels));
      return emit_graph(o, out, skew_product(load_graph(o.file), o.p, labels, o.reverse));
    }
    if (*esse) return run_esse(o, out);
    if (*tails) return emit_graph(o, out, tails_to_sinks(load_graph(o.file)));
    if (*dot) {
      out << export_dot(load_graph(o.file), o.depth);
      return kExitOk;
    }
    if (*random) return run_random(o, out);
  } catch (const ConditionsFailed& e) {
    err << "error: " << e.what() << "\n";
    return kExitViolations;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitInput;
}

}  // namespace contractible
