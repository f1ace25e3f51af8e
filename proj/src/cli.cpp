#include "moral/cli.hpp"

#include <fstream>
#include <iostream>

#include "CLI11.hpp"

#include "moral/chordal.hpp"
#include "moral/cycle_orientations.hpp"
#include "moral/hole_map.hpp"
#include "moral/io.hpp"
#include "moral/phylogeny.hpp"
#include "moral/verifier.hpp"

namespace moral::cli {

using nlohmann::json;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

io::DigraphDocument load_digraph(const std::string& path) {
  auto doc = io::parse_digraph_text(io::read_file(path));
  if (!is_acyclic(doc.digraph)) {
    auto cycle = topological_order(doc.digraph).cycle;
    std::string text;
    for (int v : cycle) text += (text.empty() ? "" : "->") + std::to_string(v);
    throw io::FormatError(path + ": digraph has a directed cycle " + text);
  }
  return doc;
}

SimpleGraph pick_graph(const Digraph& d, const std::string& which) {
  if (which == "p") return phylogeny_graph(d);
  if (which == "u") return underlying_graph(d);
  if (which == "c") return competition_graph(d);
  throw UsageError("--of must be one of p, u, c");
}

json hole_list(const std::vector<Hole>& holes) {
  json arr = json::array();
  for (const auto& h : holes) arr.push_back(io::to_json(h));
  return arr;
}

json orientation_json(const OrientationClass& c) {
  json j{{"length", c.length},
         {"mask", c.mask},
         {"arcs", io::to_json(c.representative)["arcs"]},
         {"status", std::string(to_string(c.status))}};
  if (c.status == OrientationStatus::permitted) {
    j["extra_vertices"] = c.bound;
    j["witness"] = io::to_json(*c.witness);
  }
  if (c.status == OrientationStatus::no_witness) j["bound"] = c.bound;
  if (!c.label.empty()) j["label"] = c.label;
  return j;
}

// --- subcommands ----------------------------------------------------------

int run_moralize(const std::string& path, bool dot, std::ostream& out) {
  auto doc = load_digraph(path);
  const Digraph& d = doc.digraph;
  if (dot) {
    out << io::phylogeny_dot(d, doc.labels);
    return kSuccess;
  }
  json cared = json::array();
  for (const auto& e : cared_edges(d)) cared.push_back(io::to_json(e));
  const SimpleGraph p = phylogeny_graph(d);
  json j{{"n", d.vertex_count()},
         {"underlying", io::edges_json(underlying_graph(d))},
         {"competition", io::edges_json(competition_graph(d))},
         {"phylogeny", io::edges_json(p)},
         {"cared_edges", cared},
         {"chordal", chordal(p)}};
  if (!doc.labels.empty()) j["labels"] = doc.labels;
  out << j.dump(2) << '\n';
  return kSuccess;
}

SimpleGraph graph_input(const std::string& digraph_path, const std::string& graph_path, const std::string& which) {
  if (!graph_path.empty() == !digraph_path.empty()) throw UsageError("give exactly one of FILE or --graph FILE");
  if (!graph_path.empty()) return io::parse_graph_text(io::read_file(graph_path)).graph;
  return pick_graph(load_digraph(digraph_path).digraph, which);
}

int run_chordal(const SimpleGraph& g, std::ostream& out) {
  auto cert = is_chordal(g);
  json j{{"chordal", cert.chordal()}};
  if (cert.chordal()) {
    j["elimination_order"] = cert.elimination_order;
  } else {
    j["hole"] = io::to_json(*cert.hole);
  }
  out << j.dump(2) << '\n';
  return cert.chordal() ? kSuccess : kPropertyFails;
}

int run_holes(const SimpleGraph& g, int cap, std::ostream& out) {
  auto holes = enumerate_holes(g, cap);
  out << json{{"count", holes.size()}, {"holes", hole_list(holes)}}.dump(2) << '\n';
  return kSuccess;
}

int run_classify(int k, int extra, int jobs, std::ostream& out) {
  auto classes = classify_all(enumerate_cycle_orientations(k), extra, jobs);
  json list = json::array();
  for (const auto& c : classes) list.push_back(orientation_json(c));
  json j{{"k", k}, {"extra_vertices", extra}, {"classes", list}};
  int code = kSuccess;
  if (k == 6) {
    auto check = validate_catalog(forbidden_catalog(), classes);
    j["catalog_consistent"] = check.consistent;
    j["catalog_problems"] = check.problems;
    if (!check.consistent) code = kPropertyFails;
  }
  out << j.dump(2) << '\n';
  return code;
}

int run_scan(const std::string& path, std::ostream& out) {
  auto doc = load_digraph(path);
  auto matches = scan_forbidden_induced(doc.digraph);
  json list = json::array();
  for (const auto& m : matches) {
    json e{{"vertices", m.vertices}, {"rule", m.by_length ? "length" : "pattern"}};
    if (!m.by_length) e["pattern"] = m.pattern_label;
    list.push_back(e);
  }
  out << json{{"matches", list}}.dump(2) << '\n';
  return matches.empty() ? kSuccess : kPropertyFails;
}

int run_phi(const std::string& path, std::ostream& out) {
  auto doc = load_digraph(path);
  auto r = verify_hole_correspondence(doc.digraph);
  json map = json::array();
  for (const auto& m : r.map) {
    json e{{"hole", io::to_json(m.hole)}, {"image", io::to_json(m.image)}, {"candidates", hole_list(m.candidates)}};
    e["choice"] = m.choice ? json(*m.choice) : json(nullptr);
    e["choice_has_hole"] = m.choice_has_hole;
    map.push_back(e);
  }
  json j{{"holes_p", hole_list(r.holes_p)},
         {"holes_u", hole_list(r.holes_u)},
         {"map", map},
         {"p_holes_disjoint", r.p_holes_disjoint},
         {"no_u_hole_of_length_4_or_6", r.no_u_hole_of_length_4_or_6},
         {"hypotheses_met", r.hypotheses_met},
         {"matching", r.matching},
         {"injective", r.injective},
         {"count_ok", r.count_ok}};
  out << j.dump(2) << '\n';
  return r.passes() ? kSuccess : kPropertyFails;
}

struct VerifyOptions {
  int n = -1;
  bool exhaustive = false;
  bool random = false;
  std::uint64_t samples = 1000;
  std::uint64_t seed = 1;
  std::string checks = "all";
  int jobs = 0;
  bool dedup = false;
  std::vector<int> bounds{2, 2};
  std::string replay_out;
  std::string replay_in;
  bool timing = false;
};

int run_verify(const VerifyOptions& o, std::ostream& out, std::ostream& err) {
  if (o.bounds.size() != 2) throw UsageError("--bounds takes two integers");
  const DegreeBounds bounds(o.bounds[0], o.bounds[1]);
  if (!o.replay_in.empty()) {
    auto records = io::parse_replay(io::read_file(o.replay_in));
    json list = json::array();
    bool any_fail = false;
    for (const auto& rec : records) {
      auto result = run_check(rec.check, rec.digraph, bounds);
      bool failed = result.verdict == Verdict::fail;
      any_fail = any_fail || failed;
      list.push_back({{"check", std::string(check_name(rec.check))}, {"reproduced", failed}, {"detail", result.detail}});
    }
    out << json{{"records", list}}.dump(2) << '\n';
    return any_fail ? kPropertyFails : kSuccess;
  }
  if (o.exhaustive == o.random) throw UsageError("choose exactly one of --exhaustive or --random");
  if (o.n < 0) throw UsageError("--n is required");
  SweepScope scope;
  scope.mode = o.exhaustive ? SweepMode::exhaustive : SweepMode::random;
  scope.n = o.n;
  scope.bounds = bounds;
  scope.dedup = o.dedup;
  scope.samples = o.samples;
  scope.seed = o.seed;
  try {
    scope.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  const CheckSet checks = parse_check_set(o.checks);
  auto report = run_suite(scope, checks, o.jobs > 0 ? o.jobs : default_jobs());
  out << io::to_json(report).dump(2) << '\n';
  if (o.timing) err << "wall time: " << report.wall_seconds << " s\n";
  if (!o.replay_out.empty() && !report.first_failures.empty()) {
    std::ofstream file(o.replay_out);
    if (!file) throw io::FormatError(o.replay_out + ": cannot write");
    file << io::replay_lines(report);
  }
  return report.ok() ? kSuccess : kPropertyFails;
}

int run_census(const std::vector<int>& ks, std::ostream& out) {
  json list = json::array();
  for (int k : ks) {
    auto classes = enumerate_cycle_orientations(k);
    list.push_back({{"k", k}, {"acyclic_orientations", (1U << k) - 2}, {"classes", classes.size()}});
  }
  out << json{{"census", list}}.dump(2) << '\n';
  return kSuccess;
}

int run_remark(int max_n, std::uint64_t budget, std::uint64_t seed, std::ostream& out) {
  auto f = find_remark_counterexamples(max_n, budget, seed);
  json j{{"examined", f.examined}};
  if (f.long_p_hole) {
    j["long_p_hole"] = {{"digraph", io::to_json(f.long_p_hole->digraph)},
                        {"holes_u", hole_list(f.long_p_hole->holes_u)},
                        {"p_hole", io::to_json(f.long_p_hole->p_hole)}};
  }
  if (f.overlap) {
    j["overlap"] = {{"digraph", io::to_json(f.overlap->digraph)},
                    {"first", io::to_json(f.overlap->first)},
                    {"second", io::to_json(f.overlap->second)},
                    {"shared_image", io::to_json(f.overlap->shared_image)},
                    {"holes_u", hole_list(f.overlap->holes_u)}};
  }
  out << j.dump(2) << '\n';
  return (f.long_p_hole || f.overlap) ? kPropertyFails : kSuccess;
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Competition and phylogeny (moral) graphs of degree-bounded acyclic digraphs", "moralchord"};
  app.require_subcommand(1);

  std::string file;
  std::string graph_file;
  std::string which = "p";
  bool dot = false;
  int cap = kHoleEnumerationCap;
  int k = 0;
  int extra = kDefaultExtraVertices;
  int jobs = 0;
  std::vector<int> ks;
  int max_n = 10;
  std::uint64_t budget = 2'000'000;
  std::uint64_t seed = 1;
  VerifyOptions vo;

  auto* moralize = app.add_subcommand("moralize", "Emit U(D), C(D), P(D) and the cared edges");
  moralize->add_option("file", file, "Digraph JSON document")->required();
  moralize->add_flag("--dot", dot, "Emit Graphviz DOT for P(D)");

  auto* chordal_cmd = app.add_subcommand("chordal", "Decide chordality with a certificate");
  chordal_cmd->add_option("file", file, "Digraph JSON document");
  chordal_cmd->add_option("--graph", graph_file, "Undirected graph JSON document");
  chordal_cmd->add_option("--of", which, "Graph of the digraph to test: p, u or c");

  auto* holes = app.add_subcommand("holes", "Enumerate holes");
  holes->add_option("file", file, "Digraph JSON document");
  holes->add_option("--graph", graph_file, "Undirected graph JSON document");
  holes->add_option("--of", which, "Graph of the digraph to search: p, u or c");
  holes->add_option("--cap", cap, "Vertex cap");

  auto* classify = app.add_subcommand("classify-cycle", "Classify acyclic orientations of the k-cycle");
  classify->add_option("--k", k, "Cycle length")->required();
  classify->add_option("--extra", extra, "Extra vertices allowed in witness search");
  classify->add_option("--jobs", jobs, "Worker threads");

  auto* scan = app.add_subcommand("scan", "Report induced forbidden cycle orientations");
  scan->add_option("file", file, "Digraph JSON document")->required();

  auto* phi_cmd = app.add_subcommand("phi", "Hole map report for a (2,2) digraph");
  phi_cmd->add_option("file", file, "Digraph JSON document")->required();

  auto* verify = app.add_subcommand("verify", "Run the theorem checks over a sweep");
  verify->add_option("--n", vo.n, "Vertex count");
  verify->add_flag("--exhaustive", vo.exhaustive, "All bounded DAGs in topologically sorted form");
  verify->add_flag("--random", vo.random, "Random bounded DAGs");
  verify->add_option("--samples", vo.samples, "Random sample count");
  verify->add_option("--seed", vo.seed, "Random seed");
  verify->add_option("--checks", vo.checks, "Comma-separated: k5,long_hole,chordal_suff,care_bounds,hole_corr or all");
  verify->add_option("--jobs", vo.jobs, "Worker threads (default: MORAL_JOBS or hardware concurrency)");
  verify->add_flag("--dedup", vo.dedup, "Skip isomorphic copies");
  verify->add_option("--bounds", vo.bounds, "Max indegree and outdegree")->expected(2);
  verify->add_option("--replay-out", vo.replay_out, "Write failing digraphs here");
  verify->add_option("--replay", vo.replay_in, "Re-run the records of a replay file");
  verify->add_flag("--timing", vo.timing, "Print wall time to stderr");

  auto* census = app.add_subcommand("census", "Count orientation classes of k-cycles");
  census->add_option("--k", ks, "Cycle length(s)")->required();

  auto* remark = app.add_subcommand("remark", "Search for the hole-map counterexample phenomena");
  remark->add_option("--max-n", max_n, "Largest vertex count");
  remark->add_option("--budget", budget, "Digraphs to examine");
  remark->add_option("--seed", seed, "Random seed");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  }

  try {
    if (moralize->parsed()) return run_moralize(file, dot, out);
    if (chordal_cmd->parsed()) return run_chordal(graph_input(file, graph_file, which), out);
    if (holes->parsed()) return run_holes(graph_input(file, graph_file, which), cap, out);
    if (classify->parsed()) return run_classify(k, extra, jobs > 0 ? jobs : default_jobs(), out);
    if (scan->parsed()) return run_scan(file, out);
    if (phi_cmd->parsed()) return run_phi(file, out);
    if (verify->parsed()) return run_verify(vo, out, err);
    if (census->parsed()) return run_census(ks, out);
    if (remark->parsed()) return run_remark(max_n, budget, seed, out);
  } catch (const io::FormatError& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const TheoremViolation& e) {
    err << "theorem violation: " << e.what() << '\n';
    return kPropertyFails;
  }
  return kUsageError;
}

}  // namespace moral::cli
