#include "moral/io.hpp"

#include <fstream>
#include <sstream>

namespace moral::io {

using nlohmann::json;

namespace {

int require_int(const json& j, const std::string& where) {
  if (!j.is_number_integer()) throw FormatError(where + ": expected an integer");
  return j.get<int>();
}

std::pair<int, int> require_pair(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2) throw FormatError(where + ": expected a [a, b] pair");
  return {require_int(j[0], where + "[0]"), require_int(j[1], where + "[1]")};
}

int require_count(const json& j) {
  if (!j.is_object()) throw FormatError("document: expected a JSON object");
  if (!j.contains("n")) throw FormatError("n: missing");
  int n = require_int(j["n"], "n");
  if (n < 0 || n > kMaxVertices) {
    throw FormatError("n: " + std::to_string(n) + " outside 0.." + std::to_string(kMaxVertices));
  }
  return n;
}

json parse_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw FormatError(std::string("invalid JSON: ") + e.what());
  }
}

}  // namespace

DigraphDocument parse_digraph(const json& j) {
  const int n = require_count(j);
  DigraphDocument doc;
  doc.digraph = Digraph(n, {});
  if (!j.contains("arcs") || !j["arcs"].is_array()) throw FormatError("arcs: expected an array");
  const auto& arcs = j["arcs"];
  for (std::size_t i = 0; i < arcs.size(); ++i) {
    const std::string where = "arcs[" + std::to_string(i) + "]";
    auto [t, h] = require_pair(arcs[i], where);
    try {
      doc.digraph.add_arc(t, h);
    } catch (const GraphError& e) {
      throw FormatError(where + ": " + e.what());
    }
  }
  if (j.contains("labels")) {
    const auto& labels = j["labels"];
    if (!labels.is_array()) throw FormatError("labels: expected an array");
    if (static_cast<int>(labels.size()) != n) {
      throw FormatError("labels: has " + std::to_string(labels.size()) + " entries for " + std::to_string(n) +
                        " vertices");
    }
    for (std::size_t i = 0; i < labels.size(); ++i) {
      if (!labels[i].is_string()) throw FormatError("labels[" + std::to_string(i) + "]: expected a string");
      doc.labels.push_back(labels[i].get<std::string>());
    }
  }
  return doc;
}

DigraphDocument parse_digraph_text(const std::string& text) { return parse_digraph(parse_text(text)); }

GraphDocument parse_graph(const json& j) {
  const int n = require_count(j);
  GraphDocument doc{SimpleGraph(n)};
  if (!j.contains("edges") || !j["edges"].is_array()) throw FormatError("edges: expected an array");
  const auto& edges = j["edges"];
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const std::string where = "edges[" + std::to_string(i) + "]";
    auto [u, v] = require_pair(edges[i], where);
    try {
      if (u >= 0 && v >= 0 && u < n && v < n && doc.graph.adjacent(u, v)) throw GraphError("duplicate edge");
      doc.graph.add_edge(u, v);
    } catch (const GraphError& e) {
      throw FormatError(where + ": " + e.what());
    }
  }
  return doc;
}

GraphDocument parse_graph_text(const std::string& text) { return parse_graph(parse_text(text)); }

json to_json(const Digraph& d, const std::vector<std::string>& labels) {
  json arcs = json::array();
  for (auto [t, h] : d.arcs()) arcs.push_back({t, h});
  json j{{"n", d.vertex_count()}, {"arcs", arcs}};
  if (!labels.empty()) j["labels"] = labels;
  return j;
}

json edges_json(const SimpleGraph& g) {
  json edges = json::array();
  for (auto [u, v] : g.edges()) edges.push_back({u, v});
  return edges;
}

json to_json(const SimpleGraph& g) { return json{{"n", g.vertex_count()}, {"edges", edges_json(g)}}; }

json to_json(const Hole& h) { return h.vertices(); }

json to_json(const CaredEdge& e) { return json{{"edge", {e.u, e.v}}, {"carers", e.carer_list()}}; }

json to_json(const SuiteReport& r) {
  json tallies = json::object();
  for (Check c : kChecks) {
    if (!has_check(r.checks, c)) continue;
    const auto& t = r.tally(c);
    tallies[std::string(check_name(c))] = {
        {"passed", t.passed}, {"failed", t.failed}, {"not_applicable", t.not_applicable}};
  }
  json failures = json::array();
  for (const auto& f : r.first_failures) {
    failures.push_back({{"check", std::string(check_name(f.check))},
                        {"index", f.index},
                        {"digraph", to_json(f.digraph)},
                        {"detail", f.detail}});
  }
  return json{{"digraphs_checked", r.digraphs_checked}, {"ok", r.ok()}, {"tallies", tallies},
              {"first_failures", failures}};
}

std::string phylogeny_dot(const Digraph& d, const std::vector<std::string>& labels) {
  std::ostringstream out;
  out << "graph P {\n";
  for (int v = 0; v < d.vertex_count(); ++v) {
    out << "  " << v;
    if (!labels.empty()) out << " [label=" << json(labels[v]).dump() << "]";
    out << ";\n";
  }
  for (auto [t, h] : d.arcs()) {
    out << "  " << std::min(t, h) << " -- " << std::max(t, h) << " [style=solid];\n";
  }
  for (const auto& e : cared_edges(d)) {
    out << "  " << e.u << " -- " << e.v << " [style=dashed, color=grey];\n";
  }
  out << "}\n";
  return out.str();
}

std::string replay_lines(const SuiteReport& r) {
  std::string out;
  for (const auto& f : r.first_failures) {
    json j = to_json(f.digraph);
    j["check"] = std::string(check_name(f.check));
    j["detail"] = f.detail;
    out += j.dump() + "\n";
  }
  return out;
}

std::vector<ReplayRecord> parse_replay(const std::string& text) {
  std::vector<ReplayRecord> records;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const std::string where = "record " + std::to_string(line_no);
    json j;
    try {
      j = json::parse(line);
    } catch (const json::parse_error& e) {
      throw FormatError(where + ": invalid JSON");
    }
    if (!j.is_object() || !j.contains("check") || !j["check"].is_string()) throw FormatError(where + ": missing check");
    auto check = parse_check(j["check"].get<std::string>());
    if (!check) throw FormatError(where + ": unknown check " + j["check"].get<std::string>());
    try {
      records.push_back({*check, parse_digraph(j).digraph});
    } catch (const FormatError& e) {
      throw FormatError(where + ": " + e.what());
    }
  }
  return records;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError(path + ": cannot open");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace moral::io
