#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "moral/chordal.hpp"
#include "moral/graph_core.hpp"
#include "moral/phylogeny.hpp"
#include "moral/verifier.hpp"

namespace moral::io {

/// Malformed input document; the message names the offending record.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// {"n": int, "arcs": [[tail, head], ...], "labels": [string, ...]?}
struct DigraphDocument {
  Digraph digraph;
  std::vector<std::string> labels;
};

/// {"n": int, "edges": [[u, v], ...]}
struct GraphDocument {
  SimpleGraph graph;
};

DigraphDocument parse_digraph(const nlohmann::json& j);
DigraphDocument parse_digraph_text(const std::string& text);
GraphDocument parse_graph(const nlohmann::json& j);
GraphDocument parse_graph_text(const std::string& text);

nlohmann::json to_json(const Digraph& d, const std::vector<std::string>& labels = {});
nlohmann::json to_json(const SimpleGraph& g);
nlohmann::json edges_json(const SimpleGraph& g);
nlohmann::json to_json(const Hole& h);
nlohmann::json to_json(const CaredEdge& e);
nlohmann::json to_json(const SuiteReport& r);

/// Graphviz rendering of P(D). Edges of U(D) are solid; cared edges carry
/// style=dashed and a grey color.
std::string phylogeny_dot(const Digraph& d, const std::vector<std::string>& labels = {});

/// One JSON object per line: {"check": name, "n": ..., "arcs": [...], "detail": ...}.
std::string replay_lines(const SuiteReport& r);

struct ReplayRecord {
  Check check;
  Digraph digraph;
};

std::vector<ReplayRecord> parse_replay(const std::string& text);

std::string read_file(const std::string& path);

}  // namespace moral::io
