#include <cstdio>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "moral/cli.hpp"
#include "moral/io.hpp"

using namespace moral;
using nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::dispatch(args, out, err);
  return {code, out.str(), err.str()};
}

std::string write_temp(const std::string& name, const std::string& text) {
  const std::string path = "moral_cli_test_" + name;
  std::ofstream(path) << text;
  return path;
}

const std::string kExample = R"({"n": 5, "arcs": [[0,1],[0,3],[1,2],[1,4],[2,3],[3,4]]})";

}  // namespace

TEST_CASE("digraph documents round-trip") {
  const auto doc = io::parse_digraph_text(R"({"n": 3, "arcs": [[0,1],[1,2]], "labels": ["a","b","c"]})");
  CHECK(doc.digraph.arc_count() == 2);
  CHECK(doc.labels == std::vector<std::string>{"a", "b", "c"});
  const auto again = io::parse_digraph(io::to_json(doc.digraph, doc.labels));
  CHECK(again.digraph == doc.digraph);
  CHECK(again.labels == doc.labels);

  const auto g = io::parse_graph_text(R"({"n": 4, "edges": [[0,1],[3,2]]})");
  CHECK(io::parse_graph(io::to_json(g.graph)).graph == g.graph);
}

TEST_CASE("malformed documents name the record") {
  CHECK_THROWS_WITH_AS(io::parse_digraph_text(R"({"n": 3, "arcs": [[0,1],[1,1]]})"), doctest::Contains("arcs[1]"),
                       io::FormatError);
  CHECK_THROWS_WITH_AS(io::parse_digraph_text(R"({"n": 3, "arcs": [[0,1],[0]]})"), doctest::Contains("arcs[1]"),
                       io::FormatError);
  CHECK_THROWS_WITH_AS(io::parse_digraph_text(R"({"n": 3, "arcs": [[0,"x"]]})"), doctest::Contains("arcs[0][1]"),
                       io::FormatError);
  CHECK_THROWS_WITH_AS(io::parse_digraph_text(R"({"arcs": []})"), doctest::Contains("n"), io::FormatError);
  CHECK_THROWS_AS(io::parse_digraph_text("{"), io::FormatError);
  CHECK_THROWS_WITH_AS(io::parse_digraph_text(R"({"n": 2, "arcs": [], "labels": ["a"]})"),
                       doctest::Contains("labels"), io::FormatError);
  CHECK_THROWS_WITH_AS(io::parse_graph_text(R"({"n": 2, "edges": [[0,1],[1,0]]})"), doctest::Contains("edges[1]"),
                       io::FormatError);
}

TEST_CASE("moralize") {
  const auto path = write_temp("ex.json", kExample);
  const auto r = run({"moralize", path});
  CHECK(r.code == cli::kSuccess);
  const auto j = json::parse(r.out);
  CHECK(j["phylogeny"].size() == 8);
  CHECK(j["competition"] == json::parse("[[0,2],[1,3]]"));
  CHECK(j["cared_edges"][0]["carers"] == json::parse("[3]"));
  CHECK(j["chordal"] == true);

  const auto dot = run({"moralize", path, "--dot"});
  CHECK(dot.code == 0);
  CHECK(dot.out.find("0 -- 2 [style=dashed, color=grey]") != std::string::npos);
  CHECK(dot.out.find("0 -- 1 [style=solid]") != std::string::npos);
  std::remove(path.c_str());
}

TEST_CASE("chordal and holes subcommands") {
  const auto c4 = write_temp("c4.json", R"({"n": 4, "edges": [[0,1],[1,2],[2,3],[3,0]]})");
  auto r = run({"chordal", "--graph", c4});
  CHECK(r.code == cli::kPropertyFails);
  CHECK(json::parse(r.out)["hole"] == json::parse("[0,1,2,3]"));
  r = run({"holes", "--graph", c4});
  CHECK(r.code == 0);
  CHECK(json::parse(r.out)["count"] == 1);

  const auto ex = write_temp("ex2.json", kExample);
  r = run({"chordal", ex});
  CHECK(r.code == 0);
  r = run({"chordal", ex, "--of", "u"});
  CHECK(r.code == 1);
  r = run({"holes", ex, "--of", "u"});
  CHECK(json::parse(r.out)["count"] == 3);
  r = run({"chordal", ex, "--graph", c4});
  CHECK(r.code == cli::kUsageError);
  std::remove(c4.c_str());
  std::remove(ex.c_str());
}

TEST_CASE("usage and input errors exit with 2") {
  CHECK(run({}).code == cli::kUsageError);
  CHECK(run({"frobnicate"}).code == cli::kUsageError);
  CHECK(run({"moralize", "/nonexistent/file.json"}).code == cli::kUsageError);
  const auto bad = write_temp("bad.json", R"({"n": 3, "arcs": [[0,1],[0,7]]})");
  auto r = run({"moralize", bad});
  CHECK(r.code == cli::kUsageError);
  CHECK(r.err.find("arcs[1]") != std::string::npos);
  const auto cyc = write_temp("cyc.json", R"({"n": 3, "arcs": [[0,1],[1,2],[2,0]]})");
  r = run({"moralize", cyc});
  CHECK(r.code == cli::kUsageError);
  CHECK(r.err.find("cycle") != std::string::npos);
  CHECK(run({"verify", "--n", "9", "--exhaustive"}).code == cli::kUsageError);
  CHECK(run({"verify", "--n", "5"}).code == cli::kUsageError);
  CHECK(run({"verify", "--n", "5", "--exhaustive", "--checks", "nope"}).code == cli::kUsageError);
  std::remove(bad.c_str());
  std::remove(cyc.c_str());
}

TEST_CASE("verify output is identical across runs and job counts") {
  const auto a = run({"verify", "--n", "8", "--random", "--samples", "2000", "--seed", "3", "--jobs", "1"});
  const auto b = run({"verify", "--n", "8", "--random", "--samples", "2000", "--seed", "3", "--jobs", "3"});
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  const auto j = json::parse(a.out);
  CHECK(j["digraphs_checked"] == 2000);
  CHECK(j["ok"] == true);
  const auto e = run({"verify", "--n", "5", "--exhaustive", "--checks", "k5,care_bounds", "--dedup"});
  CHECK(e.code == 0);
  CHECK(json::parse(e.out)["tallies"].size() == 2);
}

TEST_CASE("replay files") {
  const auto path = write_temp("replay.jsonl",
                               R"({"check":"k5","n":5,"arcs":[[0,1],[0,3],[1,2],[1,4],[2,3],[3,4]],"detail":""})"
                               "\n");
  const auto r = run({"verify", "--replay", path});
  CHECK(r.code == 0);
  CHECK(json::parse(r.out)["records"][0]["reproduced"] == false);
  const auto bad = write_temp("replay_bad.jsonl", "{\"check\":\"zzz\",\"n\":1,\"arcs\":[]}\n");
  const auto rb = run({"verify", "--replay", bad});
  CHECK(rb.code == cli::kUsageError);
  CHECK(rb.err.find("record 1") != std::string::npos);
  std::remove(path.c_str());
  std::remove(bad.c_str());
}

TEST_CASE("classify, census, scan, phi and remark") {
  auto r = run({"census", "--k", "4", "--k", "5", "--k", "6"});
  CHECK(r.code == 0);
  const auto census = json::parse(r.out)["census"];
  CHECK(census[0]["classes"] == 3);
  CHECK(census[1]["classes"] == 3);
  CHECK(census[2]["classes"] == 8);

  r = run({"classify-cycle", "--k", "6", "--extra", "2", "--jobs", "1"});
  CHECK(r.code == 0);
  CHECK(json::parse(r.out)["catalog_consistent"] == true);

  const auto c7 = write_temp("c7.json", R"({"n": 7, "arcs": [[0,1],[2,1],[2,3],[4,3],[4,5],[6,5],[0,6]]})");
  r = run({"scan", c7});
  CHECK(r.code == cli::kPropertyFails);
  CHECK(json::parse(r.out)["matches"][0]["rule"] == "length");

  const auto p5 = write_temp("p5.json", R"({"n": 5, "arcs": [[0,1],[1,2],[2,3],[3,4],[0,4]]})");
  r = run({"phi", p5});
  CHECK(r.code == 0);
  CHECK(json::parse(r.out)["map"][0]["image"] == json::parse("[0,1,2,3,4]"));

  r = run({"remark", "--max-n", "10", "--seed", "1"});
  CHECK(r.code == cli::kPropertyFails);
  const auto j = json::parse(r.out);
  CHECK(j.contains("long_p_hole"));
  CHECK(j.contains("overlap"));
  std::remove(c7.c_str());
  std::remove(p5.c_str());
}
