#include <map>
#include <random>
#include <set>

#include "doctest.h"
#include "moral/graph_core.hpp"
#include "moral/verifier.hpp"
#include "support.hpp"

using namespace moral;

TEST_CASE("digraph construction and queries") {
  Digraph d(4, {{0, 1}, {0, 2}, {2, 3}});
  CHECK(d.vertex_count() == 4);
  CHECK(d.arc_count() == 3);
  CHECK(d.has_arc(0, 2));
  CHECK_FALSE(d.has_arc(2, 0));
  CHECK(d.out_neighbors(0) == (bit(1) | bit(2)));
  CHECK(d.in_neighbors(3) == bit(2));
  CHECK(d.outdegree(0) == 2);
  CHECK(d.indegree(0) == 0);
  CHECK(d.arcs() == std::vector<Arc>{{0, 1}, {0, 2}, {2, 3}});
  d.remove_arc(0, 1);
  CHECK(d.arc_count() == 2);
}

TEST_CASE("digraph rejects loops, duplicates and out-of-range arcs") {
  CHECK_THROWS_AS(Digraph(3, {{1, 1}}), GraphError);
  CHECK_THROWS_AS(Digraph(3, {{0, 1}, {0, 1}}), GraphError);
  CHECK_THROWS_AS(Digraph(3, {{0, 3}}), GraphError);
  CHECK_THROWS_AS(Digraph(-1, {}), GraphError);
  CHECK_THROWS_AS(Digraph(kMaxVertices + 1, {}), GraphError);
  CHECK_NOTHROW(Digraph(3, {{0, 1}, {1, 0}}));
}

TEST_CASE("simple graph construction") {
  SimpleGraph g(4, {{0, 1}, {2, 1}, {3, 0}});
  CHECK(g.edge_count() == 3);
  CHECK(g.adjacent(1, 2));
  CHECK(g.edges() == std::vector<Edge>{{0, 1}, {0, 3}, {1, 2}});
  CHECK(g.degree(0) == 2);
  CHECK_THROWS_AS(SimpleGraph(3, {{1, 1}}), GraphError);
  CHECK_THROWS_AS(SimpleGraph(3, {{0, 5}}), GraphError);
}

TEST_CASE("degree bounds") {
  CHECK_THROWS_AS(DegreeBounds(0, 2), std::invalid_argument);
  Digraph d(4, {{0, 3}, {1, 3}, {2, 3}});
  auto v = check_degree_bounds(d, DegreeBounds(2, 2));
  REQUIRE(v);
  CHECK(v->vertex == 3);
  CHECK_FALSE(check_degree_bounds(d, DegreeBounds(3, 1)));
}

TEST_CASE("topological order and cycle witness") {
  Digraph dag(4, {{3, 1}, {1, 0}, {2, 0}});
  auto r = topological_order(dag);
  CHECK(r.acyclic());
  CHECK(r.order == std::vector<int>{2, 3, 1, 0});
  CHECK_NOTHROW(require_acyclic(dag));

  Digraph cyc(4, {{0, 1}, {1, 2}, {2, 0}, {2, 3}});
  auto c = topological_order(cyc);
  CHECK_FALSE(c.acyclic());
  CHECK(c.cycle == std::vector<int>{0, 1, 2, 0});
  CHECK_THROWS_AS(require_acyclic(cyc), NotAcyclicError);
  CHECK_FALSE(is_acyclic(Digraph(2, {{0, 1}, {1, 0}})));
}

TEST_CASE("induced subgraphs and underlying graph commute") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 3 + trial % 7;
    Digraph d = random_digraph(n, DegreeBounds(2, 2), trial);
    const VertexSet s = rng() & prefix_mask(n);
    auto a = induced_subgraph(underlying_graph(d), s);
    auto b = induced_subdigraph(d, s);
    CHECK(a.original == b.original);
    CHECK(a.graph == underlying_graph(b.graph));
    CHECK(check_degree_bounds(b.graph, DegreeBounds(2, 2)) == std::nullopt);
  }
}

TEST_CASE("canonical form is invariant under relabeling") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 1 + trial % 12;
    Digraph d = random_digraph(n, DegreeBounds(2, 2), 1000 + trial);
    const auto perm = testing::random_permutation(rng, n);
    CHECK(canonical_form(d) == canonical_form(permuted(d, perm)));
  }
}

TEST_CASE("canonical form separates non-isomorphic digraphs") {
  Digraph path(3, {{0, 1}, {1, 2}});
  Digraph out_star(3, {{0, 1}, {0, 2}});
  Digraph in_star(3, {{1, 0}, {2, 0}});
  CHECK(canonical_form(path) != canonical_form(out_star));
  CHECK(canonical_form(out_star) != canonical_form(in_star));
  CHECK(canonical_form(Digraph(3, {})) != canonical_form(Digraph(4, {})));
  CHECK_THROWS_AS(canonical_form(Digraph(kCanonicalFormMaxVertices + 1, {})), GraphError);
}

namespace {

// Brute-force canonical key: least arc list over all permutations.
std::vector<Arc> brute_key(const Digraph& d) {
  std::vector<int> perm(d.vertex_count());
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<Arc> best;
  bool first = true;
  do {
    auto arcs = permuted(d, perm).arcs();
    if (first || arcs < best) best = arcs;
    first = false;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

}  // namespace

TEST_CASE("isomorphism classes agree with brute force on small DAGs") {
  for (int n = 1; n <= 5; ++n) {
    SweepScope scope{SweepMode::exhaustive, n, DegreeBounds(2, 2)};
    std::map<std::vector<Arc>, CanonicalForm> seen;
    std::set<CanonicalForm> forms;
    for (const auto& d : enumerate_digraphs(scope)) {
      auto key = brute_key(d);
      auto form = canonical_form(d);
      auto [it, inserted] = seen.emplace(key, form);
      if (!inserted) CHECK(it->second == form);
      forms.insert(form);
    }
    CHECK(forms.size() == seen.size());
  }
}

TEST_CASE("permuted rejects non-permutations") {
  Digraph d(3, {{0, 1}});
  std::vector<int> bad{0, 0, 1};
  CHECK_THROWS_AS(permuted(d, bad), GraphError);
}
