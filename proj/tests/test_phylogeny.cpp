#include <random>

#include "doctest.h"
#include "moral/chordal.hpp"
#include "moral/phylogeny.hpp"
#include "moral/verifier.hpp"

using namespace moral;

namespace {

const Digraph kExample(5, {{0, 1}, {0, 3}, {1, 2}, {1, 4}, {2, 3}, {3, 4}});

SimpleGraph competition_oracle(const Digraph& d) {
  const int n = d.vertex_count();
  SimpleGraph g(n);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      for (int w = 0; w < n; ++w)
        if (d.has_arc(u, w) && d.has_arc(v, w)) {
          g.add_edge(u, v);
          break;
        }
  return g;
}

Digraph random_bounded(std::mt19937_64& rng, int n, const DegreeBounds& b) {
  return random_digraph(n, b, rng());
}

}  // namespace

TEST_CASE("worked example: P(D) is K4 plus the vertex 4") {
  const auto c = competition_graph(kExample);
  CHECK(c.edges() == std::vector<Edge>{{0, 2}, {1, 3}});
  const auto p = phylogeny_graph(kExample);
  CHECK(p.edge_count() == 8);
  for (int u = 0; u < 4; ++u)
    for (int v = u + 1; v < 4; ++v) CHECK(p.adjacent(u, v));
  CHECK(clique_number(p) == 4);
  CHECK(chordal(p));

  const auto cared = cared_edges(kExample);
  REQUIRE(cared.size() == 2);
  CHECK(cared[0] == CaredEdge{0, 2, bit(3)});
  CHECK(cared[1] == CaredEdge{1, 3, bit(4)});
}

TEST_CASE("competition graph matches the cubic oracle") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 500; ++trial) {
    const DegreeBounds b(1 + trial % 3, 1 + (trial / 3) % 3);
    const Digraph d = random_bounded(rng, 2 + trial % 12, b);
    CHECK(competition_graph(d) == competition_oracle(d));
  }
}

TEST_CASE("phylogeny graph is the union and cared edges are the difference") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 300; ++trial) {
    const Digraph d = random_bounded(rng, 2 + trial % 10, DegreeBounds(2, 2));
    const auto u = underlying_graph(d);
    const auto c = competition_graph(d);
    const auto p = phylogeny_graph(d);
    std::size_t cared = 0;
    for (int x = 0; x < d.vertex_count(); ++x)
      for (int y = x + 1; y < d.vertex_count(); ++y) {
        CHECK(p.adjacent(x, y) == (u.adjacent(x, y) || c.adjacent(x, y)));
        if (p.adjacent(x, y) && !u.adjacent(x, y)) ++cared;
      }
    const auto list = cared_edges(d);
    CHECK(list.size() == cared);
    for (const auto& e : list) {
      CHECK(e.u < e.v);
      CHECK(e.carers == (d.out_neighbors(e.u) & d.out_neighbors(e.v)));
    }
  }
}

TEST_CASE("adding an arc never removes an edge of P(D)") {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 3 + trial % 8;
    Digraph d = random_bounded(rng, n, DegreeBounds(2, 2));
    const auto before = phylogeny_graph(d);
    const int a = static_cast<int>(rng() % n);
    const int b = static_cast<int>(rng() % n);
    if (a >= b || d.has_arc(a, b)) continue;
    d.add_arc(a, b);
    if (!is_acyclic(d)) continue;
    const auto after = phylogeny_graph(d);
    for (auto [x, y] : before.edges()) CHECK(after.adjacent(x, y));
  }
}

TEST_CASE("directed cycles are rejected") {
  Digraph cyc(3, {{0, 1}, {1, 2}, {2, 0}});
  CHECK_THROWS_AS(competition_graph(cyc), NotAcyclicError);
  CHECK_THROWS_AS(phylogeny_graph(cyc), NotAcyclicError);
  CHECK_THROWS_AS(cared_edges(cyc), NotAcyclicError);
}

TEST_CASE("care bounds for (2,2) digraphs") {
  const auto r = care_bound_check(kExample, DegreeBounds(2, 2));
  CHECK(r.carer_limit == 1);
  CHECK(r.incidence_limit == 2);
  CHECK_FALSE(r.flagged);
  CHECK(r.per_carer_count[3] == 1);
  CHECK(r.per_carer_count[4] == 1);
  CHECK(r.per_vertex_incidence[1] == 1);
  CHECK(r.max_carer_count() == 1);
  CHECK(r.max_incidence() == 1);

  // vertex 2 meets two cared edges: 02 (carer 3) and 12 (carer 4)
  Digraph two(5, {{0, 3}, {2, 3}, {1, 4}, {2, 4}});
  const auto t = care_bound_check(two, DegreeBounds(2, 2));
  CHECK(t.per_vertex_incidence[2] == 2);
  CHECK_FALSE(t.flagged);
}

TEST_CASE("care bounds for general (i,j)") {
  Digraph star(4, {{0, 3}, {1, 3}, {2, 3}});
  const auto r = care_bound_check(star, DegreeBounds(3, 1));
  CHECK(r.carer_limit == 3);
  CHECK(r.incidence_limit == 3);
  CHECK(r.per_carer_count[3] == 3);
  CHECK_FALSE(r.flagged);
  CHECK_THROWS_AS(care_bound_check(star, DegreeBounds(2, 2)), std::invalid_argument);

  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 300; ++trial) {
    const DegreeBounds b(1 + trial % 4, 1 + (trial / 4) % 3);
    const Digraph d = random_bounded(rng, 4 + trial % 12, b);
    const auto rep = care_bound_check(d, b);
    CHECK_FALSE(rep.flagged);
    CHECK(rep.max_carer_count() <= b.max_indegree * (b.max_indegree - 1) / 2);
    CHECK(rep.max_incidence() <= b.max_indegree * (b.max_indegree - 1) * b.max_outdegree / 2);
  }
}

TEST_CASE("is_bounded_dag") {
  CHECK(is_bounded_dag(kExample, DegreeBounds(2, 2)));
  CHECK_FALSE(is_bounded_dag(kExample, DegreeBounds(1, 2)));
  CHECK_FALSE(is_bounded_dag(Digraph(2, {{0, 1}, {1, 0}}), DegreeBounds(2, 2)));
}
