#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include "moral/chordal.hpp"
#include "moral/graph_core.hpp"

namespace moral::testing {

inline SimpleGraph random_graph(std::mt19937_64& rng, int n, double p) {
  std::bernoulli_distribution coin(p);
  SimpleGraph g(n);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (coin(rng)) g.add_edge(u, v);
  return g;
}

// Built in reverse elimination order: each new vertex joins a random subset of
// a random clique of the graph so far, then labels are shuffled.
inline SimpleGraph random_chordal_graph(std::mt19937_64& rng, int n, int max_attach = 4) {
  std::vector<std::vector<int>> cliques{{0}};
  std::vector<std::pair<int, int>> edges;
  for (int v = 1; v < n; ++v) {
    auto& base = cliques[std::uniform_int_distribution<std::size_t>(0, cliques.size() - 1)(rng)];
    std::vector<int> pick = base;
    std::shuffle(pick.begin(), pick.end(), rng);
    const int keep = std::uniform_int_distribution<int>(0, std::min<int>(max_attach, pick.size()))(rng);
    pick.resize(keep);
    for (int u : pick) edges.emplace_back(u, v);
    pick.push_back(v);
    cliques.push_back(pick);
  }
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  SimpleGraph g(n);
  for (auto [u, v] : edges) g.add_edge(perm[u], perm[v]);
  return g;
}

// Chordal graphs with every degree at most max_deg: each new vertex joins a
// clique of the graph so far whose members still have spare degree.
inline SimpleGraph random_bounded_degree_chordal_graph(std::mt19937_64& rng, int n, int max_deg) {
  SimpleGraph g(n);
  std::vector<std::vector<int>> cliques{{0}};
  for (int v = 1; v < n; ++v) {
    std::vector<int> pick;
    for (int attempt = 0; attempt < 20; ++attempt) {
      const auto& base = cliques[std::uniform_int_distribution<std::size_t>(0, cliques.size() - 1)(rng)];
      std::vector<int> open;
      for (int u : base)
        if (g.degree(u) < max_deg) open.push_back(u);
      if (open.size() > pick.size()) pick = open;
      if (pick.size() >= 2 && std::bernoulli_distribution(0.7)(rng)) break;
    }
    std::shuffle(pick.begin(), pick.end(), rng);
    pick.resize(std::min<std::size_t>(pick.size(), std::uniform_int_distribution<std::size_t>(1, 3)(rng)));
    for (int u : pick) g.add_edge(u, v);
    pick.push_back(v);
    cliques.push_back(pick);
  }
  return g;
}

inline int max_degree(const SimpleGraph& g) {
  int best = 0;
  for (int v = 0; v < g.vertex_count(); ++v) best = std::max(best, g.degree(v));
  return best;
}

// Every cycle of length k, each listed once per starting vertex and direction.
inline void for_each_cycle(const SimpleGraph& g, int k, const std::function<bool(const std::vector<int>&)>& visit) {
  std::vector<int> path;
  bool stop = false;
  std::function<void(VertexSet)> extend = [&](VertexSet used) {
    if (stop) return;
    const int last = path.back();
    if (static_cast<int>(path.size()) == k) {
      if (g.adjacent(last, path.front()) && !visit(path)) stop = true;
      return;
    }
    for (int w = path.front() + 1; w < g.vertex_count(); ++w) {
      if (contains(used, w) || !g.adjacent(last, w)) continue;
      path.push_back(w);
      extend(used | bit(w));
      path.pop_back();
      if (stop) return;
    }
  };
  for (int s = 0; s < g.vertex_count() && !stop; ++s) {
    path = {s};
    extend(bit(s));
  }
}

// Holes by brute force over vertex subsets: a subset of size >= 4 inducing a
// connected 2-regular graph.
inline std::size_t brute_force_hole_count(const SimpleGraph& g) {
  const int n = g.vertex_count();
  std::size_t count = 0;
  for (VertexSet s = 1; s < (VertexSet{1} << n); ++s) {
    if (popcount(s) < 4) continue;
    bool regular = true;
    for_each_vertex(s, [&](int v) { regular = regular && popcount(g.neighbors(v) & s) == 2; });
    if (!regular) continue;
    const int start = std::countr_zero(s);
    VertexSet seen = bit(start);
    VertexSet frontier = seen;
    while (frontier) {
      VertexSet next = 0;
      for_each_vertex(frontier, [&](int v) { next |= g.neighbors(v) & s; });
      frontier = next & ~seen;
      seen |= next;
    }
    if (seen == s) ++count;
  }
  return count;
}

// Acyclic orientation classes of the k-cycle under the dihedral group, by
// Burnside. Reflections reverse edge directions.
inline std::uint64_t burnside_orientation_classes(int k) {
  std::uint64_t fixed = 0;
  for (int r = 0; r < k; ++r) {
    const int g = std::gcd(r, k);
    fixed += (std::uint64_t{1} << g) - 2;
  }
  // reflection s: edge i -> edge (s - i - 1) mod k with its direction reversed.
  for (int s = 0; s < k; ++s) {
    std::uint64_t count = 0;
    for (std::uint32_t mask = 0; mask < (1U << k); ++mask) {
      if (mask == 0 || mask == (1U << k) - 1) continue;
      bool ok = true;
      for (int i = 0; i < k && ok; ++i) {
        const int j = ((s - i - 1) % k + k) % k;
        ok = ((mask >> i) & 1U) != ((mask >> j) & 1U);
      }
      if (ok) ++count;
    }
    fixed += count;
  }
  return fixed / (2 * k);
}

inline std::vector<int> random_permutation(std::mt19937_64& rng, int n) {
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  return perm;
}

}  // namespace moral::testing
