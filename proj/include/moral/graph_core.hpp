#pragma once

#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace moral {

/// Vertex sets are 64-bit masks; every graph in this library has at most
/// kMaxVertices vertices.
using VertexSet = std::uint64_t;
inline constexpr int kMaxVertices = 64;

inline constexpr VertexSet bit(int v) { return VertexSet{1} << v; }
inline constexpr bool contains(VertexSet s, int v) { return (s >> v) & 1U; }
inline int popcount(VertexSet s) { return std::popcount(s); }
inline VertexSet prefix_mask(int n) { return n >= 64 ? ~VertexSet{0} : bit(n) - 1; }

/// Calls f(v) for every member of s in increasing order.
template <typename F>
void for_each_vertex(VertexSet s, F&& f) {
  while (s != 0) {
    int v = std::countr_zero(s);
    s &= s - 1;
    f(v);
  }
}

std::vector<int> to_vector(VertexSet s);
VertexSet to_set(std::span<const int> vertices);

/// Raised for malformed graph input: loops, duplicates, indices out of range.
class GraphError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when an operation that requires an acyclic digraph is handed one
/// with a directed cycle.
class NotAcyclicError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

using Arc = std::pair<int, int>;
using Edge = std::pair<int, int>;

/// Simple digraph on vertices 0..n-1. Loops and parallel arcs are rejected
/// at construction; acyclicity is checked separately by topological_order.
class Digraph {
 public:
  Digraph() = default;

  /// Throws GraphError on a loop, a duplicate arc or an out-of-range index.
  Digraph(int vertex_count, std::span<const Arc> arcs);
  Digraph(int vertex_count, std::initializer_list<Arc> arcs)
      : Digraph(vertex_count, std::span<const Arc>(arcs.begin(), arcs.size())) {}

  int vertex_count() const { return n_; }
  std::size_t arc_count() const { return arc_count_; }

  /// Arcs sorted by (tail, head).
  std::vector<Arc> arcs() const;

  bool has_arc(int tail, int head) const { return contains(out_[tail], head); }
  VertexSet out_neighbors(int v) const { return out_[v]; }
  VertexSet in_neighbors(int v) const { return in_[v]; }
  int outdegree(int v) const { return popcount(out_[v]); }
  int indegree(int v) const { return popcount(in_[v]); }

  /// Adds one arc; same validation as the constructor.
  void add_arc(int tail, int head);
  void remove_arc(int tail, int head);

  friend bool operator==(const Digraph& a, const Digraph& b) {
    return a.n_ == b.n_ && a.out_ == b.out_;
  }

 private:
  int n_ = 0;
  std::size_t arc_count_ = 0;
  std::vector<VertexSet> out_;
  std::vector<VertexSet> in_;
};

Digraph make_digraph(int vertex_count, std::span<const Arc> arcs);

/// Simple undirected graph on vertices 0..n-1 with bitset adjacency.
class SimpleGraph {
 public:
  SimpleGraph() = default;
  explicit SimpleGraph(int vertex_count);

  /// Throws GraphError on a loop, a duplicate edge or an out-of-range index.
  SimpleGraph(int vertex_count, std::span<const Edge> edges);
  SimpleGraph(int vertex_count, std::initializer_list<Edge> edges)
      : SimpleGraph(vertex_count, std::span<const Edge>(edges.begin(), edges.size())) {}

  int vertex_count() const { return n_; }
  std::size_t edge_count() const;

  /// Edges as (min, max) pairs in lexicographic order.
  std::vector<Edge> edges() const;

  bool adjacent(int u, int v) const { return contains(adj_[u], v); }
  VertexSet neighbors(int v) const { return adj_[v]; }
  int degree(int v) const { return popcount(adj_[v]); }
  VertexSet all_vertices() const { return prefix_mask(n_); }

  /// Inserts uv if absent. Loops and out-of-range indices throw.
  void add_edge(int u, int v);

  friend bool operator==(const SimpleGraph& a, const SimpleGraph& b) {
    return a.n_ == b.n_ && a.adj_ == b.adj_;
  }

 private:
  int n_ = 0;
  std::vector<VertexSet> adj_;
};

SimpleGraph make_graph(int vertex_count, std::span<const Edge> edges);

/// Maximum in/out degree for an (i,j) digraph.
struct DegreeBounds {
  int max_indegree = 2;
  int max_outdegree = 2;

  DegreeBounds() = default;
  DegreeBounds(int i, int j);

  friend bool operator==(const DegreeBounds&, const DegreeBounds&) = default;
};

/// Either a topological order or a directed cycle (closed: first == last).
struct TopologicalResult {
  std::vector<int> order;
  std::vector<int> cycle;

  bool acyclic() const { return cycle.empty(); }
};

TopologicalResult topological_order(const Digraph& d);
bool is_acyclic(const Digraph& d);

/// Throws NotAcyclicError carrying the cycle witness.
void require_acyclic(const Digraph& d);

struct DegreeViolation {
  int vertex;
  int indegree;
  int outdegree;
};

std::optional<DegreeViolation> check_degree_bounds(const Digraph& d, const DegreeBounds& b);

/// Induced substructure with its relabeling: original[k] is the vertex of the
/// parent that became vertex k.
template <typename G>
struct Induced {
  G graph;
  std::vector<int> original;
};

/// Members of s are sorted and relabeled densely in increasing order.
Induced<Digraph> induced_subdigraph(const Digraph& d, std::span<const int> s);
Induced<SimpleGraph> induced_subgraph(const SimpleGraph& g, std::span<const int> s);
Induced<Digraph> induced_subdigraph(const Digraph& d, VertexSet s);
Induced<SimpleGraph> induced_subgraph(const SimpleGraph& g, VertexSet s);

SimpleGraph underlying_graph(const Digraph& d);

/// Relabels vertex v to perm[v].
Digraph permuted(const Digraph& d, std::span<const int> perm);

/// Isomorphism-invariant encoding of a digraph: the vertex count followed by
/// the adjacency matrix under a canonical vertex order.
struct CanonicalForm {
  std::vector<std::uint8_t> bytes;

  friend auto operator<=>(const CanonicalForm&, const CanonicalForm&) = default;
  friend bool operator==(const CanonicalForm&, const CanonicalForm&) = default;
};

inline constexpr int kCanonicalFormMaxVertices = 16;

/// Throws GraphError if d has more than kCanonicalFormMaxVertices vertices.
CanonicalForm canonical_form(const Digraph& d);

std::string to_string(const Digraph& d);

}  // namespace moral

template <>
struct std::hash<moral::CanonicalForm> {
  std::size_t operator()(const moral::CanonicalForm& f) const noexcept {
    std::size_t h = 1469598103934665603ULL;
    for (auto b : f.bytes) {
      h ^= b;
      h *= 1099511628211ULL;
    }
    return h;
  }
};
