#pragma once

#include <vector>

#include "moral/graph_core.hpp"

namespace moral {

/// C(D): u and v are adjacent iff they share an out-neighbor.
/// Throws NotAcyclicError when d has a directed cycle.
SimpleGraph competition_graph(const Digraph& d);

/// P(D), the moral graph: union of U(D) and C(D).
SimpleGraph phylogeny_graph(const Digraph& d);

/// An edge of P(D) that is not an edge of U(D), together with every common
/// out-neighbor of its endpoints (its carers).
struct CaredEdge {
  int u = 0;  // u < v
  int v = 0;
  VertexSet carers = 0;

  std::vector<int> carer_list() const { return to_vector(carers); }
  friend bool operator==(const CaredEdge&, const CaredEdge&) = default;
};

/// Cared edges in lexicographic order of (u, v).
std::vector<CaredEdge> cared_edges(const Digraph& d);

struct CareReport {
  std::vector<CaredEdge> cared_edges;
  /// per_carer_count[w]: number of cared edges w takes care of.
  std::vector<int> per_carer_count;
  /// per_vertex_incidence[x]: number of cared edges with x as an endpoint.
  std::vector<int> per_vertex_incidence;
  int carer_limit = 0;
  int incidence_limit = 0;
  bool flagged = false;

  int max_carer_count() const;
  int max_incidence() const;
};

/// Checks the cared-edge limits of an (i,j) digraph: a carer handles at most
/// i(i-1)/2 edges and a vertex meets at most i(i-1)j/2 cared edges.
/// Throws std::invalid_argument if d violates the bounds themselves.
CareReport care_bound_check(const Digraph& d, const DegreeBounds& b);

/// Bounds check plus acyclicity, the standing precondition for (i,j) digraphs.
bool is_bounded_dag(const Digraph& d, const DegreeBounds& b);

}  // namespace moral
