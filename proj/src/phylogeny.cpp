#include "moral/phylogeny.hpp"

#include <algorithm>

namespace moral {

namespace {

SimpleGraph competition_unchecked(const Digraph& d) {
  const int n = d.vertex_count();
  SimpleGraph c(n);
  for (int w = 0; w < n; ++w) {
    VertexSet preds = d.in_neighbors(w);
    for_each_vertex(preds, [&](int u) {
      for_each_vertex(preds & ~prefix_mask(u + 1), [&](int v) { c.add_edge(u, v); });
    });
  }
  return c;
}

}  // namespace

SimpleGraph competition_graph(const Digraph& d) {
  require_acyclic(d);
  return competition_unchecked(d);
}

SimpleGraph phylogeny_graph(const Digraph& d) {
  require_acyclic(d);
  SimpleGraph p = competition_unchecked(d);
  for (auto [t, h] : d.arcs()) p.add_edge(t, h);
  return p;
}

std::vector<CaredEdge> cared_edges(const Digraph& d) {
  require_acyclic(d);
  const int n = d.vertex_count();
  std::vector<CaredEdge> out;
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      if (d.has_arc(u, v) || d.has_arc(v, u)) continue;
      VertexSet common = d.out_neighbors(u) & d.out_neighbors(v);
      if (common != 0) out.push_back({u, v, common});
    }
  }
  return out;
}

int CareReport::max_carer_count() const {
  return per_carer_count.empty() ? 0 : *std::max_element(per_carer_count.begin(), per_carer_count.end());
}

int CareReport::max_incidence() const {
  return per_vertex_incidence.empty()
             ? 0
             : *std::max_element(per_vertex_incidence.begin(), per_vertex_incidence.end());
}

CareReport care_bound_check(const Digraph& d, const DegreeBounds& b) {
  if (auto bad = check_degree_bounds(d, b)) {
    throw std::invalid_argument("vertex " + std::to_string(bad->vertex) + " has indegree " +
                                std::to_string(bad->indegree) + " and outdegree " +
                                std::to_string(bad->outdegree) + ", exceeding (" +
                                std::to_string(b.max_indegree) + "," +
                                std::to_string(b.max_outdegree) + ")");
  }
  CareReport report;
  report.cared_edges = cared_edges(d);
  const int n = d.vertex_count();
  report.per_carer_count.assign(n, 0);
  report.per_vertex_incidence.assign(n, 0);
  for (const auto& e : report.cared_edges) {
    for_each_vertex(e.carers, [&](int w) { ++report.per_carer_count[w]; });
    ++report.per_vertex_incidence[e.u];
    ++report.per_vertex_incidence[e.v];
  }
  const int i = b.max_indegree;
  report.carer_limit = i * (i - 1) / 2;
  report.incidence_limit = i * (i - 1) * b.max_outdegree / 2;
  report.flagged = report.max_carer_count() > report.carer_limit ||
                   report.max_incidence() > report.incidence_limit;
  return report;
}

bool is_bounded_dag(const Digraph& d, const DegreeBounds& b) {
  return !check_degree_bounds(d, b) && is_acyclic(d);
}

}  // namespace moral
