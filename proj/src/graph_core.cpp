#include "moral/graph_core.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace moral {

std::vector<int> to_vector(VertexSet s) {
  std::vector<int> out;
  out.reserve(popcount(s));
  for_each_vertex(s, [&](int v) { out.push_back(v); });
  return out;
}

VertexSet to_set(std::span<const int> vertices) {
  VertexSet s = 0;
  for (int v : vertices) s |= bit(v);
  return s;
}

namespace {

void check_vertex_count(int n) {
  if (n < 0 || n > kMaxVertices) {
    throw GraphError("vertex count " + std::to_string(n) + " outside 0.." +
                     std::to_string(kMaxVertices));
  }
}

void check_index(int n, int v) {
  if (v < 0 || v >= n) {
    throw GraphError("vertex index " + std::to_string(v) + " out of range for " +
                     std::to_string(n) + " vertices");
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// Digraph

Digraph::Digraph(int vertex_count, std::span<const Arc> arcs)
    : n_(vertex_count) {
  check_vertex_count(vertex_count);
  out_.assign(n_, 0);
  in_.assign(n_, 0);
  for (auto [t, h] : arcs) add_arc(t, h);
}

void Digraph::add_arc(int tail, int head) {
  check_index(n_, tail);
  check_index(n_, head);
  if (tail == head) throw GraphError("loop at vertex " + std::to_string(tail));
  if (has_arc(tail, head)) {
    throw GraphError("duplicate arc (" + std::to_string(tail) + "," + std::to_string(head) + ")");
  }
  out_[tail] |= bit(head);
  in_[head] |= bit(tail);
  ++arc_count_;
}

void Digraph::remove_arc(int tail, int head) {
  if (!has_arc(tail, head)) return;
  out_[tail] &= ~bit(head);
  in_[head] &= ~bit(tail);
  --arc_count_;
}

std::vector<Arc> Digraph::arcs() const {
  std::vector<Arc> out;
  out.reserve(arc_count_);
  for (int t = 0; t < n_; ++t) {
    for_each_vertex(out_[t], [&](int h) { out.emplace_back(t, h); });
  }
  return out;
}

Digraph make_digraph(int vertex_count, std::span<const Arc> arcs) {
  return Digraph(vertex_count, arcs);
}

// ---------------------------------------------------------------------------
// SimpleGraph

SimpleGraph::SimpleGraph(int vertex_count) : n_(vertex_count) {
  check_vertex_count(vertex_count);
  adj_.assign(n_, 0);
}

SimpleGraph::SimpleGraph(int vertex_count, std::span<const Edge> edges)
    : SimpleGraph(vertex_count) {
  for (auto [u, v] : edges) {
    check_index(n_, u);
    check_index(n_, v);
    if (adjacent(u, v)) {
      throw GraphError("duplicate edge " + std::to_string(u) + "-" + std::to_string(v));
    }
    add_edge(u, v);
  }
}

void SimpleGraph::add_edge(int u, int v) {
  check_index(n_, u);
  check_index(n_, v);
  if (u == v) throw GraphError("loop at vertex " + std::to_string(u));
  adj_[u] |= bit(v);
  adj_[v] |= bit(u);
}

std::size_t SimpleGraph::edge_count() const {
  std::size_t twice = 0;
  for (auto a : adj_) twice += popcount(a);
  return twice / 2;
}

std::vector<Edge> SimpleGraph::edges() const {
  std::vector<Edge> out;
  for (int u = 0; u < n_; ++u) {
    for_each_vertex(adj_[u] & ~prefix_mask(u + 1), [&](int v) { out.emplace_back(u, v); });
  }
  return out;
}

SimpleGraph make_graph(int vertex_count, std::span<const Edge> edges) {
  return SimpleGraph(vertex_count, edges);
}

DegreeBounds::DegreeBounds(int i, int j) : max_indegree(i), max_outdegree(j) {
  if (i < 1 || j < 1) {
    throw std::invalid_argument("degree bounds must be positive, got (" + std::to_string(i) +
                                "," + std::to_string(j) + ")");
  }
}

// ---------------------------------------------------------------------------
// Acyclicity

TopologicalResult topological_order(const Digraph& d) {
  const int n = d.vertex_count();
  TopologicalResult result;
  std::vector<int> remaining_in(n);
  std::vector<int> ready;
  for (int v = 0; v < n; ++v) {
    remaining_in[v] = d.indegree(v);
    if (remaining_in[v] == 0) ready.push_back(v);
  }
  // Pop the least ready vertex so the order is deterministic.
  std::make_heap(ready.begin(), ready.end(), std::greater<>());
  VertexSet placed = 0;
  while (!ready.empty()) {
    std::pop_heap(ready.begin(), ready.end(), std::greater<>());
    int v = ready.back();
    ready.pop_back();
    result.order.push_back(v);
    placed |= bit(v);
    for_each_vertex(d.out_neighbors(v), [&](int w) {
      if (--remaining_in[w] == 0) {
        ready.push_back(w);
        std::push_heap(ready.begin(), ready.end(), std::greater<>());
      }
    });
  }
  if (static_cast<int>(result.order.size()) == n) return result;

  // Every unplaced vertex keeps an unplaced in-neighbor; walk backwards
  // until a vertex repeats.
  const VertexSet left = prefix_mask(n) & ~placed;
  std::vector<int> walk;
  std::vector<int> seen_at(n, -1);
  int v = std::countr_zero(left);
  while (seen_at[v] < 0) {
    seen_at[v] = static_cast<int>(walk.size());
    walk.push_back(v);
    v = std::countr_zero(d.in_neighbors(v) & left);
  }
  std::vector<int> cycle(walk.begin() + seen_at[v], walk.end());
  std::reverse(cycle.begin(), cycle.end());
  std::rotate(cycle.begin(), std::min_element(cycle.begin(), cycle.end()), cycle.end());
  cycle.push_back(cycle.front());
  result.order.clear();
  result.cycle = std::move(cycle);
  return result;
}

bool is_acyclic(const Digraph& d) { return topological_order(d).acyclic(); }

void require_acyclic(const Digraph& d) {
  auto topo = topological_order(d);
  if (topo.acyclic()) return;
  std::ostringstream msg;
  msg << "digraph has a directed cycle:";
  for (int v : topo.cycle) msg << ' ' << v;
  throw NotAcyclicError(msg.str());
}

std::optional<DegreeViolation> check_degree_bounds(const Digraph& d, const DegreeBounds& b) {
  for (int v = 0; v < d.vertex_count(); ++v) {
    if (d.indegree(v) > b.max_indegree || d.outdegree(v) > b.max_outdegree) {
      return DegreeViolation{v, d.indegree(v), d.outdegree(v)};
    }
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Induced substructures

namespace {

std::vector<int> sorted_members(int n, std::span<const int> s) {
  std::vector<int> members(s.begin(), s.end());
  for (int v : members) check_index(n, v);
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  return members;
}

}  // namespace

Induced<Digraph> induced_subdigraph(const Digraph& d, std::span<const int> s) {
  auto members = sorted_members(d.vertex_count(), s);
  const int m = static_cast<int>(members.size());
  Digraph sub(m, {});
  for (int a = 0; a < m; ++a) {
    for (int b = 0; b < m; ++b) {
      if (d.has_arc(members[a], members[b])) sub.add_arc(a, b);
    }
  }
  return {std::move(sub), std::move(members)};
}

Induced<SimpleGraph> induced_subgraph(const SimpleGraph& g, std::span<const int> s) {
  auto members = sorted_members(g.vertex_count(), s);
  const int m = static_cast<int>(members.size());
  SimpleGraph sub(m);
  for (int a = 0; a < m; ++a) {
    for (int b = a + 1; b < m; ++b) {
      if (g.adjacent(members[a], members[b])) sub.add_edge(a, b);
    }
  }
  return {std::move(sub), std::move(members)};
}

Induced<Digraph> induced_subdigraph(const Digraph& d, VertexSet s) {
  auto v = to_vector(s);
  return induced_subdigraph(d, std::span<const int>(v));
}

Induced<SimpleGraph> induced_subgraph(const SimpleGraph& g, VertexSet s) {
  auto v = to_vector(s);
  return induced_subgraph(g, std::span<const int>(v));
}

SimpleGraph underlying_graph(const Digraph& d) {
  SimpleGraph g(d.vertex_count());
  for (auto [t, h] : d.arcs()) g.add_edge(t, h);
  return g;
}

Digraph permuted(const Digraph& d, std::span<const int> perm) {
  if (static_cast<int>(perm.size()) != d.vertex_count()) {
    throw GraphError("permutation size does not match vertex count");
  }
  Digraph out(d.vertex_count(), {});
  for (auto [t, h] : d.arcs()) out.add_arc(perm[t], perm[h]);
  return out;
}

// ---------------------------------------------------------------------------
// Canonical form: individualization-refinement over the (indegree, outdegree)
// partition, keeping the lexicographically least adjacency matrix.

namespace {

class CanonicalSearch {
 public:
  explicit CanonicalSearch(const Digraph& d) : d_(d), n_(d.vertex_count()) {}

  CanonicalForm run() {
    std::vector<int> colors(n_);
    for (int v = 0; v < n_; ++v) colors[v] = d_.indegree(v) * (kMaxVertices + 1) + d_.outdegree(v);
    compress(colors);
    search(std::move(colors));
    return CanonicalForm{std::move(best_)};
  }

 private:
  // Renumbers colors densely while keeping their relative order.
  static int compress(std::vector<int>& colors) {
    std::vector<int> values(colors);
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
    for (int& c : colors) c = static_cast<int>(std::lower_bound(values.begin(), values.end(), c) - values.begin());
    return static_cast<int>(values.size());
  }

  void refine(std::vector<int>& colors) const {
    int count = compress(colors);
    std::vector<std::vector<int>> signature(n_);
    while (true) {
      for (int v = 0; v < n_; ++v) {
        auto& sig = signature[v];
        sig.clear();
        sig.push_back(colors[v]);
        std::size_t mark = sig.size();
        for_each_vertex(d_.out_neighbors(v), [&](int w) { sig.push_back(colors[w]); });
        std::sort(sig.begin() + static_cast<std::ptrdiff_t>(mark), sig.end());
        sig.push_back(-1);
        mark = sig.size();
        for_each_vertex(d_.in_neighbors(v), [&](int w) { sig.push_back(colors[w]); });
        std::sort(sig.begin() + static_cast<std::ptrdiff_t>(mark), sig.end());
      }
      std::vector<int> idx(n_);
      std::iota(idx.begin(), idx.end(), 0);
      std::sort(idx.begin(), idx.end(), [&](int a, int b) { return signature[a] < signature[b]; });
      std::vector<int> next(n_);
      int c = 0;
      for (int k = 0; k < n_; ++k) {
        if (k > 0 && signature[idx[k]] != signature[idx[k - 1]]) ++c;
        next[idx[k]] = c;
      }
      int new_count = n_ == 0 ? 0 : c + 1;
      colors = std::move(next);
      if (new_count == count) return;
      count = new_count;
    }
  }

  bool twins(int u, int w) const {
    if (d_.has_arc(u, w) != d_.has_arc(w, u)) return false;
    const VertexSet mask = ~(bit(u) | bit(w));
    return (d_.out_neighbors(u) & mask) == (d_.out_neighbors(w) & mask) &&
           (d_.in_neighbors(u) & mask) == (d_.in_neighbors(w) & mask);
  }

  void leaf(const std::vector<int>& colors) {
    std::vector<int> order(n_);
    for (int v = 0; v < n_; ++v) order[colors[v]] = v;
    std::vector<std::uint8_t> bytes;
    bytes.reserve(1 + (n_ * n_ + 7) / 8);
    bytes.push_back(static_cast<std::uint8_t>(n_));
    std::uint8_t acc = 0;
    int filled = 0;
    for (int a = 0; a < n_; ++a) {
      for (int b = 0; b < n_; ++b) {
        acc = static_cast<std::uint8_t>((acc << 1) | (d_.has_arc(order[a], order[b]) ? 1 : 0));
        if (++filled == 8) {
          bytes.push_back(acc);
          acc = 0;
          filled = 0;
        }
      }
    }
    if (filled > 0) bytes.push_back(static_cast<std::uint8_t>(acc << (8 - filled)));
    if (!have_best_ || bytes < best_) {
      best_ = std::move(bytes);
      have_best_ = true;
    }
  }

  void search(std::vector<int> colors) {
    refine(colors);
    // Smallest color class with more than one member.
    std::vector<int> cell_size(n_, 0);
    for (int c : colors) ++cell_size[c];
    int target = -1;
    for (int c = 0; c < n_; ++c) {
      if (cell_size[c] > 1) {
        target = c;
        break;
      }
    }
    if (target < 0) {
      leaf(colors);
      return;
    }
    std::vector<int> tried;
    for (int v = 0; v < n_; ++v) {
      if (colors[v] != target) continue;
      if (std::any_of(tried.begin(), tried.end(), [&](int u) { return twins(u, v); })) continue;
      tried.push_back(v);
      std::vector<int> next(colors);
      for (int w = 0; w < n_; ++w) next[w] = 2 * colors[w] + ((colors[w] == target && w != v) ? 1 : 0);
      search(std::move(next));
    }
  }

  const Digraph& d_;
  int n_;
  std::vector<std::uint8_t> best_;
  bool have_best_ = false;
};

}  // namespace

CanonicalForm canonical_form(const Digraph& d) {
  if (d.vertex_count() > kCanonicalFormMaxVertices) {
    throw GraphError("canonical form supports at most " + std::to_string(kCanonicalFormMaxVertices) +
                     " vertices, got " + std::to_string(d.vertex_count()));
  }
  if (d.vertex_count() == 0) return CanonicalForm{{0}};
  return CanonicalSearch(d).run();
}

std::string to_string(const Digraph& d) {
  std::ostringstream out;
  out << "n=" << d.vertex_count() << " arcs={";
  bool first = true;
  for (auto [t, h] : d.arcs()) {
    out << (first ? "" : ",") << '(' << t << ',' << h << ')';
    first = false;
  }
  out << '}';
  return out.str();
}

}  // namespace moral
