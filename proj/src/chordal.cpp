#include "moral/chordal.hpp"

#include <algorithm>
#include <deque>

namespace moral {

// ---------------------------------------------------------------------------
// Hole

Hole Hole::from_cycle(std::span<const int> cycle) {
  Hole h;
  h.vertices_.assign(cycle.begin(), cycle.end());
  auto& v = h.vertices_;
  if (v.size() > 1 && v.front() == v.back()) v.pop_back();
  if (v.empty()) return h;
  std::rotate(v.begin(), std::min_element(v.begin(), v.end()), v.end());
  if (v.size() > 2 && v[1] > v.back()) std::reverse(v.begin() + 1, v.end());
  return h;
}

std::vector<Edge> Hole::edges() const {
  std::vector<Edge> out;
  const std::size_t k = vertices_.size();
  for (std::size_t i = 0; i < k; ++i) {
    int a = vertices_[i];
    int b = vertices_[(i + 1) % k];
    out.emplace_back(std::min(a, b), std::max(a, b));
  }
  return out;
}

std::vector<int> validate_cycle(const SimpleGraph& g, std::span<const int> cycle, int min_length) {
  std::vector<int> c(cycle.begin(), cycle.end());
  if (c.size() > 1 && c.front() == c.back()) c.pop_back();
  if (static_cast<int>(c.size()) < min_length) {
    throw GraphError("cycle has " + std::to_string(c.size()) + " vertices, need at least " +
                     std::to_string(min_length));
  }
  VertexSet seen = 0;
  for (int v : c) {
    if (v < 0 || v >= g.vertex_count()) throw GraphError("cycle vertex " + std::to_string(v) + " out of range");
    if (contains(seen, v)) throw GraphError("cycle repeats vertex " + std::to_string(v));
    seen |= bit(v);
  }
  for (std::size_t i = 0; i < c.size(); ++i) {
    int a = c[i];
    int b = c[(i + 1) % c.size()];
    if (!g.adjacent(a, b)) {
      throw GraphError("not a cycle: " + std::to_string(a) + "-" + std::to_string(b) + " is not an edge");
    }
  }
  return c;
}

bool is_hole(const SimpleGraph& g, std::span<const int> cycle) {
  std::vector<int> c;
  try {
    c = validate_cycle(g, cycle, 4);
  } catch (const GraphError&) {
    return false;
  }
  const VertexSet members = to_set(c);
  const std::size_t k = c.size();
  for (std::size_t i = 0; i < k; ++i) {
    VertexSet expected = bit(c[(i + 1) % k]) | bit(c[(i + k - 1) % k]);
    if ((g.neighbors(c[i]) & members) != expected) return false;
  }
  return true;
}

Hole make_hole(const SimpleGraph& g, std::span<const int> cycle) {
  if (!is_hole(g, cycle)) throw GraphError("vertex sequence is not a hole of the graph");
  return Hole::from_cycle(cycle);
}

// ---------------------------------------------------------------------------
// Chordality

bool is_perfect_elimination_order(const SimpleGraph& g, std::span<const int> order) {
  const int n = g.vertex_count();
  if (static_cast<int>(order.size()) != n) return false;
  VertexSet later = g.all_vertices();
  VertexSet seen = 0;
  for (int v : order) {
    if (v < 0 || v >= n || contains(seen, v)) return false;
    seen |= bit(v);
  }
  for (int v : order) {
    later &= ~bit(v);
    const VertexSet nbrs = g.neighbors(v) & later;
    bool clique = true;
    for_each_vertex(nbrs, [&](int u) {
      if ((nbrs & ~bit(u) & ~g.neighbors(u)) != 0) clique = false;
    });
    if (!clique) return false;
  }
  return true;
}

std::vector<int> mcs_elimination_order(const SimpleGraph& g) {
  const int n = g.vertex_count();
  std::vector<int> weight(n, 0);
  std::vector<int> visit;
  visit.reserve(n);
  VertexSet unnumbered = g.all_vertices();
  while (unnumbered != 0) {
    int best = -1;
    for_each_vertex(unnumbered, [&](int v) {
      if (best < 0 || weight[v] > weight[best]) best = v;
    });
    visit.push_back(best);
    unnumbered &= ~bit(best);
    for_each_vertex(g.neighbors(best) & unnumbered, [&](int w) { ++weight[w]; });
  }
  std::reverse(visit.begin(), visit.end());
  return visit;
}

namespace {

// Shortest x-y path avoiding `blocked`; empty if none.
std::vector<int> shortest_path(const SimpleGraph& g, int x, int y, VertexSet blocked) {
  const int n = g.vertex_count();
  std::vector<int> parent(n, -1);
  std::deque<int> queue{x};
  VertexSet reached = bit(x);
  while (!queue.empty()) {
    int u = queue.front();
    queue.pop_front();
    if (u == y) break;
    for_each_vertex(g.neighbors(u) & ~blocked & ~reached, [&](int w) {
      reached |= bit(w);
      parent[w] = u;
      queue.push_back(w);
    });
  }
  if (!contains(reached, y)) return {};
  std::vector<int> path;
  for (int u = y; u != -1; u = parent[u]) path.push_back(u);
  std::reverse(path.begin(), path.end());
  return path;
}

// A hole through v entering via x and leaving via y, when x and y are
// non-adjacent neighbors of v joined outside the rest of N[v].
std::optional<Hole> hole_through(const SimpleGraph& g, int v, int x, int y) {
  VertexSet blocked = (g.neighbors(v) | bit(v)) & ~(bit(x) | bit(y));
  auto path = shortest_path(g, x, y, blocked);
  if (path.empty()) return std::nullopt;
  path.insert(path.begin(), v);
  return Hole::from_cycle(path);
}

std::optional<Hole> hole_at(const SimpleGraph& g, int v, VertexSet candidates) {
  std::optional<Hole> found;
  for_each_vertex(candidates, [&](int x) {
    if (found) return;
    for_each_vertex(candidates & ~prefix_mask(x + 1) & ~g.neighbors(x), [&](int y) {
      if (!found) found = hole_through(g, v, x, y);
    });
  });
  return found;
}

}  // namespace

ChordalityCertificate is_chordal(const SimpleGraph& g) {
  ChordalityCertificate cert;
  auto order = mcs_elimination_order(g);
  VertexSet later = g.all_vertices();
  for (int v : order) {
    later &= ~bit(v);
    const VertexSet nbrs = g.neighbors(v) & later;
    bool clique = true;
    for_each_vertex(nbrs, [&](int u) {
      if ((nbrs & ~bit(u) & ~g.neighbors(u)) != 0) clique = false;
    });
    if (clique) continue;
    cert.hole = hole_at(g, v, nbrs);
    if (!cert.hole) {
      // Fall back to a scan over every vertex and neighbor pair.
      for (int w = 0; w < g.vertex_count() && !cert.hole; ++w) cert.hole = hole_at(g, w, g.neighbors(w));
    }
    if (!cert.hole) throw std::logic_error("elimination order failed but no hole was found");
    return cert;
  }
  cert.elimination_order = std::move(order);
  return cert;
}

bool chordal(const SimpleGraph& g) {
  auto order = mcs_elimination_order(g);
  return is_perfect_elimination_order(g, order);
}

// ---------------------------------------------------------------------------
// Hole enumeration by growing induced paths from their least vertex.

namespace {

class HoleWalker {
 public:
  HoleWalker(const SimpleGraph& g, const std::function<bool(const Hole&)>& visit)
      : g_(g), visit_(visit) {}

  void run() {
    for (int s = 0; s < g_.vertex_count() && !stopped_; ++s) {
      start_ = s;
      allowed_ = g_.all_vertices() & ~prefix_mask(s + 1);
      path_.assign(1, s);
      for_each_vertex(g_.neighbors(s) & allowed_, [&](int a) {
        if (stopped_) return;
        path_.push_back(a);
        extend(bit(s) | bit(a), 0);
        path_.pop_back();
      });
    }
  }

 private:
  // inner_nbrs: neighbors of path vertices strictly between start and last.
  void extend(VertexSet on_path, VertexSet inner_nbrs) {
    const int last = path_.back();
    const VertexSet candidates = g_.neighbors(last) & allowed_ & ~on_path & ~inner_nbrs;
    const VertexSet next_inner = inner_nbrs | g_.neighbors(last);
    for_each_vertex(candidates, [&](int w) {
      if (stopped_) return;
      if (g_.adjacent(w, start_)) {
        if (path_.size() >= 3 && path_[1] < w) {
          path_.push_back(w);
          if (!visit_(Hole::from_cycle(path_))) stopped_ = true;
          path_.pop_back();
        }
        return;
      }
      path_.push_back(w);
      extend(on_path | bit(w), next_inner);
      path_.pop_back();
    });
  }

  const SimpleGraph& g_;
  const std::function<bool(const Hole&)>& visit_;
  std::vector<int> path_;
  VertexSet allowed_ = 0;
  int start_ = 0;
  bool stopped_ = false;
};

}  // namespace

void for_each_hole(const SimpleGraph& g, const std::function<bool(const Hole&)>& visit, int cap) {
  if (g.vertex_count() > cap) {
    throw GraphError("hole enumeration is capped at " + std::to_string(cap) + " vertices, got " +
                     std::to_string(g.vertex_count()));
  }
  HoleWalker(g, visit).run();
}

std::vector<Hole> enumerate_holes(const SimpleGraph& g, int cap) {
  std::vector<Hole> holes;
  for_each_hole(g, [&](const Hole& h) {
    holes.push_back(h);
    return true;
  }, cap);
  std::sort(holes.begin(), holes.end());
  return holes;
}

// ---------------------------------------------------------------------------
// Structural utilities

std::vector<int> simplicial_vertices(const SimpleGraph& g) {
  std::vector<int> out;
  for (int v = 0; v < g.vertex_count(); ++v) {
    const VertexSet nbrs = g.neighbors(v);
    bool clique = true;
    for_each_vertex(nbrs, [&](int u) {
      if ((nbrs & ~bit(u) & ~g.neighbors(u)) != 0) clique = false;
    });
    if (clique) out.push_back(v);
  }
  return out;
}

std::vector<int> opposite_to_chord_vertices(const SimpleGraph& g, std::span<const int> cycle) {
  auto c = validate_cycle(g, cycle, 4);
  const std::size_t k = c.size();
  std::vector<int> out;
  for (std::size_t i = 0; i < k; ++i) {
    if (g.adjacent(c[(i + k - 1) % k], c[(i + 1) % k])) out.push_back(c[i]);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::optional<int> common_neighbor_on_cycle(const SimpleGraph& g, std::span<const int> cycle, int x,
                                            int y) {
  auto c = validate_cycle(g, cycle, 3);
  const std::size_t k = c.size();
  bool on_cycle = false;
  for (std::size_t i = 0; i < k; ++i) {
    int a = c[i];
    int b = c[(i + 1) % k];
    if ((a == x && b == y) || (a == y && b == x)) on_cycle = true;
  }
  if (!on_cycle) {
    throw GraphError("edge " + std::to_string(x) + "-" + std::to_string(y) + " is not on the cycle");
  }
  const VertexSet common = to_set(c) & g.neighbors(x) & g.neighbors(y);
  if (common == 0) return std::nullopt;
  return std::countr_zero(common);
}

SimpleGraph w_configuration() {
  SimpleGraph w(7);
  for (int i = 0; i < 7; ++i) {
    for (int j = i + 1; j < 7 && j - i <= 2; ++j) w.add_edge(i, j);
  }
  return w;
}

namespace {

class WEmbedder {
 public:
  explicit WEmbedder(const SimpleGraph& g) : g_(g), pattern_(w_configuration()) {}

  std::optional<std::array<int, 7>> run() {
    if (g_.edge_count() < pattern_.edge_count()) return std::nullopt;
    if (place(0, 0)) return image_;
    return std::nullopt;
  }

 private:
  // Pattern vertices are placed in index order; each has an earlier neighbor
  // except vertex 0.
  bool place(int p, VertexSet used) {
    if (p == 7) return true;
    VertexSet candidates = g_.all_vertices() & ~used;
    for (int q = 0; q < p; ++q) {
      if (pattern_.adjacent(p, q)) candidates &= g_.neighbors(image_[q]);
    }
    const int need = pattern_.degree(p);
    bool done = false;
    for_each_vertex(candidates, [&](int v) {
      if (done || g_.degree(v) < need) return;
      image_[p] = v;
      if (place(p + 1, used | bit(v))) done = true;
    });
    return done;
  }

  const SimpleGraph& g_;
  SimpleGraph pattern_;
  std::array<int, 7> image_{};
};

int max_clique(const SimpleGraph& g, VertexSet candidates, int size, int best) {
  if (candidates == 0) return std::max(size, best);
  while (candidates != 0) {
    if (size + popcount(candidates) <= best) return best;
    int v = std::countr_zero(candidates);
    candidates &= ~bit(v);
    best = max_clique(g, candidates & g.neighbors(v), size + 1, best);
  }
  return std::max(size, best);
}

}  // namespace

std::optional<std::array<int, 7>> contains_w_configuration(const SimpleGraph& g) {
  return WEmbedder(g).run();
}

int clique_number(const SimpleGraph& g) { return max_clique(g, g.all_vertices(), 0, 0); }

}  // namespace moral
