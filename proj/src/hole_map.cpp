#include "moral/hole_map.hpp"

#include <algorithm>
#include <functional>

namespace moral {

namespace {

void require_two_two(const Digraph& d) {
  if (auto bad = check_degree_bounds(d, DegreeBounds(2, 2))) {
    throw std::invalid_argument("not a (2,2) digraph: vertex " + std::to_string(bad->vertex) + " has indegree " +
                                std::to_string(bad->indegree) + " and outdegree " + std::to_string(bad->outdegree));
  }
  require_acyclic(d);
}

bool joined(const Digraph& d, int u, int v) { return d.has_arc(u, v) || d.has_arc(v, u); }

std::string describe(const Hole& h) {
  std::string s;
  for (int v : h.vertices()) s += (s.empty() ? "" : "-") + std::to_string(v);
  return s;
}

}  // namespace

VertexSet ExtendingSet::carers() const {
  VertexSet s = 0;
  for (const auto& c : choices) s |= bit(c.carer);
  return s;
}

std::vector<ExtendingSet> extending_sets(const Digraph& d, const Hole& hole) {
  require_two_two(d);
  const SimpleGraph p = phylogeny_graph(d);
  if (!is_hole(p, hole.vertices())) {
    throw GraphError("cycle " + describe(hole) + " is not a hole of the phylogeny graph");
  }
  const auto& cyc = hole.vertices();
  const VertexSet on_hole = hole.vertex_set();
  struct Slot {
    int u, v;
    std::vector<int> carers;
  };
  std::vector<Slot> slots;
  VertexSet used = 0;
  for (std::size_t i = 0; i < cyc.size(); ++i) {
    int a = cyc[i];
    int b = cyc[(i + 1) % cyc.size()];
    if (joined(d, a, b)) continue;
    const VertexSet carers = d.out_neighbors(a) & d.out_neighbors(b);
    if ((carers & on_hole) != 0) {
      throw TheoremViolation("a carer of " + std::to_string(a) + "-" + std::to_string(b) + " lies on hole " +
                             describe(hole));
    }
    if ((carers & used) != 0) {
      throw TheoremViolation("a vertex takes care of two edges of hole " + describe(hole));
    }
    used |= carers;
    slots.push_back({std::min(a, b), std::max(a, b), to_vector(carers)});
  }

  std::vector<ExtendingSet> out;
  std::vector<CarerChoice> current;
  std::function<void(std::size_t)> expand = [&](std::size_t i) {
    if (i == slots.size()) {
      out.push_back({hole, current});
      return;
    }
    for (int w : slots[i].carers) {
      current.push_back({slots[i].u, slots[i].v, w});
      expand(i + 1);
      current.pop_back();
    }
  };
  expand(0);
  return out;
}

ObtainedSubgraph obtained_subgraph(const Digraph& d, const ExtendingSet& w) {
  const auto& cyc = w.hole.vertices();
  const VertexSet carers = w.carers();
  for_each_vertex(carers, [&](int a) {
    for_each_vertex(carers & ~prefix_mask(a + 1), [&](int b) {
      if (joined(d, a, b)) {
        throw TheoremViolation("carers " + std::to_string(a) + " and " + std::to_string(b) +
                               " are adjacent in the underlying graph");
      }
    });
  });

  std::vector<int> cycle;
  for (std::size_t i = 0; i < cyc.size(); ++i) {
    int a = cyc[i];
    int b = cyc[(i + 1) % cyc.size()];
    cycle.push_back(a);
    for (const auto& c : w.choices) {
      if (std::min(a, b) == c.u && std::max(a, b) == c.v) cycle.push_back(c.carer);
    }
  }

  const SimpleGraph u = underlying_graph(d);
  const VertexSet members = w.hole.vertex_set() | carers;
  if (to_set(cycle) != members || static_cast<int>(cycle.size()) != popcount(members)) {
    throw TheoremViolation("spliced cycle does not visit every vertex of the obtained subgraph once");
  }
  for (std::size_t i = 0; i < cycle.size(); ++i) {
    if (!u.adjacent(cycle[i], cycle[(i + 1) % cycle.size()])) {
      throw TheoremViolation("spliced cycle uses a non-edge of the underlying graph");
    }
  }
  return {induced_subgraph(u, members), std::move(cycle)};
}

PhiResult phi(const Digraph& d, const Hole& hole) {
  auto sets = extending_sets(d, hole);
  PhiResult result;
  result.hole = hole;
  if (sets.size() == 1 && sets.front().choices.empty()) {
    if (!is_hole(underlying_graph(d), hole.vertices())) {
      throw TheoremViolation("hole " + describe(hole) + " has no cared edge but is not a hole of U(D)");
    }
    result.image = hole;
    result.choice_has_hole = {true};
    result.candidates = {hole};
    return result;
  }
  for (std::size_t i = 0; i < sets.size(); ++i) {
    auto l = obtained_subgraph(d, sets[i]);
    auto local = enumerate_holes(l.graph.graph, kMaxVertices);
    result.choice_has_hole.push_back(!local.empty());
    std::vector<Hole> mapped;
    for (const auto& h : local) {
      std::vector<int> back;
      for (int v : h.vertices()) back.push_back(l.graph.original[v]);
      mapped.push_back(Hole::from_cycle(back));
    }
    std::sort(mapped.begin(), mapped.end());
    if (!mapped.empty() && !result.choice) {
      result.choice = i;
      result.image = mapped.front();
    }
    result.candidates.insert(result.candidates.end(), mapped.begin(), mapped.end());
  }
  std::sort(result.candidates.begin(), result.candidates.end());
  result.candidates.erase(std::unique(result.candidates.begin(), result.candidates.end()), result.candidates.end());
  if (!result.choice) {
    throw TheoremViolation("no obtained subgraph of hole " + describe(hole) + " contains a hole");
  }
  return result;
}

namespace {

bool augment(int p, const std::vector<std::vector<int>>& adj, std::vector<int>& owner, std::vector<char>& seen) {
  for (int u : adj[p]) {
    if (seen[u]) continue;
    seen[u] = 1;
    if (owner[u] < 0 || augment(owner[u], adj, owner, seen)) {
      owner[u] = p;
      return true;
    }
  }
  return false;
}

}  // namespace

HoleCorrespondenceReport verify_hole_correspondence(const Digraph& d, int cap) {
  if (d.vertex_count() > cap) {
    throw GraphError("hole correspondence is capped at " + std::to_string(cap) + " vertices");
  }
  require_two_two(d);
  HoleCorrespondenceReport r;
  r.holes_p = enumerate_holes(phylogeny_graph(d), cap);
  r.holes_u = enumerate_holes(underlying_graph(d), cap);
  for (const auto& h : r.holes_p) r.map.push_back(phi(d, h));

  for (std::size_t a = 0; a < r.holes_p.size(); ++a) {
    for (std::size_t b = a + 1; b < r.holes_p.size(); ++b) {
      if ((r.holes_p[a].vertex_set() & r.holes_p[b].vertex_set()) != 0) r.p_holes_disjoint = false;
    }
  }
  for (const auto& h : r.holes_u) {
    if (h.length() == 4 || h.length() == 6) r.no_u_hole_of_length_4_or_6 = false;
  }
  r.hypotheses_met = r.p_holes_disjoint && r.no_u_hole_of_length_4_or_6;

  std::vector<std::vector<int>> adj(r.holes_p.size());
  for (std::size_t i = 0; i < r.map.size(); ++i) {
    for (const auto& c : r.map[i].candidates) {
      auto it = std::lower_bound(r.holes_u.begin(), r.holes_u.end(), c);
      if (it == r.holes_u.end() || *it != c) throw TheoremViolation("hole map produced a non-hole of U(D)");
      adj[i].push_back(static_cast<int>(it - r.holes_u.begin()));
    }
  }
  std::vector<int> owner(r.holes_u.size(), -1);
  for (std::size_t i = 0; i < adj.size(); ++i) {
    std::vector<char> seen(r.holes_u.size(), 0);
    augment(static_cast<int>(i), adj, owner, seen);
  }
  r.matching.assign(r.holes_p.size(), -1);
  for (std::size_t u = 0; u < owner.size(); ++u) {
    if (owner[u] >= 0) r.matching[owner[u]] = static_cast<int>(u);
  }
  r.injective = std::none_of(r.matching.begin(), r.matching.end(), [](int m) { return m < 0; });
  r.count_ok = r.holes_u.size() >= r.holes_p.size();
  return r;
}

}  // namespace moral
