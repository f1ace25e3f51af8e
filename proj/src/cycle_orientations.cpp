#include "moral/cycle_orientations.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <sstream>
#include <thread>

#include "moral/chordal.hpp"
#include "moral/phylogeny.hpp"

namespace moral {

std::string_view to_string(OrientationStatus s) {
  switch (s) {
    case OrientationStatus::unset: return "unset";
    case OrientationStatus::permitted: return "permitted";
    case OrientationStatus::no_witness: return "no_witness";
    case OrientationStatus::forbidden_by_length: return "forbidden_by_length";
  }
  return "unknown";
}

Digraph cycle_orientation(int k, std::uint32_t mask) {
  Digraph d(k, {});
  for (int i = 0; i < k; ++i) {
    int a = i;
    int b = (i + 1) % k;
    if ((mask >> i) & 1U) {
      d.add_arc(a, b);
    } else {
      d.add_arc(b, a);
    }
  }
  return d;
}

std::vector<OrientationClass> enumerate_cycle_orientations(int k) {
  if (k < kMinCycleLength || k > kMaxCycleLength) {
    throw std::invalid_argument("cycle length " + std::to_string(k) + " outside " +
                                std::to_string(kMinCycleLength) + ".." + std::to_string(kMaxCycleLength));
  }
  std::vector<OrientationClass> classes;
  std::map<CanonicalForm, bool> seen;
  const std::uint32_t full = (std::uint32_t{1} << k) - 1;
  for (std::uint32_t mask = 1; mask < full; ++mask) {
    Digraph d = cycle_orientation(k, mask);
    CanonicalForm form = canonical_form(d);
    if (!seen.emplace(form, true).second) continue;
    OrientationClass c;
    c.length = k;
    c.mask = mask;
    c.representative = std::move(d);
    c.canonical = std::move(form);
    classes.push_back(std::move(c));
  }
  return classes;
}

// ---------------------------------------------------------------------------
// Witness search. Vertices 0..k-1 carry the representative, k..k+m-1 are the
// extra vertices. Each vertex's out-neighborhood is fixed in index order; once
// the out-sets of 0..v are fixed, P(D) restricted to 0..v is final, so it must
// already be chordal.

namespace {

constexpr int kIn = 2;
constexpr int kOut = 2;

class WitnessSearch {
 public:
  WitnessSearch(const Digraph& representative, int extra)
      : k_(representative.vertex_count()), n_(k_ + extra), d_(n_, {}) {
    for (auto [t, h] : representative.arcs()) d_.add_arc(t, h);
  }

  std::optional<Digraph> run() {
    if (descend(0)) return d_;
    return std::nullopt;
  }

 private:
  bool reaches(int from, int to) const {
    VertexSet frontier = bit(from);
    VertexSet seen = frontier;
    while (frontier != 0) {
      VertexSet next = 0;
      for_each_vertex(frontier, [&](int u) { next |= d_.out_neighbors(u); });
      next &= ~seen;
      if (contains(next, to)) return true;
      seen |= next;
      frontier = next;
    }
    return from == to;
  }

  bool prefix_chordal(int v) const {
    const int m = v + 1;
    SimpleGraph p(m);
    for (int a = 0; a < m; ++a) {
      for (int b = a + 1; b < m; ++b) {
        if (d_.has_arc(a, b) || d_.has_arc(b, a) || (d_.out_neighbors(a) & d_.out_neighbors(b)) != 0) {
          p.add_edge(a, b);
        }
      }
    }
    return chordal(p);
  }

  bool descend(int v) {
    if (v == n_) return true;
    const int budget = kOut - d_.outdegree(v);
    VertexSet targets = 0;
    for (int u = (v < k_ ? k_ : 0); u < n_; ++u) {
      if (u == v || d_.has_arc(u, v) || d_.has_arc(v, u)) continue;
      if (d_.indegree(u) >= kIn) continue;
      targets |= bit(u);
    }
    std::vector<int> chosen;
    return choose(v, to_vector(targets), 0, budget, chosen);
  }

  // Lexicographic enumeration of out-sets of size <= budget.
  bool choose(int v, const std::vector<int>& targets, std::size_t from, int budget, std::vector<int>& chosen) {
    if (prefix_chordal(v) && descend(v + 1)) return true;
    if (budget == 0) return false;
    for (std::size_t i = from; i < targets.size(); ++i) {
      int t = targets[i];
      if (d_.indegree(t) >= kIn || reaches(t, v)) continue;
      d_.add_arc(v, t);
      chosen.push_back(t);
      if (choose(v, targets, i + 1, budget - 1, chosen)) return true;
      chosen.pop_back();
      d_.remove_arc(v, t);
    }
    return false;
  }

  int k_;
  int n_;
  Digraph d_;
};

}  // namespace

OrientationClass classify_orientation(OrientationClass o, int extra_vertices) {
  if (o.length >= 7) {
    o.status = OrientationStatus::forbidden_by_length;
    o.witness.reset();
    o.bound = 0;
    return o;
  }
  if (o.length > kMaxClassifiedLength) {
    throw std::invalid_argument("witness search is limited to cycles of length <= " +
                                std::to_string(kMaxClassifiedLength));
  }
  if (extra_vertices < 0 || extra_vertices > kMaxExtraVertices) {
    throw std::invalid_argument("extra vertex count " + std::to_string(extra_vertices) + " outside 0.." +
                                std::to_string(kMaxExtraVertices));
  }
  for (int m = 0; m <= extra_vertices; ++m) {
    if (auto w = WitnessSearch(o.representative, m).run()) {
      o.status = OrientationStatus::permitted;
      o.witness = std::move(w);
      o.bound = m;
      return o;
    }
  }
  o.status = OrientationStatus::no_witness;
  o.witness.reset();
  o.bound = extra_vertices;
  return o;
}

std::vector<OrientationClass> classify_all(std::vector<OrientationClass> classes, int extra_vertices, int jobs) {
  jobs = std::clamp(jobs, 1, static_cast<int>(std::max<std::size_t>(classes.size(), 1)));
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(classes.size());
  auto worker = [&] {
    for (std::size_t i = next++; i < classes.size(); i = next++) {
      try {
        classes[i] = classify_orientation(std::move(classes[i]), extra_vertices);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (int t = 1; t < jobs; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return classes;
}

bool verify_witness(const Digraph& representative, const Digraph& witness) {
  if (check_degree_bounds(witness, DegreeBounds(2, 2)) || !is_acyclic(witness)) return false;
  if (!is_chordal(phylogeny_graph(witness)).chordal()) return false;
  const int k = representative.vertex_count();
  const int n = witness.vertex_count();
  if (k > n) return false;
  const CanonicalForm target = canonical_form(representative);
  // Any k-subset of the witness inducing a copy of the representative.
  std::vector<int> pick(k);
  for (int i = 0; i < k; ++i) pick[i] = i;
  while (true) {
    if (canonical_form(induced_subdigraph(witness, std::span<const int>(pick)).graph) == target) return true;
    int i = k - 1;
    while (i >= 0 && pick[i] == n - k + i) --i;
    if (i < 0) return false;
    ++pick[i];
    for (int j = i + 1; j < k; ++j) pick[j] = pick[j - 1] + 1;
  }
}

// ---------------------------------------------------------------------------
// Catalog

ForbiddenCatalog parse_catalog(std::string_view text) {
  ForbiddenCatalog catalog;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  std::string pending_label;
  std::optional<int> length;
  std::vector<Arc> arcs;
  std::string label;
  int block_line = 0;

  auto fail = [&](int at, const std::string& why) {
    throw std::invalid_argument("catalog line " + std::to_string(at) + ": " + why);
  };
  auto flush = [&] {
    if (!length) return;
    OrientationClass c;
    c.length = *length;
    try {
      c.representative = Digraph(*length, std::span<const Arc>(arcs));
    } catch (const GraphError& e) {
      fail(block_line, e.what());
    }
    auto u = underlying_graph(c.representative);
    bool is_cycle = static_cast<int>(c.representative.arc_count()) == *length;
    for (int v = 0; v < *length && is_cycle; ++v) is_cycle = u.degree(v) == 2;
    if (!is_cycle || enumerate_holes(u, kMaxVertices).size() != (*length >= 4 ? 1U : 0U)) {
      fail(block_line, "pattern is not an orientation of a chordless cycle");
    }
    if (!is_acyclic(c.representative)) fail(block_line, "pattern has a directed cycle");
    c.canonical = canonical_form(c.representative);
    c.label = label;
    catalog.patterns.push_back(std::move(c));
    length.reset();
    arcs.clear();
  };

  while (std::getline(in, line)) {
    ++line_no;
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) {
      flush();
      continue;
    }
    std::string_view body(line);
    body.remove_prefix(first);
    if (body.front() == '#') {
      auto open = body.find('(');
      auto close = body.find(')');
      if (open != std::string_view::npos && close != std::string_view::npos && open < close && open <= 2) {
        pending_label = std::string(body.substr(open + 1, close - open - 1));
      }
      continue;
    }
    std::istringstream fields{std::string(body)};
    std::string head;
    fields >> head;
    if (head == "k") {
      flush();
      int k = 0;
      if (!(fields >> k) || k < kMinCycleLength || k > kMaxCycleLength) fail(line_no, "bad cycle length");
      length = k;
      label = pending_label;
      pending_label.clear();
      block_line = line_no;
      continue;
    }
    if (!length) fail(line_no, "arc outside a pattern block");
    int tail = 0;
    int headv = 0;
    std::istringstream pair{std::string(body)};
    if (!(pair >> tail >> headv)) fail(line_no, "expected `tail head`");
    std::string extra;
    if (pair >> extra) fail(line_no, "trailing text after arc");
    arcs.emplace_back(tail, headv);
  }
  flush();
  return catalog;
}

const ForbiddenCatalog& forbidden_catalog() {
  static const ForbiddenCatalog catalog = parse_catalog(forbidden_catalog_text());
  return catalog;
}

CatalogCheck validate_catalog(const ForbiddenCatalog& catalog, std::span<const OrientationClass> classified) {
  CatalogCheck check;
  auto note = [&](std::string msg) {
    check.consistent = false;
    check.problems.push_back(std::move(msg));
  };
  if (classified.empty()) {
    note("no classified orientations supplied");
    return check;
  }
  const int k = classified.front().length;
  std::vector<const OrientationClass*> listed;
  for (const auto& p : catalog.patterns) {
    if (p.length == k) listed.push_back(&p);
  }
  for (const auto& c : classified) {
    if (c.length != k) {
      note("mixed cycle lengths in classification");
      continue;
    }
    auto it = std::find_if(listed.begin(), listed.end(), [&](auto* p) { return p->canonical == c.canonical; });
    const bool in_catalog = it != listed.end();
    if (c.status == OrientationStatus::permitted && in_catalog) {
      note("catalog pattern (" + (*it)->label + ") has a witness: " + to_string(*c.witness));
    }
    if (c.status == OrientationStatus::no_witness && !in_catalog) {
      note("orientation mask " + std::to_string(c.mask) + " has no witness but is not catalogued");
    }
    if (c.status == OrientationStatus::unset) note("orientation mask " + std::to_string(c.mask) + " unclassified");
  }
  for (auto* p : listed) {
    bool found = std::any_of(classified.begin(), classified.end(), [&](const auto& c) { return c.canonical == p->canonical; });
    if (!found) note("catalog pattern (" + p->label + ") is not an acyclic orientation class");
  }
  for (std::size_t a = 0; a < listed.size(); ++a) {
    for (std::size_t b = a + 1; b < listed.size(); ++b) {
      if (listed[a]->canonical == listed[b]->canonical) {
        note("catalog patterns (" + listed[a]->label + ") and (" + listed[b]->label + ") are isomorphic");
      }
    }
  }
  return check;
}

std::vector<ForbiddenMatch> scan_forbidden_induced(const Digraph& d, const ForbiddenCatalog& catalog) {
  require_acyclic(d);
  std::vector<ForbiddenMatch> out;
  for (const Hole& h : enumerate_holes(underlying_graph(d), kMaxVertices)) {
    const int len = static_cast<int>(h.length());
    if (len >= catalog.min_forbidden_length) {
      out.push_back({h.vertices(), true, {}});
      continue;
    }
    bool any = std::any_of(catalog.patterns.begin(), catalog.patterns.end(), [&](const auto& p) { return p.length == len; });
    if (!any) continue;
    auto form = canonical_form(induced_subdigraph(d, std::span<const int>(h.vertices())).graph);
    for (const auto& p : catalog.patterns) {
      if (p.length == len && p.canonical == form) {
        out.push_back({h.vertices(), false, p.label});
        break;
      }
    }
  }
  return out;
}

}  // namespace moral
