#include "moral/verifier.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <sstream>
#include <thread>
#include <unordered_set>

#include "moral/hole_map.hpp"
#include "moral/phylogeny.hpp"

namespace moral {

void SweepScope::validate() const {
  if (mode == SweepMode::exhaustive && (n < 0 || n > kMaxExhaustiveVertices)) {
    throw std::invalid_argument("exhaustive sweeps need 0 <= n <= " + std::to_string(kMaxExhaustiveVertices));
  }
  if (mode == SweepMode::random && (n < 0 || n > kMaxRandomVertices)) {
    throw std::invalid_argument("random sweeps need 0 <= n <= " + std::to_string(kMaxRandomVertices));
  }
}

// ---------------------------------------------------------------------------
// Generation

namespace {

class ForwardEnumerator {
 public:
  ForwardEnumerator(int n, const DegreeBounds& b, const std::function<void(const Digraph&)>& visit)
      : n_(n), b_(b), visit_(visit), d_(n, {}) {
    for (int t = 0; t < n; ++t) {
      for (int h = t + 1; h < n; ++h) pairs_.emplace_back(t, h);
    }
  }

  void run() { step(0); }

 private:
  void step(std::size_t i) {
    if (i == pairs_.size()) {
      visit_(d_);
      return;
    }
    step(i + 1);
    auto [t, h] = pairs_[i];
    if (d_.outdegree(t) < b_.max_outdegree && d_.indegree(h) < b_.max_indegree) {
      d_.add_arc(t, h);
      step(i + 1);
      d_.remove_arc(t, h);
    }
  }

  int n_;
  DegreeBounds b_;
  const std::function<void(const Digraph&)>& visit_;
  Digraph d_;
  std::vector<Arc> pairs_;
};

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// xoshiro-free, portable: a splitmix stream is enough for sampling arcs.
class Stream {
 public:
  explicit Stream(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next() { return splitmix64(state_++); }
  double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  std::size_t below(std::size_t bound) { return static_cast<std::size_t>(next() % bound); }

 private:
  std::uint64_t state_;
};

}  // namespace

void for_each_digraph(const SweepScope& scope, const std::function<void(const Digraph&)>& visit) {
  scope.validate();
  if (scope.mode != SweepMode::exhaustive) {
    throw std::invalid_argument("for_each_digraph needs an exhaustive scope");
  }
  if (!scope.dedup) {
    ForwardEnumerator(scope.n, scope.bounds, visit).run();
    return;
  }
  std::unordered_set<CanonicalForm> seen;
  std::function<void(const Digraph&)> filter = [&](const Digraph& d) {
    if (seen.insert(canonical_form(d)).second) visit(d);
  };
  ForwardEnumerator(scope.n, scope.bounds, filter).run();
}

std::vector<Digraph> enumerate_digraphs(const SweepScope& scope) {
  std::vector<Digraph> out;
  for_each_digraph(scope, [&](const Digraph& d) { out.push_back(d); });
  return out;
}

std::uint64_t sample_seed(std::uint64_t seed, std::uint64_t index) {
  return splitmix64(seed ^ splitmix64(index + 0x5851F42D4C957F2DULL));
}

Digraph random_digraph(int n, const DegreeBounds& bounds, std::uint64_t seed) {
  if (n < 0 || n > kMaxRandomVertices) {
    throw std::invalid_argument("random digraphs need 0 <= n <= " + std::to_string(kMaxRandomVertices));
  }
  Stream rng(seed);
  std::vector<int> order(n);
  for (int v = 0; v < n; ++v) order[v] = v;
  for (int i = n - 1; i > 0; --i) std::swap(order[i], order[rng.below(static_cast<std::size_t>(i) + 1)]);
  std::vector<Arc> pairs;
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) pairs.emplace_back(order[a], order[b]);
  }
  for (std::size_t i = pairs.size(); i > 1; --i) std::swap(pairs[i - 1], pairs[rng.below(i)]);
  const double p = n < 2 ? 0.0 : std::min(1.0, double(bounds.max_indegree + bounds.max_outdegree) / (n - 1));
  Digraph d(n, {});
  for (auto [t, h] : pairs) {
    if (rng.unit() >= p) continue;
    if (d.outdegree(t) < bounds.max_outdegree && d.indegree(h) < bounds.max_indegree) d.add_arc(t, h);
  }
  return d;
}

namespace {

class ExtensionEnumerator {
 public:
  ExtensionEnumerator(const Digraph& base, int extra, const DegreeBounds& b,
                      const std::function<void(const Digraph&)>& visit)
      : k_(base.vertex_count()), n_(k_ + extra), b_(b), visit_(visit), d_(n_, {}) {
    for (auto [t, h] : base.arcs()) d_.add_arc(t, h);
  }

  void run() {
    if (check_degree_bounds(d_, b_) || !is_acyclic(d_)) return;
    place(k_);
  }

 private:
  // Extra vertex e picks in-neighbors then out-neighbors among 0..e-1.
  void place(int e) {
    if (e == n_) {
      if (is_acyclic(d_)) visit_(d_);
      return;
    }
    std::vector<int> pool;
    for (int u = 0; u < e; ++u) pool.push_back(u);
    pick_in(e, pool, 0, 0);
  }

  void pick_in(int e, const std::vector<int>& pool, std::size_t from, int taken) {
    pick_out(e, pool, 0, 0);
    if (taken == b_.max_indegree) return;
    for (std::size_t i = from; i < pool.size(); ++i) {
      int u = pool[i];
      if (d_.outdegree(u) >= b_.max_outdegree) continue;
      d_.add_arc(u, e);
      pick_in(e, pool, i + 1, taken + 1);
      d_.remove_arc(u, e);
    }
  }

  void pick_out(int e, const std::vector<int>& pool, std::size_t from, int taken) {
    place(e + 1);
    if (taken == b_.max_outdegree) return;
    for (std::size_t i = from; i < pool.size(); ++i) {
      int u = pool[i];
      if (d_.has_arc(u, e) || d_.indegree(u) >= b_.max_indegree) continue;
      d_.add_arc(e, u);
      pick_out(e, pool, i + 1, taken + 1);
      d_.remove_arc(e, u);
    }
  }

  int k_;
  int n_;
  DegreeBounds b_;
  const std::function<void(const Digraph&)>& visit_;
  Digraph d_;
};

}  // namespace

void for_each_extension(const Digraph& base, int extra, const DegreeBounds& bounds,
                        const std::function<void(const Digraph&)>& visit) {
  if (extra < 0 || base.vertex_count() + extra > kMaxVertices) {
    throw std::invalid_argument("extension size out of range");
  }
  ExtensionEnumerator(base, extra, bounds, visit).run();
}

// ---------------------------------------------------------------------------
// Checks

std::string_view check_name(Check c) {
  switch (c) {
    case Check::k5: return "k5";
    case Check::long_hole: return "long_hole";
    case Check::chordal_sufficiency: return "chordal_suff";
    case Check::care_bounds: return "care_bounds";
    case Check::hole_correspondence: return "hole_corr";
  }
  return "unknown";
}

std::optional<Check> parse_check(std::string_view name) {
  for (Check c : kChecks) {
    if (check_name(c) == name) return c;
  }
  return std::nullopt;
}

CheckSet parse_check_set(std::string_view list) {
  if (list == "all") return kAllChecks;
  CheckSet set = 0;
  while (!list.empty()) {
    auto comma = list.find(',');
    auto item = list.substr(0, comma);
    auto c = parse_check(item);
    if (!c) throw std::invalid_argument("unknown check '" + std::string(item) + "'");
    set |= static_cast<unsigned>(*c);
    if (comma == std::string_view::npos) break;
    list.remove_prefix(comma + 1);
  }
  if (set == 0) throw std::invalid_argument("empty check list");
  return set;
}

namespace {

std::string hole_text(const Hole& h) {
  std::string s;
  for (int v : h.vertices()) s += (s.empty() ? "" : "-") + std::to_string(v);
  return s;
}

CheckResult check_k5(const Digraph& d) {
  int omega = clique_number(phylogeny_graph(d));
  if (omega <= 4) return {};
  return {Verdict::fail, "phylogeny graph has clique number " + std::to_string(omega)};
}

CheckResult check_long_hole(const Digraph& d) {
  const SimpleGraph u = underlying_graph(d);
  std::optional<Hole> found;
  for_each_hole(u, [&](const Hole& h) {
    if (h.length() >= 7) found = h;
    return !found;
  }, kMaxVertices);
  if (!found) return {Verdict::not_applicable, {}};
  const SimpleGraph p = phylogeny_graph(d);
  if (chordal(p)) return {Verdict::fail, "U(D) has hole " + hole_text(*found) + " but P(D) is chordal"};
  if (chordal(induced_subgraph(p, found->vertex_set()).graph)) {
    return {Verdict::fail, "P(D) restricted to hole " + hole_text(*found) + " is chordal"};
  }
  return {};
}

CheckResult check_chordal_sufficiency(const Digraph& d) {
  if (!chordal(underlying_graph(d))) return {Verdict::not_applicable, {}};
  auto cert = is_chordal(phylogeny_graph(d));
  if (cert.chordal()) return {};
  return {Verdict::fail, "U(D) is chordal but P(D) has hole " + hole_text(*cert.hole)};
}

CheckResult check_care_bounds(const Digraph& d, const DegreeBounds& b) {
  auto report = care_bound_check(d, b);
  if (!report.flagged) return {};
  return {Verdict::fail, "a vertex cares for " + std::to_string(report.max_carer_count()) +
                             " edges or meets " + std::to_string(report.max_incidence()) + " cared edges"};
}

CheckResult check_hole_correspondence(const Digraph& d) {
  if (d.vertex_count() > kHoleCorrespondenceCap) return {Verdict::not_applicable, {}};
  auto r = verify_hole_correspondence(d);
  for (std::size_t i = 0; i < r.holes_p.size(); ++i) {
    // Every obtained subgraph of a genuine hole is non-chordal.
    for (std::size_t c = 0; c < r.map[i].choice_has_hole.size(); ++c) {
      if (!r.map[i].choice_has_hole[c]) {
        return {Verdict::fail, "extending set " + std::to_string(c) + " of hole " + hole_text(r.holes_p[i]) +
                                   " gives a chordal obtained subgraph"};
      }
    }
  }
  if (!r.hypotheses_met) return {Verdict::not_applicable, {}};
  if (!r.passes()) {
    std::ostringstream msg;
    msg << r.holes_p.size() << " P-holes, " << r.holes_u.size() << " U-holes, injective="
        << (r.injective ? "yes" : "no");
    return {Verdict::fail, msg.str()};
  }
  return {};
}

}  // namespace

CheckResult run_check(Check c, const Digraph& d, const DegreeBounds& bounds) {
  try {
    if (c == Check::care_bounds) {
      if (check_degree_bounds(d, bounds)) return {Verdict::not_applicable, "outside the degree bounds"};
      return check_care_bounds(d, bounds);
    }
    if (check_degree_bounds(d, DegreeBounds(2, 2))) return {Verdict::not_applicable, "not a (2,2) digraph"};
    switch (c) {
      case Check::k5: return check_k5(d);
      case Check::long_hole: return check_long_hole(d);
      case Check::chordal_sufficiency: return check_chordal_sufficiency(d);
      case Check::hole_correspondence: return check_hole_correspondence(d);
      case Check::care_bounds: break;
    }
  } catch (const std::exception& e) {
    return {Verdict::fail, e.what()};
  }
  return {Verdict::fail, "unknown check"};
}

CheckResult replay(const Counterexample& c, const DegreeBounds& bounds) { return run_check(c.check, c.digraph, bounds); }

// ---------------------------------------------------------------------------
// Suite

namespace {

std::size_t slot(Check c) {
  for (std::size_t i = 0; i < kChecks.size(); ++i) {
    if (kChecks[i] == c) return i;
  }
  return 0;
}

void check_one(SuiteReport& r, std::uint64_t index, const Digraph& d, CheckSet checks, const DegreeBounds& b) {
  ++r.digraphs_checked;
  for (Check c : kChecks) {
    if (!has_check(checks, c)) continue;
    auto result = run_check(c, d, b);
    auto& t = r.tallies[slot(c)];
    switch (result.verdict) {
      case Verdict::pass: ++t.passed; break;
      case Verdict::not_applicable: ++t.not_applicable; break;
      case Verdict::fail:
        ++t.failed;
        if (t.failed == 1) r.first_failures.push_back({c, index, d, result.detail});
        break;
    }
  }
}

// Splits [0, count) into chunks, checks them on `jobs` threads and merges the
// chunk reports in index order.
SuiteReport parallel_check(std::uint64_t count, const std::function<Digraph(std::uint64_t)>& get, CheckSet checks,
                           const DegreeBounds& b, int jobs) {
  constexpr std::uint64_t kChunk = 2048;
  const std::uint64_t chunks = (count + kChunk - 1) / kChunk;
  std::vector<SuiteReport> parts(chunks);
  std::atomic<std::uint64_t> next{0};
  auto worker = [&] {
    for (std::uint64_t c = next++; c < chunks; c = next++) {
      SuiteReport& part = parts[c];
      part.checks = checks;
      const std::uint64_t end = std::min(count, (c + 1) * kChunk);
      for (std::uint64_t i = c * kChunk; i < end; ++i) check_one(part, i, get(i), checks, b);
    }
  };
  jobs = static_cast<int>(std::clamp<std::uint64_t>(jobs, 1, std::max<std::uint64_t>(chunks, 1)));
  std::vector<std::thread> pool;
  for (int t = 1; t < jobs; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  SuiteReport total;
  total.checks = checks;
  for (const auto& p : parts) total.merge(p);
  return total;
}

}  // namespace

const Tally& SuiteReport::tally(Check c) const { return tallies[slot(c)]; }

bool SuiteReport::ok() const {
  return std::all_of(tallies.begin(), tallies.end(), [](const Tally& t) { return t.failed == 0; });
}

void SuiteReport::merge(const SuiteReport& later) {
  digraphs_checked += later.digraphs_checked;
  checks |= later.checks;
  for (const auto& f : later.first_failures) {
    if (tallies[slot(f.check)].failed == 0) first_failures.push_back(f);
  }
  for (std::size_t i = 0; i < tallies.size(); ++i) {
    tallies[i].passed += later.tallies[i].passed;
    tallies[i].failed += later.tallies[i].failed;
    tallies[i].not_applicable += later.tallies[i].not_applicable;
  }
  wall_seconds += later.wall_seconds;
}

SuiteReport run_suite(const SweepScope& scope, CheckSet checks, int jobs) {
  scope.validate();
  const auto start = std::chrono::steady_clock::now();
  SuiteReport report;
  if (scope.mode == SweepMode::exhaustive) {
    auto corpus = enumerate_digraphs(scope);
    report = parallel_check(corpus.size(), [&](std::uint64_t i) { return corpus[i]; }, checks, scope.bounds, jobs);
  } else {
    report = parallel_check(
        scope.samples, [&](std::uint64_t i) { return random_digraph(scope.n, scope.bounds, sample_seed(scope.seed, i)); },
        checks, scope.bounds, jobs);
  }
  report.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

SuiteReport run_checks(std::span<const Digraph> corpus, CheckSet checks, const DegreeBounds& bounds, int jobs) {
  const auto start = std::chrono::steady_clock::now();
  auto report = parallel_check(corpus.size(), [&](std::uint64_t i) { return corpus[i]; }, checks, bounds, jobs);
  report.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

// ---------------------------------------------------------------------------
// Remark phenomena

std::optional<LongPHoleFinding> long_p_hole_phenomenon(const Digraph& d) {
  if (!is_bounded_dag(d, DegreeBounds(2, 2))) return std::nullopt;
  const SimpleGraph p = phylogeny_graph(d);
  if (chordal(p)) return std::nullopt;
  std::optional<Hole> six;
  for_each_hole(p, [&](const Hole& h) {
    if (h.length() == 6) six = h;
    return !six;
  }, kMaxVertices);
  if (!six) return std::nullopt;
  auto holes_u = enumerate_holes(underlying_graph(d), kMaxVertices);
  if (holes_u.empty()) return std::nullopt;
  if (!std::all_of(holes_u.begin(), holes_u.end(), [](const Hole& h) { return h.length() == 4; })) return std::nullopt;
  return LongPHoleFinding{d, std::move(holes_u), *six};
}

std::optional<OverlapFinding> overlap_phenomenon(const Digraph& d) {
  if (!is_bounded_dag(d, DegreeBounds(2, 2))) return std::nullopt;
  const SimpleGraph p = phylogeny_graph(d);
  if (chordal(p)) return std::nullopt;
  auto r = verify_hole_correspondence(d, kMaxVertices);
  if (r.p_holes_disjoint || r.injective) return std::nullopt;
  for (std::size_t a = 0; a < r.holes_p.size(); ++a) {
    for (std::size_t b = a + 1; b < r.holes_p.size(); ++b) {
      if ((r.holes_p[a].vertex_set() & r.holes_p[b].vertex_set()) == 0) continue;
      if (r.map[a].image == r.map[b].image) {
        return OverlapFinding{d, r.holes_p[a], r.holes_p[b], r.map[a].image, r.holes_u};
      }
    }
  }
  return std::nullopt;
}

RemarkFindings find_remark_counterexamples(int max_n, std::uint64_t budget, std::uint64_t seed) {
  if (max_n > 12) throw std::invalid_argument("remark search supports max_n <= 12");
  RemarkFindings found;
  auto examine = [&](const Digraph& d) {
    ++found.examined;
    if (!found.long_p_hole) found.long_p_hole = long_p_hole_phenomenon(d);
    if (!found.overlap) found.overlap = overlap_phenomenon(d);
  };
  auto done = [&] { return (found.long_p_hole && found.overlap) || found.examined >= budget; };

  struct Stop {};
  for (int n = 5; n <= std::min(max_n, kMaxExhaustiveVertices) && !done(); ++n) {
    SweepScope scope;
    scope.n = n;
    try {
      for_each_digraph(scope, [&](const Digraph& d) {
        if (done()) throw Stop{};
        examine(d);
      });
    } catch (const Stop&) {
    }
  }
  if (max_n < 5) return found;
  const DegreeBounds b(2, 2);
  for (std::uint64_t i = 0; !done(); ++i) {
    const int n = 5 + static_cast<int>(i % static_cast<std::uint64_t>(max_n - 4));
    examine(random_digraph(n, b, sample_seed(seed, i)));
  }
  return found;
}

int default_jobs() {
  if (const char* env = std::getenv("MORAL_JOBS")) {
    int v = std::atoi(env);
    if (v > 0) return v;
  }
  return static_cast<int>(std::max(1U, std::thread::hardware_concurrency()));
}

}  // namespace moral
