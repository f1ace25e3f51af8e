#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "moral/chordal.hpp"
#include "moral/graph_core.hpp"

namespace moral {

enum class SweepMode { exhaustive, random };

inline constexpr int kMaxExhaustiveVertices = 7;
inline constexpr int kMaxRandomVertices = 32;

struct SweepScope {
  SweepMode mode = SweepMode::exhaustive;
  int n = 0;
  DegreeBounds bounds{2, 2};
  bool dedup = false;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;

  /// Throws std::invalid_argument for n outside the mode's range.
  void validate() const;
};

/// Exhaustive mode: every digraph on 0..n-1 whose arcs all go from a lower to
/// a higher index and which satisfies the bounds, in a fixed order (empty
/// digraph first). Every bounded DAG is isomorphic to at least one of them;
/// with dedup only the first of each isomorphism class is visited.
void for_each_digraph(const SweepScope& scope, const std::function<void(const Digraph&)>& visit);
std::vector<Digraph> enumerate_digraphs(const SweepScope& scope);

/// A random topological order with forward arcs kept with probability
/// min(1, (i+j)/(n-1)); arcs that would break the bounds are dropped.
/// Deterministic in seed. Not uniform over DAGs.
Digraph random_digraph(int n, const DegreeBounds& bounds, std::uint64_t seed);

/// Seed of the index-th sample of a random sweep.
std::uint64_t sample_seed(std::uint64_t seed, std::uint64_t index);

/// Every digraph obtained from base by adding exactly `extra` vertices and
/// any arcs touching them such that the result is an acyclic digraph within
/// the bounds and base stays induced on vertices 0..base.vertex_count()-1.
void for_each_extension(const Digraph& base, int extra, const DegreeBounds& bounds,
                        const std::function<void(const Digraph&)>& visit);

enum class Check : unsigned {
  k5 = 1U << 0,
  long_hole = 1U << 1,
  chordal_sufficiency = 1U << 2,
  care_bounds = 1U << 3,
  hole_correspondence = 1U << 4,
};

inline constexpr std::array<Check, 5> kChecks = {Check::k5, Check::long_hole, Check::chordal_sufficiency,
                                                 Check::care_bounds, Check::hole_correspondence};
using CheckSet = unsigned;
inline constexpr CheckSet kAllChecks = 0x1F;

inline constexpr CheckSet operator|(Check a, Check b) { return static_cast<unsigned>(a) | static_cast<unsigned>(b); }
inline constexpr bool has_check(CheckSet set, Check c) { return (set & static_cast<unsigned>(c)) != 0; }

std::string_view check_name(Check c);
std::optional<Check> parse_check(std::string_view name);

/// Comma-separated check names or "all". Throws std::invalid_argument.
CheckSet parse_check_set(std::string_view list);

enum class Verdict { pass, fail, not_applicable };

struct CheckResult {
  Verdict verdict = Verdict::pass;
  std::string detail;
};

/// Runs one check on one digraph. The theorem checks apply to (2,2)
/// digraphs; care_bounds uses `bounds`.
CheckResult run_check(Check c, const Digraph& d, const DegreeBounds& bounds = DegreeBounds(2, 2));

struct Tally {
  std::uint64_t passed = 0;
  std::uint64_t failed = 0;
  std::uint64_t not_applicable = 0;
};

struct Counterexample {
  Check check = Check::k5;
  std::uint64_t index = 0;  // position in the digraph stream
  Digraph digraph;
  std::string detail;
};

struct SuiteReport {
  std::uint64_t digraphs_checked = 0;
  CheckSet checks = 0;
  std::array<Tally, kChecks.size()> tallies{};
  /// First failure per check, in stream order.
  std::vector<Counterexample> first_failures;
  double wall_seconds = 0.0;

  const Tally& tally(Check c) const;
  bool ok() const;
  /// Appends a later segment of the stream.
  void merge(const SuiteReport& later);
};

/// Checks every digraph of the scope on up to `jobs` threads. Tallies and
/// first failures do not depend on `jobs`.
SuiteReport run_suite(const SweepScope& scope, CheckSet checks, int jobs = 1);

/// Same, over an explicit corpus.
SuiteReport run_checks(std::span<const Digraph> corpus, CheckSet checks, const DegreeBounds& bounds, int jobs = 1);

/// Re-runs the failing check on the stored digraph.
CheckResult replay(const Counterexample& c, const DegreeBounds& bounds = DegreeBounds(2, 2));

/// Remark phenomena: (A) every hole of U(D) has length 4 while P(D) has a
/// hole of length 6; (B) two P(D) holes sharing a vertex whose images under
/// the hole map coincide, with no injective assignment of U(D) holes.
struct LongPHoleFinding {
  Digraph digraph;
  std::vector<Hole> holes_u;
  Hole p_hole;
};

struct OverlapFinding {
  Digraph digraph;
  Hole first;
  Hole second;
  Hole shared_image;
  std::vector<Hole> holes_u;
};

struct RemarkFindings {
  std::optional<LongPHoleFinding> long_p_hole;
  std::optional<OverlapFinding> overlap;
  std::uint64_t examined = 0;
};

std::optional<LongPHoleFinding> long_p_hole_phenomenon(const Digraph& d);
std::optional<OverlapFinding> overlap_phenomenon(const Digraph& d);

/// Exhaustive (2,2) sweeps for n = 5..min(max_n, 7) while the budget lasts,
/// then random (2,2) digraphs with 5..max_n vertices. `budget` bounds the
/// number of digraphs examined. Throws std::invalid_argument if max_n > 12.
RemarkFindings find_remark_counterexamples(int max_n, std::uint64_t budget, std::uint64_t seed);

/// Worker count from MORAL_JOBS, else hardware concurrency.
int default_jobs();

}  // namespace moral
