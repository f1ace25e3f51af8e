#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "moral/graph_core.hpp"

namespace moral {

enum class OrientationStatus {
  unset,
  permitted,            // witness found
  no_witness,           // exhausted the search up to `bound` extra vertices
  forbidden_by_length,  // cycle length >= 7
};

std::string_view to_string(OrientationStatus s);

/// One isomorphism class of acyclic orientations of the k-cycle.
struct OrientationClass {
  int length = 0;
  /// Bit i set: edge {i, i+1 mod k} is oriented i -> i+1; clear: reversed.
  std::uint32_t mask = 0;
  Digraph representative;
  CanonicalForm canonical;
  OrientationStatus status = OrientationStatus::unset;
  /// (2,2) digraph on length + extra vertices whose first `length` vertices
  /// induce the representative and whose phylogeny graph is chordal.
  std::optional<Digraph> witness;
  int bound = 0;
  std::string label;
};

inline constexpr int kMinCycleLength = 3;
inline constexpr int kMaxCycleLength = 12;
inline constexpr int kMaxClassifiedLength = 8;
inline constexpr int kMaxExtraVertices = 6;
inline constexpr int kDefaultExtraVertices = 4;

/// The orientation of the k-cycle 0-1-...-(k-1)-0 encoded by mask.
Digraph cycle_orientation(int k, std::uint32_t mask);

/// One representative per class (least mask first). Directed cycles are
/// excluded. Throws std::invalid_argument unless 3 <= k <= 12.
std::vector<OrientationClass> enumerate_cycle_orientations(int k);

/// Lengths >= 7 are forbidden outright. Otherwise searches (2,2) extensions by
/// up to extra_vertices vertices, fewest extra vertices first, for one that
/// keeps the representative induced and has a chordal phylogeny graph.
/// Throws std::invalid_argument if length > 8 or extra_vertices is outside
/// 0..kMaxExtraVertices.
OrientationClass classify_orientation(OrientationClass o, int extra_vertices = kDefaultExtraVertices);

/// Classifies independent classes on up to `jobs` threads; output order
/// matches input order.
std::vector<OrientationClass> classify_all(std::vector<OrientationClass> classes,
                                           int extra_vertices = kDefaultExtraVertices, int jobs = 1);

/// Checks a claimed witness from scratch: (2,2) bounds, acyclic, chordal
/// phylogeny graph, and some vertex subset inducing a copy of representative.
bool verify_witness(const Digraph& representative, const Digraph& witness);

/// Forbidden orientations of cycles of length at most six, plus the rule that
/// every orientation of a cycle of length >= min_forbidden_length is forbidden.
struct ForbiddenCatalog {
  std::vector<OrientationClass> patterns;
  int min_forbidden_length = 7;
};

/// Parses the plain-text catalog format: '#' comments, blocks separated by
/// blank lines, each block a line `k <length>` followed by `tail head` lines.
/// A comment line of the form `# (x) ...` directly before a block labels it.
/// Throws std::invalid_argument naming the offending line.
ForbiddenCatalog parse_catalog(std::string_view text);

/// The catalog shipped with the library (data/forbidden_six_cycles.txt).
const ForbiddenCatalog& forbidden_catalog();
std::string_view forbidden_catalog_text();

struct CatalogCheck {
  bool consistent = true;
  std::vector<std::string> problems;
};

/// The catalog patterns of the given length must be exactly the classes that
/// classification left without a witness.
CatalogCheck validate_catalog(const ForbiddenCatalog& catalog, std::span<const OrientationClass> classified);

struct ForbiddenMatch {
  std::vector<int> vertices;  // hole of U(D) in canonical order
  bool by_length = false;
  std::string pattern_label;  // empty when matched by length
};

/// Every vertex set inducing a catalog pattern or an orientation of a
/// chordless cycle of length >= 7. Throws NotAcyclicError.
std::vector<ForbiddenMatch> scan_forbidden_induced(const Digraph& d,
                                                   const ForbiddenCatalog& catalog = forbidden_catalog());

}  // namespace moral
