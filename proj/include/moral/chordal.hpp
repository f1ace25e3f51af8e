#pragma once

#include <array>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "moral/graph_core.hpp"

namespace moral {

/// A chordless cycle of length at least 4, stored with its least vertex first
/// and the smaller of that vertex's two cycle neighbors second.
class Hole {
 public:
  Hole() = default;

  /// Canonicalizes rotation and reflection; does not check the graph.
  static Hole from_cycle(std::span<const int> cycle);

  const std::vector<int>& vertices() const { return vertices_; }
  std::size_t length() const { return vertices_.size(); }
  VertexSet vertex_set() const { return to_set(vertices_); }

  /// Consecutive pairs including the closing pair (last, first), as (min, max).
  std::vector<Edge> edges() const;

  friend auto operator<=>(const Hole&, const Hole&) = default;
  friend bool operator==(const Hole&, const Hole&) = default;

 private:
  std::vector<int> vertices_;
};

/// Validates that cycle is a hole of g and returns it canonicalized.
/// Throws GraphError otherwise.
Hole make_hole(const SimpleGraph& g, std::span<const int> cycle);

/// True iff cycle lists >= 4 distinct vertices forming an induced cycle of g.
bool is_hole(const SimpleGraph& g, std::span<const int> cycle);

/// Each vertex's neighbors later in the order form a clique.
bool is_perfect_elimination_order(const SimpleGraph& g, std::span<const int> order);

/// Either a perfect elimination ordering or a hole.
struct ChordalityCertificate {
  std::vector<int> elimination_order;
  std::optional<Hole> hole;

  bool chordal() const { return !hole.has_value(); }
};

/// Maximum cardinality search; on failure a hole is extracted from a vertex
/// whose later neighbors are not a clique.
ChordalityCertificate is_chordal(const SimpleGraph& g);

/// Decision only, without building a hole.
bool chordal(const SimpleGraph& g);

/// Vertex order produced by maximum cardinality search, reversed so that it
/// is an elimination order whenever g is chordal.
std::vector<int> mcs_elimination_order(const SimpleGraph& g);

inline constexpr int kHoleEnumerationCap = 14;

/// Visits each hole exactly once in canonical form; the visitor returns false
/// to stop early. Throws GraphError if g has more than cap vertices.
void for_each_hole(const SimpleGraph& g, const std::function<bool(const Hole&)>& visit,
                   int cap = kHoleEnumerationCap);

/// All holes, sorted.
std::vector<Hole> enumerate_holes(const SimpleGraph& g, int cap = kHoleEnumerationCap);

/// Vertices whose neighborhood is a clique.
std::vector<int> simplicial_vertices(const SimpleGraph& g);

/// Throws GraphError unless cycle is a cycle of g (distinct vertices, length
/// >= min_length, consecutive vertices adjacent). A repeated closing vertex is
/// accepted and dropped.
std::vector<int> validate_cycle(const SimpleGraph& g, std::span<const int> cycle, int min_length = 3);

/// Vertices of the cycle whose predecessor and successor are adjacent, sorted.
std::vector<int> opposite_to_chord_vertices(const SimpleGraph& g, std::span<const int> cycle);

/// Least vertex of the cycle other than x, y adjacent to both. xy must be an
/// edge of the cycle.
std::optional<int> common_neighbor_on_cycle(const SimpleGraph& g, std::span<const int> cycle, int x,
                                            int y);

/// The square of the 7-vertex path: i ~ j iff 1 <= |i-j| <= 2.
SimpleGraph w_configuration();

/// embedding[i] is the image of pattern vertex i; pattern edges map to edges
/// of g (not necessarily induced).
std::optional<std::array<int, 7>> contains_w_configuration(const SimpleGraph& g);

int clique_number(const SimpleGraph& g);

}  // namespace moral
