#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "moral/chordal.hpp"
#include "moral/graph_core.hpp"
#include "moral/phylogeny.hpp"

namespace moral {

/// Raised when a statement guaranteed for (2,2) digraphs fails; reaching it
/// means a bug or a counterexample.
class TheoremViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// One carer chosen for a cared edge of a hole.
struct CarerChoice {
  int u = 0;  // u < v
  int v = 0;
  int carer = 0;

  friend bool operator==(const CarerChoice&, const CarerChoice&) = default;
};

/// A hole of P(D) with one carer chosen for each of its cared edges, listed
/// in the order the edges appear around the hole.
struct ExtendingSet {
  Hole hole;
  std::vector<CarerChoice> choices;

  VertexSet carers() const;
};

/// Every choice function over the carer sets of H's cared edges, least
/// carers first. Throws GraphError if hole is not a hole of P(D), and
/// std::invalid_argument if d is not an acyclic (2,2) digraph.
std::vector<ExtendingSet> extending_sets(const Digraph& d, const Hole& hole);

/// Induced subgraph of U(D) on V(H) and the chosen carers, with the cycle
/// that splices each carer into its cared edge.
struct ObtainedSubgraph {
  Induced<SimpleGraph> graph;           // vertices relabeled; graph.original maps back
  std::vector<int> hamiltonian_cycle;   // original vertex labels
};

/// Throws TheoremViolation if the spliced cycle is not hamiltonian in L or
/// two carers are adjacent in U(D).
ObtainedSubgraph obtained_subgraph(const Digraph& d, const ExtendingSet& w);

struct PhiResult {
  Hole hole;         // the hole of P(D)
  Hole image;        // a hole of U(D)
  /// Index into extending_sets(d, hole) that produced the image; nullopt
  /// when H has no cared edge and the image is H itself.
  std::optional<std::size_t> choice;
  /// For each extending set, whether its obtained subgraph contains a hole.
  std::vector<bool> choice_has_hole;
  /// Holes of U(D) lying inside the obtained subgraph of some extending set.
  std::vector<Hole> candidates;
};

/// The hole map: H itself when every edge of H lies in U(D), otherwise the
/// least hole of U(D) inside the obtained subgraph of the first extending set
/// that has one. Throws TheoremViolation if no extending set yields a hole.
PhiResult phi(const Digraph& d, const Hole& hole);

inline constexpr int kHoleCorrespondenceCap = 10;

struct HoleCorrespondenceReport {
  std::vector<Hole> holes_p;
  std::vector<Hole> holes_u;
  std::vector<PhiResult> map;  // parallel to holes_p
  bool p_holes_disjoint = true;
  bool no_u_hole_of_length_4_or_6 = true;
  bool hypotheses_met = true;
  /// matching[i]: index into holes_u assigned to holes_p[i], -1 if unmatched.
  std::vector<int> matching;
  bool injective = true;
  bool count_ok = true;

  /// Conclusions must hold whenever the hypotheses do.
  bool passes() const { return !hypotheses_met || (injective && count_ok); }
};

/// Throws GraphError above `cap` vertices.
HoleCorrespondenceReport verify_hole_correspondence(const Digraph& d, int cap = kHoleCorrespondenceCap);

}  // namespace moral
