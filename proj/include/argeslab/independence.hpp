#pragma once

#include <optional>
#include <vector>

#include "argeslab/graph.hpp"

namespace argeslab {

struct SepQuery {
  Node i;
  Node j;
  NodeSet S;
};

/// Whether S blocks every path between i and j in g. Bayes-ball reachability.
bool d_separated(const Dag& g, Node i, Node j, const NodeSet& S);
inline bool d_separated(const Dag& g, const SepQuery& q) { return d_separated(g, q.i, q.j, q.S); }

/// Every independence encoded by h also holds in g. Checked through the local
/// Markov conditions of h.
bool is_independence_map(const Dag& h, const Dag& g);

struct ImapViolation {
  enum class Condition { MissingSkeletonEdge = 1, VStructureMismatch = 2, VStructureDependence = 3 };
  Condition condition;
  /// Pair {i, j} for condition 1. Triple (i, j, k) otherwise; for condition 3
  /// i is a non-descendant of k in h.
  std::vector<Node> witness;
};

/// Witness for h not being an independence map of g, or nullopt if it is.
/// Conditions are tried in the order 1, 2, 3, each scanned lexicographically.
std::optional<ImapViolation> imap_violation(const Dag& h, const Dag& g);

enum class AdmissibleMode { CIG, Skeleton };

/// First ordered pair (i, k) in lexicographic order such that i, k are
/// non-adjacent in h, i is a non-descendant of k, i and k are d-connected in g
/// given Pa_h(k), and i -> k is admissible for the CPDAG of h (adaptive rule
/// of the given mode, with `restriction` as the base graph).
/// Throws GraphError on a size mismatch.
std::optional<NodePair> find_admissible_improvement(const Dag& h, const Dag& g,
                                                    const Pdag& restriction, AdmissibleMode mode);

}  // namespace argeslab
