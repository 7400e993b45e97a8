#pragma once

#include "argeslab/graph.hpp"

namespace argeslab {

enum class RestrictionMode { Unrestricted, StaticCIG, StaticSkeleton, AdaptiveCIG, AdaptiveSkeleton };

/// Which edges the forward phase may add. `graph` is undirected and is
/// ignored in Unrestricted mode.
struct RestrictionPolicy {
  RestrictionMode mode = RestrictionMode::Unrestricted;
  Pdag graph;

  static RestrictionPolicy unrestricted() { return {}; }
};

/// Whether adding an edge between the non-adjacent nodes i and k is allowed.
///
/// Static modes look only at the restriction graph. The adaptive modes also
/// admit i, k when they are the endpoints of a v-structure (CIG) or of an
/// unshielded triple (skeleton) in c. Returns false when i, k are adjacent.
bool edge_admissible(const Pdag& c, Node i, Node k, const RestrictionPolicy& policy);

}  // namespace argeslab
