#include "argeslab/admissibility.hpp"

#include "argeslab/error.hpp"

namespace argeslab {

bool edge_admissible(const Pdag& c, Node i, Node k, const RestrictionPolicy& policy) {
  if (i == k || c.adjacent(i, k)) return false;
  if (policy.mode == RestrictionMode::Unrestricted) return true;
  if (policy.graph.size() != c.size())
    throw GraphError("restriction graph has " + std::to_string(policy.graph.size()) +
                     " nodes, expected " + std::to_string(c.size()));
  if (policy.graph.adjacent(i, k)) return true;
  switch (policy.mode) {
    case RestrictionMode::AdaptiveCIG:
      // common child j with i -> j <- k; i, k are non-adjacent so it is a v-structure
      return !set_intersection(c.children(i), c.children(k)).empty();
    case RestrictionMode::AdaptiveSkeleton: {
      const NodeSet ai = c.adjacents(i);
      const NodeSet ak = c.adjacents(k);
      return !set_intersection(ai, ak).empty();
    }
    default:
      return false;
  }
}

}  // namespace argeslab
