#pragma once

#include <cstddef>
#include <vector>

#include "argeslab/graph.hpp"

namespace argeslab {

/// Same skeleton and same v-structures.
bool markov_equivalent(const Dag& a, const Dag& b);

/// Closes g under Meek's orientation rules R1-R4.
///
/// Only undirected edges are ever oriented, so the skeleton and all directed
/// input edges survive. Throws InconsistencyError when the rules demand both
/// orientations of an edge or leave a directed cycle.
Pdag apply_meek_closure(Pdag g);

/// A DAG with g's skeleton that keeps g's directed edges and introduces no
/// v-structure absent from g. Nodes are eliminated as sinks, always taking the
/// highest-index eligible node, so the result lists low indices first in
/// topological order. Throws ExtensionError when no such DAG exists.
Dag consistent_extension(const Pdag& g);

/// All consistent extensions of c (directed edges of c are kept fixed).
/// Throws CapExceededError when more than `cap` members exist.
std::vector<Dag> enumerate_equivalence_class(const Pdag& c, std::size_t cap = 100000);

}  // namespace argeslab
