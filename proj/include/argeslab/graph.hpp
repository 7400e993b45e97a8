#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace argeslab {

using Node = int;
using NodeSet = std::vector<Node>;  // always sorted ascending, no duplicates

/// Ordered triple (i, j, k) with j the middle node and i < k.
using Triple = std::array<Node, 3>;
using NodePair = std::pair<Node, Node>;

/// Partially directed graph over nodes 0..p-1.
///
/// A pair of nodes carries at most one edge, either directed (i -> j) or
/// undirected (i -- j). Neighbour lists are kept sorted so that every query
/// iterates in ascending index order.
class Pdag {
 public:
  Pdag() = default;
  explicit Pdag(int p);

  int size() const { return static_cast<int>(parents_.size()); }

  void add_directed(Node from, Node to);
  void add_undirected(Node a, Node b);
  /// Removes whatever edge joins a and b; no-op when they are not adjacent.
  void remove_edge(Node a, Node b);
  /// Turns a -- b into from -> to.
  void orient(Node from, Node to);

  bool adjacent(Node a, Node b) const;
  bool has_directed(Node from, Node to) const;
  bool has_undirected(Node a, Node b) const;

  const NodeSet& parents(Node v) const { return parents_[check(v)]; }
  const NodeSet& children(Node v) const { return children_[check(v)]; }
  const NodeSet& neighbors(Node v) const { return neighbors_[check(v)]; }
  /// Parents, children and undirected neighbours merged.
  NodeSet adjacents(Node v) const;
  std::size_t degree(Node v) const {
    return parents(v).size() + children(v).size() + neighbors(v).size();
  }

  std::vector<NodePair> directed_edges() const;
  std::vector<NodePair> undirected_edges() const;  // pairs with first < second
  std::size_t num_directed() const;
  std::size_t num_undirected() const;
  std::size_t num_edges() const { return num_directed() + num_undirected(); }

  friend bool operator==(const Pdag& a, const Pdag& b) {
    return a.parents_ == b.parents_ && a.neighbors_ == b.neighbors_;
  }

 private:
  std::size_t check(Node v) const;
  void check_pair(Node a, Node b) const;

  std::vector<NodeSet> parents_;
  std::vector<NodeSet> children_;
  std::vector<NodeSet> neighbors_;
};

/// A Pdag without undirected edges and without directed cycles.
class Dag {
 public:
  Dag() = default;
  /// Validates; throws GraphError for undirected edges, AcyclicityError for cycles.
  explicit Dag(Pdag g);
  static Dag empty(int p) { return Dag(Pdag(p)); }

  const Pdag& graph() const { return g_; }
  operator const Pdag&() const { return g_; }  // NOLINT: read-only view

  int size() const { return g_.size(); }
  const NodeSet& parents(Node v) const { return g_.parents(v); }
  const NodeSet& children(Node v) const { return g_.children(v); }
  bool adjacent(Node a, Node b) const { return g_.adjacent(a, b); }
  bool has_edge(Node from, Node to) const { return g_.has_directed(from, to); }
  std::size_t num_edges() const { return g_.num_directed(); }

  /// True when adding from -> to keeps the graph acyclic (and the pair is free).
  bool can_add(Node from, Node to) const;
  /// Throws AcyclicityError if the edge closes a cycle.
  void add_edge(Node from, Node to);
  void remove_edge(Node from, Node to) { g_.remove_edge(from, to); }
  /// Reverses from -> to; throws AcyclicityError if that closes a cycle.
  void reverse_edge(Node from, Node to);

  friend bool operator==(const Dag& a, const Dag& b) { return a.g_ == b.g_; }

 private:
  Pdag g_;
};

class Cpdag;
Cpdag dag_to_cpdag(const Dag& g);

/// Completed PDAG: the canonical representative of a Markov equivalence class.
class Cpdag {
 public:
  Cpdag() = default;
  static Cpdag empty(int p) { return Cpdag(Pdag(p)); }
  /// Checks that g equals dag_to_cpdag of one of its consistent extensions.
  /// Throws GraphError otherwise.
  static Cpdag validate(Pdag g);

  const Pdag& graph() const { return g_; }
  operator const Pdag&() const { return g_; }  // NOLINT: read-only view

  int size() const { return g_.size(); }
  bool adjacent(Node a, Node b) const { return g_.adjacent(a, b); }
  std::size_t num_edges() const { return g_.num_edges(); }

  friend bool operator==(const Cpdag& a, const Cpdag& b) { return a.g_ == b.g_; }

 private:
  explicit Cpdag(Pdag g) : g_(std::move(g)) {}
  friend Cpdag dag_to_cpdag(const Dag& g);

  Pdag g_;
};

/// Undirected copy of g with one edge per adjacent pair.
Pdag skeleton(const Pdag& g);

/// Every (i, j, k), i < k, with i -> j <- k and i, k non-adjacent. Sorted.
std::vector<Triple> v_structures(const Pdag& g);

/// Every (i, j, k), i < k, with j adjacent to both and i, k non-adjacent. Sorted.
std::vector<Triple> unshielded_triples(const Pdag& g);

/// Nodes reachable from v along directed edges, v included.
NodeSet descendants(const Dag& g, Node v);
NodeSet ancestors(const Dag& g, Node v);

/// Kahn's algorithm over the directed edges, smallest index first.
/// Undirected edges are ignored. Throws AcyclicityError on a directed cycle.
std::vector<Node> topological_order(const Pdag& g);

bool has_directed_cycle(const Pdag& g);

/// Graph file text: `nodes: p` then `i -> j` / `i -- j` lines, `#` comments.
Pdag parse_graph(std::string_view text);
std::string format_graph(const Pdag& g);

Pdag read_graph_file(const std::string& path);
void write_graph_file(const std::string& path, const Pdag& g);

/// Set helpers on sorted node vectors.
bool contains(const NodeSet& s, Node v);
NodeSet set_union(const NodeSet& a, const NodeSet& b);
NodeSet set_difference(const NodeSet& a, const NodeSet& b);
NodeSet set_intersection(const NodeSet& a, const NodeSet& b);
NodeSet with(NodeSet s, Node v);
NodeSet without(NodeSet s, Node v);

}  // namespace argeslab
