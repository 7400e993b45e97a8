#include "argeslab/equivalence.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "argeslab/error.hpp"

namespace argeslab {

bool markov_equivalent(const Dag& a, const Dag& b) {
  if (a.size() != b.size()) return false;
  return skeleton(a) == skeleton(b) && v_structures(a) == v_structures(b);
}

namespace {

// Which rule, if any, forces the undirected edge a -- b to become a -> b.
bool meek_forces(const Pdag& g, Node a, Node b) {
  // R1: c -> a, c and b non-adjacent.
  for (Node c : g.parents(a))
    if (!g.adjacent(c, b)) return true;
  // R2: a -> c -> b.
  for (Node c : g.children(a))
    if (g.has_directed(c, b)) return true;
  // R3: a -- c -> b, a -- d -> b, c and d non-adjacent.
  const NodeSet& und = g.neighbors(a);
  for (std::size_t x = 0; x < und.size(); ++x) {
    Node c = und[x];
    if (c == b || !g.has_directed(c, b)) continue;
    for (std::size_t y = x + 1; y < und.size(); ++y) {
      Node d = und[y];
      if (d != b && g.has_directed(d, b) && !g.adjacent(c, d)) return true;
    }
  }
  // R4: a -- d, d -> c -> b, a adjacent to c, b and d non-adjacent.
  for (Node d : und) {
    if (d == b || g.adjacent(b, d)) continue;
    for (Node c : g.children(d))
      if (c != a && g.has_directed(c, b) && g.adjacent(a, c)) return true;
  }
  return false;
}

}  // namespace

Pdag apply_meek_closure(Pdag g) {
  if (has_directed_cycle(g)) throw InconsistencyError("input has a directed cycle");
  bool changed = true;
  while (changed) {
    changed = false;
    for (auto [a, b] : g.undirected_edges()) {
      if (!g.has_undirected(a, b)) continue;
      const bool forward = meek_forces(g, a, b);
      const bool backward = meek_forces(g, b, a);
      if (forward && backward)
        throw InconsistencyError("orientation rules force both " + std::to_string(a) + " -> " +
                                 std::to_string(b) + " and its reverse");
      if (forward) {
        g.orient(a, b);
        changed = true;
      } else if (backward) {
        g.orient(b, a);
        changed = true;
      }
    }
  }
  if (has_directed_cycle(g)) throw InconsistencyError("orientation rules produced a cycle");
  return g;
}

Cpdag dag_to_cpdag(const Dag& dag) {
  const Pdag& g = dag.graph();
  Pdag out(g.size());
  for (Node j = 0; j < g.size(); ++j) {
    const NodeSet& pa = g.parents(j);
    for (Node i : pa) {
      bool compelled = false;
      for (Node k : pa)
        if (k != i && !g.adjacent(i, k)) {
          compelled = true;
          break;
        }
      if (compelled)
        out.add_directed(i, j);
      else
        out.add_undirected(i, j);
    }
  }
  return Cpdag(apply_meek_closure(std::move(out)));
}

Cpdag Cpdag::validate(Pdag g) {
  Dag ext;
  try {
    ext = consistent_extension(g);
  } catch (const ExtensionError& e) {
    throw GraphError(std::string("not a CPDAG: ") + e.what());
  }
  Cpdag c = dag_to_cpdag(ext);
  if (!(c.graph() == g)) throw GraphError("not a CPDAG: differs from the completion of its extension");
  return c;
}

Dag consistent_extension(const Pdag& g) {
  const int p = g.size();
  if (has_directed_cycle(g)) throw ExtensionError("directed edges form a cycle");
  Pdag work = g;
  Pdag out(p);
  for (auto [i, j] : g.directed_edges()) out.add_directed(i, j);
  std::vector<char> alive(p, 1);

  for (int remaining = p; remaining > 0; --remaining) {
    Node sink = -1;
    for (Node x = p - 1; x >= 0 && sink < 0; --x) {
      if (!alive[x] || !work.children(x).empty()) continue;
      NodeSet adj = work.adjacents(x);
      bool ok = true;
      for (Node y : work.neighbors(x)) {
        for (Node z : adj)
          if (z != y && !work.adjacent(y, z)) {
            ok = false;
            break;
          }
        if (!ok) break;
      }
      if (ok) sink = x;
    }
    if (sink < 0) throw ExtensionError("no consistent extension exists");
    for (Node y : work.neighbors(sink)) out.add_directed(y, sink);
    for (Node y : work.adjacents(sink)) work.remove_edge(y, sink);
    alive[sink] = 0;
  }
  return Dag(std::move(out));
}

std::vector<Dag> enumerate_equivalence_class(const Pdag& c, std::size_t cap) {
  const auto target = v_structures(c);
  const std::set<Triple> allowed(target.begin(), target.end());
  const auto undirected = c.undirected_edges();

  Pdag cur(c.size());
  for (auto [i, j] : c.directed_edges()) cur.add_directed(i, j);
  if (has_directed_cycle(cur)) return {};

  std::vector<Dag> out;
  // Adding u -> v must not close a cycle nor create an unlisted v-structure
  // with an already oriented parent of v.
  auto ok_to_add = [&](Node u, Node v) {
    for (Node w : cur.parents(v))
      if (!c.adjacent(u, w) && !allowed.count({std::min(u, w), v, std::max(u, w)})) return false;
    std::vector<char> seen(c.size(), 0);
    std::vector<Node> stack{v};
    seen[v] = 1;
    while (!stack.empty()) {
      Node x = stack.back();
      stack.pop_back();
      if (x == u) return false;
      for (Node y : cur.children(x))
        if (!seen[y]) {
          seen[y] = 1;
          stack.push_back(y);
        }
    }
    return true;
  };

  std::function<void(std::size_t)> recurse = [&](std::size_t idx) {
    if (idx == undirected.size()) {
      // Each oriented edge was checked against earlier parents only; a final
      // full check catches colliders formed in the other order.
      if (v_structures(cur) != target) return;
      if (out.size() >= cap) throw CapExceededError("equivalence class exceeds cap");
      out.emplace_back(cur);
      return;
    }
    auto [a, b] = undirected[idx];
    for (auto [u, v] : {NodePair{a, b}, NodePair{b, a}}) {
      if (!ok_to_add(u, v)) continue;
      cur.add_directed(u, v);
      recurse(idx + 1);
      cur.remove_edge(u, v);
    }
  };
  recurse(0);
  return out;
}

}  // namespace argeslab
