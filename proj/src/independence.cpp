#include "argeslab/independence.hpp"

#include <deque>

#include "argeslab/admissibility.hpp"
#include "argeslab/error.hpp"

namespace argeslab {

bool d_separated(const Dag& g, Node i, Node j, const NodeSet& S) {
  const int p = g.size();
  std::vector<char> in_s(p, 0), anc_s(p, 0);
  for (Node s : S) in_s[s] = 1;

  std::vector<Node> stack(S.begin(), S.end());
  for (Node s : S) anc_s[s] = 1;
  while (!stack.empty()) {
    Node v = stack.back();
    stack.pop_back();
    for (Node u : g.parents(v))
      if (!anc_s[u]) {
        anc_s[u] = 1;
        stack.push_back(u);
      }
  }

  // State (v, up): ball arrived at v from a child; (v, down): from a parent.
  std::vector<char> seen_up(p, 0), seen_down(p, 0);
  std::deque<std::pair<Node, bool>> queue{{i, true}};
  while (!queue.empty()) {
    auto [v, up] = queue.front();
    queue.pop_front();
    auto& seen = up ? seen_up : seen_down;
    if (seen[v]) continue;
    seen[v] = 1;
    if (!in_s[v] && v == j) return false;
    if (up) {
      if (in_s[v]) continue;
      for (Node u : g.parents(v)) queue.emplace_back(u, true);
      for (Node c : g.children(v)) queue.emplace_back(c, false);
    } else {
      if (!in_s[v])
        for (Node c : g.children(v)) queue.emplace_back(c, false);
      if (anc_s[v])
        for (Node u : g.parents(v)) queue.emplace_back(u, true);
    }
  }
  return true;
}

namespace {

void check_sizes(const Dag& h, const Dag& g) {
  if (h.size() != g.size()) throw GraphError("graphs differ in node count");
}

std::vector<char> descendant_mask(const Dag& h, Node k) {
  std::vector<char> mask(h.size(), 0);
  for (Node d : descendants(h, k)) mask[d] = 1;
  return mask;
}

}  // namespace

bool is_independence_map(const Dag& h, const Dag& g) {
  check_sizes(h, g);
  for (Node k = 0; k < h.size(); ++k) {
    const auto desc = descendant_mask(h, k);
    const NodeSet& pa = h.parents(k);
    for (Node i = 0; i < h.size(); ++i) {
      if (desc[i] || contains(pa, i)) continue;
      if (!d_separated(g, i, k, pa)) return false;
    }
  }
  return true;
}

std::optional<ImapViolation> imap_violation(const Dag& h, const Dag& g) {
  check_sizes(h, g);
  using C = ImapViolation::Condition;
  const int p = h.size();
  for (Node i = 0; i < p; ++i)
    for (Node j = i + 1; j < p; ++j)
      if (g.adjacent(i, j) && !h.adjacent(i, j)) return ImapViolation{C::MissingSkeletonEdge, {i, j}};

  for (const Triple& t : v_structures(g)) {
    auto [i, j, k] = t;
    if (h.adjacent(i, k) || !h.adjacent(i, j) || !h.adjacent(k, j)) continue;
    if (!(h.has_edge(i, j) && h.has_edge(k, j))) return ImapViolation{C::VStructureMismatch, {i, j, k}};
  }

  for (const Triple& t : v_structures(h)) {
    auto [a, j, b] = t;
    // one endpoint is always a non-descendant of the other
    Node i = a, k = b;
    if (descendant_mask(h, k)[i]) std::swap(i, k);
    if (!d_separated(g, i, k, h.parents(k))) return ImapViolation{C::VStructureDependence, {i, j, k}};
  }
  return std::nullopt;
}

std::optional<NodePair> find_admissible_improvement(const Dag& h, const Dag& g,
                                                    const Pdag& restriction, AdmissibleMode mode) {
  check_sizes(h, g);
  if (restriction.size() != h.size()) throw GraphError("restriction graph size mismatch");
  const Cpdag c = dag_to_cpdag(h);
  RestrictionPolicy policy{
      mode == AdmissibleMode::CIG ? RestrictionMode::AdaptiveCIG : RestrictionMode::AdaptiveSkeleton,
      restriction};
  const int p = h.size();
  std::vector<std::vector<char>> desc(p);
  for (Node k = 0; k < p; ++k) desc[k] = descendant_mask(h, k);
  for (Node i = 0; i < p; ++i)
    for (Node k = 0; k < p; ++k) {
      if (i == k || h.adjacent(i, k) || desc[k][i]) continue;
      if (d_separated(g, i, k, h.parents(k))) continue;
      if (edge_admissible(c, i, k, policy)) return NodePair{i, k};
    }
  return std::nullopt;
}

}  // namespace argeslab
