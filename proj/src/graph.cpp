#include "argeslab/graph.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <optional>
#include <queue>
#include <sstream>

#include "argeslab/error.hpp"

namespace argeslab {

namespace {

void insert_sorted(NodeSet& s, Node v) {
  auto it = std::lower_bound(s.begin(), s.end(), v);
  if (it == s.end() || *it != v) s.insert(it, v);
}

void erase_sorted(NodeSet& s, Node v) {
  auto it = std::lower_bound(s.begin(), s.end(), v);
  if (it != s.end() && *it == v) s.erase(it);
}

}  // namespace

bool contains(const NodeSet& s, Node v) { return std::binary_search(s.begin(), s.end(), v); }

NodeSet set_union(const NodeSet& a, const NodeSet& b) {
  NodeSet out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

NodeSet set_difference(const NodeSet& a, const NodeSet& b) {
  NodeSet out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

NodeSet set_intersection(const NodeSet& a, const NodeSet& b) {
  NodeSet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

NodeSet with(NodeSet s, Node v) {
  insert_sorted(s, v);
  return s;
}

NodeSet without(NodeSet s, Node v) {
  erase_sorted(s, v);
  return s;
}

// ---------------------------------------------------------------------------
// Pdag

Pdag::Pdag(int p) {
  if (p < 0) throw GraphError("negative node count");
  parents_.resize(p);
  children_.resize(p);
  neighbors_.resize(p);
}

std::size_t Pdag::check(Node v) const {
  if (v < 0 || v >= size())
    throw GraphError("node " + std::to_string(v) + " out of range for p=" + std::to_string(size()));
  return static_cast<std::size_t>(v);
}

void Pdag::check_pair(Node a, Node b) const {
  check(a);
  check(b);
  if (a == b) throw GraphError("self-loop at node " + std::to_string(a));
  if (adjacent(a, b))
    throw GraphError("nodes " + std::to_string(a) + " and " + std::to_string(b) +
                     " already joined by an edge");
}

void Pdag::add_directed(Node from, Node to) {
  check_pair(from, to);
  insert_sorted(children_[from], to);
  insert_sorted(parents_[to], from);
}

void Pdag::add_undirected(Node a, Node b) {
  check_pair(a, b);
  insert_sorted(neighbors_[a], b);
  insert_sorted(neighbors_[b], a);
}

void Pdag::remove_edge(Node a, Node b) {
  check(a);
  check(b);
  erase_sorted(children_[a], b);
  erase_sorted(parents_[b], a);
  erase_sorted(children_[b], a);
  erase_sorted(parents_[a], b);
  erase_sorted(neighbors_[a], b);
  erase_sorted(neighbors_[b], a);
}

void Pdag::orient(Node from, Node to) {
  if (!has_undirected(from, to))
    throw GraphError("cannot orient " + std::to_string(from) + " -> " + std::to_string(to) +
                     ": no undirected edge");
  erase_sorted(neighbors_[from], to);
  erase_sorted(neighbors_[to], from);
  insert_sorted(children_[from], to);
  insert_sorted(parents_[to], from);
}

bool Pdag::adjacent(Node a, Node b) const {
  return contains(parents_[check(a)], b) || contains(children_[a], b) ||
         contains(neighbors_[a], b);
}

bool Pdag::has_directed(Node from, Node to) const {
  return contains(children_[check(from)], to);
}

bool Pdag::has_undirected(Node a, Node b) const { return contains(neighbors_[check(a)], b); }

NodeSet Pdag::adjacents(Node v) const {
  NodeSet out = set_union(parents(v), children(v));
  return set_union(out, neighbors(v));
}

std::vector<NodePair> Pdag::directed_edges() const {
  std::vector<NodePair> out;
  for (Node i = 0; i < size(); ++i)
    for (Node j : children_[i]) out.emplace_back(i, j);
  return out;
}

std::vector<NodePair> Pdag::undirected_edges() const {
  std::vector<NodePair> out;
  for (Node i = 0; i < size(); ++i)
    for (Node j : neighbors_[i])
      if (i < j) out.emplace_back(i, j);
  return out;
}

std::size_t Pdag::num_directed() const {
  std::size_t n = 0;
  for (const auto& c : children_) n += c.size();
  return n;
}

std::size_t Pdag::num_undirected() const {
  std::size_t n = 0;
  for (const auto& c : neighbors_) n += c.size();
  return n / 2;
}

// ---------------------------------------------------------------------------
// Dag

Dag::Dag(Pdag g) : g_(std::move(g)) {
  if (g_.num_undirected() != 0) throw GraphError("a DAG cannot contain undirected edges");
  topological_order(g_);
}

bool Dag::can_add(Node from, Node to) const {
  if (from == to || g_.adjacent(from, to)) return false;
  // from -> to closes a cycle iff `from` is reachable from `to`.
  std::vector<char> seen(size(), 0);
  std::vector<Node> stack{to};
  seen[to] = 1;
  while (!stack.empty()) {
    Node v = stack.back();
    stack.pop_back();
    if (v == from) return false;
    for (Node c : g_.children(v))
      if (!seen[c]) {
        seen[c] = 1;
        stack.push_back(c);
      }
  }
  return true;
}

void Dag::add_edge(Node from, Node to) {
  if (g_.adjacent(from, to) || from == to) {
    g_.add_directed(from, to);  // throws the appropriate GraphError
  }
  if (!can_add(from, to))
    throw AcyclicityError("edge " + std::to_string(from) + " -> " + std::to_string(to) +
                          " closes a directed cycle");
  g_.add_directed(from, to);
}

void Dag::reverse_edge(Node from, Node to) {
  if (!g_.has_directed(from, to))
    throw GraphError("no edge " + std::to_string(from) + " -> " + std::to_string(to));
  g_.remove_edge(from, to);
  if (!can_add(to, from)) {
    g_.add_directed(from, to);
    throw AcyclicityError("reversing " + std::to_string(from) + " -> " + std::to_string(to) +
                          " closes a directed cycle");
  }
  g_.add_directed(to, from);
}

// ---------------------------------------------------------------------------
// structural queries

Pdag skeleton(const Pdag& g) {
  Pdag out(g.size());
  for (auto [i, j] : g.directed_edges()) out.add_undirected(std::min(i, j), std::max(i, j));
  for (auto [i, j] : g.undirected_edges()) out.add_undirected(i, j);
  return out;
}

std::vector<Triple> v_structures(const Pdag& g) {
  std::vector<Triple> out;
  for (Node j = 0; j < g.size(); ++j) {
    const NodeSet& pa = g.parents(j);
    for (std::size_t a = 0; a < pa.size(); ++a)
      for (std::size_t b = a + 1; b < pa.size(); ++b)
        if (!g.adjacent(pa[a], pa[b])) out.push_back({pa[a], j, pa[b]});
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Triple> unshielded_triples(const Pdag& g) {
  std::vector<Triple> out;
  for (Node j = 0; j < g.size(); ++j) {
    NodeSet adj = g.adjacents(j);
    for (std::size_t a = 0; a < adj.size(); ++a)
      for (std::size_t b = a + 1; b < adj.size(); ++b)
        if (!g.adjacent(adj[a], adj[b])) out.push_back({adj[a], j, adj[b]});
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

NodeSet reach(const Pdag& g, Node v, bool forward) {
  std::vector<char> seen(g.size(), 0);
  std::vector<Node> stack{v};
  seen[v] = 1;
  while (!stack.empty()) {
    Node u = stack.back();
    stack.pop_back();
    for (Node w : forward ? g.children(u) : g.parents(u))
      if (!seen[w]) {
        seen[w] = 1;
        stack.push_back(w);
      }
  }
  NodeSet out;
  for (Node u = 0; u < g.size(); ++u)
    if (seen[u]) out.push_back(u);
  return out;
}

}  // namespace

NodeSet descendants(const Dag& g, Node v) { return reach(g, v, true); }
NodeSet ancestors(const Dag& g, Node v) { return reach(g, v, false); }

std::vector<Node> topological_order(const Pdag& g) {
  const int p = g.size();
  std::vector<std::size_t> indegree(p);
  std::priority_queue<Node, std::vector<Node>, std::greater<>> ready;
  for (Node v = 0; v < p; ++v) {
    indegree[v] = g.parents(v).size();
    if (indegree[v] == 0) ready.push(v);
  }
  std::vector<Node> order;
  order.reserve(p);
  while (!ready.empty()) {
    Node v = ready.top();
    ready.pop();
    order.push_back(v);
    for (Node c : g.children(v))
      if (--indegree[c] == 0) ready.push(c);
  }
  if (static_cast<int>(order.size()) != p) throw AcyclicityError("directed cycle detected");
  return order;
}

bool has_directed_cycle(const Pdag& g) {
  try {
    topological_order(g);
    return false;
  } catch (const AcyclicityError&) {
    return true;
  }
}

// ---------------------------------------------------------------------------
// graph file format

namespace {

std::string_view trim(std::string_view s) {
  const auto ws = " \t\r";
  auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

bool parse_int(std::string_view s, int& out) {
  s = trim(s);
  if (s.empty()) return false;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

}  // namespace

Pdag parse_graph(std::string_view text) {
  std::optional<Pdag> g;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto nl = text.find('\n', pos);
    std::string_view raw =
        text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;

    if (auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    std::string_view line = trim(raw);
    if (line.empty()) continue;

    if (!g) {
      constexpr std::string_view key = "nodes:";
      int p = 0;
      if (line.substr(0, key.size()) != key || !parse_int(line.substr(key.size()), p) || p < 0)
        throw ParseError("expected 'nodes: <p>'", line_no);
      g.emplace(p);
      continue;
    }

    bool directed = true;
    auto op = line.find("->");
    if (op == std::string_view::npos) {
      op = line.find("--");
      directed = false;
    }
    int a = 0, b = 0;
    if (op == std::string_view::npos || !parse_int(line.substr(0, op), a) ||
        !parse_int(line.substr(op + 2), b))
      throw ParseError("malformed edge line '" + std::string(line) + "'", line_no);
    if (a < 0 || b < 0 || a >= g->size() || b >= g->size())
      throw ParseError("node index out of range for p=" + std::to_string(g->size()), line_no);
    if (a == b) throw ParseError("self-loop at node " + std::to_string(a), line_no);
    if (g->adjacent(a, b))
      throw ParseError("duplicate or conflicting edge between " + std::to_string(a) + " and " +
                           std::to_string(b),
                       line_no);
    if (directed)
      g->add_directed(a, b);
    else
      g->add_undirected(a, b);
  }
  if (!g) throw ParseError("missing 'nodes: <p>' header", 0);
  return std::move(*g);
}

std::string format_graph(const Pdag& g) {
  std::ostringstream out;
  out << "nodes: " << g.size() << '\n';
  for (auto [i, j] : g.directed_edges()) out << i << " -> " << j << '\n';
  for (auto [i, j] : g.undirected_edges()) out << i << " -- " << j << '\n';
  return out.str();
}

Pdag read_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::ios_base::failure("cannot open graph file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return parse_graph(buf.str());
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what(), 0);
  }
}

void write_graph_file(const std::string& path, const Pdag& g) {
  std::ofstream out(path);
  if (!out) throw std::ios_base::failure("cannot write graph file '" + path + "'");
  out << format_graph(g);
}

}  // namespace argeslab
