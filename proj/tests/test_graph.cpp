#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "argeslab/error.hpp"
#include "argeslab/graph.hpp"
#include "oracles.hpp"

using namespace argeslab;

namespace {
const char* kG0 = "nodes: 4\n0 -> 2\n1 -> 2\n1 -> 3\n2 -> 3\n";
Dag g0() { return Dag(parse_graph(kG0)); }
}  // namespace

TEST_CASE("parse single edge") {
  Pdag g = parse_graph("nodes: 2\n0 -> 1");
  CHECK(g.size() == 2);
  CHECK(g.has_directed(0, 1));
  CHECK(g.num_edges() == 1);
}

TEST_CASE("parse and format round trip") {
  Pdag g = parse_graph("# comment\nnodes: 5\n3 -- 1\n\n4 -> 0  # trailing\n0 -> 2\n");
  std::string text = format_graph(g);
  CHECK(text == "nodes: 5\n0 -> 2\n4 -> 0\n1 -- 3\n");
  CHECK(parse_graph(text) == g);
  CHECK(format_graph(parse_graph(kG0)) == kG0);
}

TEST_CASE("parse errors carry the line number") {
  auto line_of = [](const char* text) {
    try {
      parse_graph(text);
    } catch (const ParseError& e) {
      return e.line();
    }
    return std::size_t{0};
  };
  CHECK(line_of("nodes: 2\n0 -> 1\n1 -> 0") == 3);
  CHECK(line_of("nodes: 2\n0 -> 2") == 2);
  CHECK(line_of("nodes: 2\n0 => 1") == 2);
  CHECK(line_of("nodes: 2\n0 -> 1\n0 -- 1") == 3);
  CHECK(line_of("nodes: 2\n1 -> 1") == 2);
  CHECK(line_of("0 -> 1") == 1);
}

TEST_CASE("skeleton") {
  Pdag s = skeleton(g0());
  CHECK(s.num_directed() == 0);
  CHECK(s.undirected_edges() == std::vector<NodePair>{{0, 2}, {1, 2}, {1, 3}, {2, 3}});
  CHECK(skeleton(Pdag(5)) == Pdag(5));
  std::mt19937_64 rng(3);
  for (int t = 0; t < 100; ++t) {
    Pdag g = oracle::random_dag(6, 0.4, rng).graph();
    auto u = g.directed_edges();
    if (!u.empty()) {
      g.remove_edge(u[0].first, u[0].second);
      g.add_undirected(u[0].first, u[0].second);
    }
    Pdag s1 = skeleton(g);
    CHECK(skeleton(s1) == s1);
    CHECK(s1.num_undirected() == g.num_edges());
  }
}

TEST_CASE("v-structures and unshielded triples") {
  CHECK(v_structures(g0()) == std::vector<Triple>{{0, 2, 1}});
  CHECK(v_structures(parse_graph("nodes: 3\n0 -> 1\n1 -> 2")).empty());
  CHECK(v_structures(parse_graph("nodes: 3\n0 -> 1\n2 -> 1\n0 -- 2")).empty());
  CHECK(unshielded_triples(g0()) == std::vector<Triple>{{0, 2, 1}, {0, 2, 3}});
  CHECK(unshielded_triples(parse_graph("nodes: 3\n0 -- 1\n1 -- 2\n0 -- 2")).empty());
  CHECK(unshielded_triples(parse_graph("nodes: 3\n0 -- 1\n1 -- 2")) == std::vector<Triple>{{0, 1, 2}});
}

TEST_CASE("unshielded triples match brute force; v-structures are a subset") {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 100; ++t) {
    Dag g = oracle::random_dag(6, 0.4, rng);
    std::vector<Triple> brute;
    for (Node i = 0; i < 6; ++i)
      for (Node k = i + 1; k < 6; ++k)
        for (Node j = 0; j < 6; ++j)
          if (j != i && j != k && g.adjacent(i, j) && g.adjacent(k, j) && !g.adjacent(i, k)) brute.push_back({i, j, k});
    std::sort(brute.begin(), brute.end());
    CHECK(unshielded_triples(g) == brute);
    for (const Triple& v : v_structures(g)) CHECK(std::binary_search(brute.begin(), brute.end(), v));
  }
}

TEST_CASE("descendants and topological order") {
  CHECK(descendants(g0(), 0) == NodeSet{0, 2, 3});
  CHECK(descendants(g0(), 3) == NodeSet{3});
  CHECK(descendants(Dag::empty(3), 1) == NodeSet{1});
  CHECK(ancestors(g0(), 3) == NodeSet{0, 1, 2, 3});
  CHECK(topological_order(g0()) == std::vector<Node>{0, 1, 2, 3});
  CHECK(topological_order(Pdag(3)) == std::vector<Node>{0, 1, 2});
  Pdag cyc(2);
  cyc.add_directed(0, 1);
  CHECK_THROWS_AS(cyc.add_directed(1, 0), GraphError);
  Pdag cyc3(3);
  cyc3.add_directed(0, 1);
  cyc3.add_directed(1, 2);
  cyc3.add_directed(2, 0);
  CHECK_THROWS_AS(topological_order(cyc3), AcyclicityError);
  CHECK_THROWS_AS(Dag{cyc3}, AcyclicityError);
}

TEST_CASE("descendants are transitive") {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 50; ++t) {
    Dag g = oracle::random_dag(7, 0.35, rng);
    for (Node i = 0; i < 7; ++i)
      for (Node j : descendants(g, i))
        for (Node k : descendants(g, j)) CHECK(contains(descendants(g, i), k));
  }
}

TEST_CASE("dag mutation") {
  Dag d = g0();
  CHECK_FALSE(d.can_add(3, 0));
  CHECK(d.can_add(0, 3));
  CHECK_THROWS_AS(d.add_edge(3, 0), AcyclicityError);
  CHECK_THROWS_AS(d.reverse_edge(1, 3), AcyclicityError);
  d.reverse_edge(0, 2);
  CHECK(d.has_edge(2, 0));
}
