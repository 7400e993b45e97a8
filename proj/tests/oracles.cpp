#include "oracles.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

#include "argeslab/equivalence.hpp"

namespace oracle {

Dag random_dag(int p, double density, std::mt19937_64& rng) {
  std::vector<Node> order(p);
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  std::bernoulli_distribution coin(density);
  Pdag g(p);
  for (int a = 0; a < p; ++a)
    for (int b = a + 1; b < p; ++b)
      if (coin(rng)) g.add_directed(order[a], order[b]);
  return Dag(g);
}

Pdag random_undirected(int p, double density, std::mt19937_64& rng) {
  std::bernoulli_distribution coin(density);
  Pdag g(p);
  for (int a = 0; a < p; ++a)
    for (int b = a + 1; b < p; ++b)
      if (coin(rng)) g.add_undirected(a, b);
  return g;
}

NodeSet random_subset(const NodeSet& pool, std::mt19937_64& rng) {
  std::bernoulli_distribution coin(0.5);
  NodeSet out;
  for (Node v : pool)
    if (coin(rng)) out.push_back(v);
  return out;
}

bool d_separated_paths(const Dag& g, Node i, Node j, const NodeSet& S) {
  const int p = g.size();
  std::vector<char> desc_in_s(p, 0);
  for (Node v = 0; v < p; ++v)
    for (Node d : descendants(g, v))
      if (std::find(S.begin(), S.end(), d) != S.end()) desc_in_s[v] = 1;
  std::vector<Node> path{i};
  std::vector<char> on(p, 0);
  on[i] = 1;
  std::function<bool(Node)> active_from = [&](Node v) -> bool {
    if (v == j) {
      for (std::size_t t = 1; t + 1 < path.size(); ++t) {
        Node a = path[t - 1], m = path[t], b = path[t + 1];
        bool collider = g.has_edge(a, m) && g.has_edge(b, m);
        bool in_s = std::find(S.begin(), S.end(), m) != S.end();
        if (collider ? !desc_in_s[m] : in_s) return false;
      }
      return true;
    }
    for (Node w : g.graph().adjacents(v)) {
      if (on[w]) continue;
      on[w] = 1;
      path.push_back(w);
      bool found = active_from(w);
      path.pop_back();
      on[w] = 0;
      if (found) return true;
    }
    return false;
  };
  return !active_from(i);
}

std::vector<Dag> all_orientations(const Pdag& skel) {
  std::vector<NodePair> edges;
  for (Node a = 0; a < skel.size(); ++a)
    for (Node b = a + 1; b < skel.size(); ++b)
      if (skel.adjacent(a, b)) edges.emplace_back(a, b);
  std::vector<Dag> out;
  const std::size_t m = edges.size();
  for (unsigned long mask = 0; mask < (1ul << m); ++mask) {
    Pdag g(skel.size());
    for (std::size_t e = 0; e < m; ++e) {
      auto [a, b] = edges[e];
      if (mask >> e & 1ul)
        g.add_directed(b, a);
      else
        g.add_directed(a, b);
    }
    if (!has_directed_cycle(g)) out.emplace_back(g);
  }
  return out;
}

std::vector<Dag> class_members(const Pdag& g) {
  const auto vs = v_structures(g);
  std::vector<Dag> out;
  for (Dag& d : all_orientations(skeleton(g))) {
    bool keeps = true;
    for (auto [a, b] : g.directed_edges())
      if (!d.has_edge(a, b)) keeps = false;
    if (keeps && v_structures(d) == vs) out.push_back(std::move(d));
  }
  return out;
}

Pdag cpdag_by_intersection(const Dag& g) {
  const auto vs = v_structures(g);
  std::vector<Dag> members;
  for (Dag& d : all_orientations(skeleton(g)))
    if (v_structures(d) == vs) members.push_back(std::move(d));
  Pdag out(g.size());
  for (auto [a, b] : g.graph().directed_edges()) {
    bool fixed = std::all_of(members.begin(), members.end(), [&](const Dag& d) { return d.has_edge(a, b); });
    if (fixed)
      out.add_directed(a, b);
    else
      out.add_undirected(a, b);
  }
  return out;
}

std::vector<Dag> all_dags(int p) {
  Pdag complete(p);
  for (Node a = 0; a < p; ++a)
    for (Node b = a + 1; b < p; ++b) complete.add_undirected(a, b);
  std::vector<NodePair> pairs;
  for (Node a = 0; a < p; ++a)
    for (Node b = a + 1; b < p; ++b) pairs.emplace_back(a, b);
  std::vector<Dag> out;
  // each pair: absent, a->b, b->a
  std::vector<int> state(pairs.size(), 0);
  while (true) {
    Pdag g(p);
    for (std::size_t e = 0; e < pairs.size(); ++e) {
      if (state[e] == 1) g.add_directed(pairs[e].first, pairs[e].second);
      if (state[e] == 2) g.add_directed(pairs[e].second, pairs[e].first);
    }
    if (!has_directed_cycle(g)) out.emplace_back(g);
    std::size_t e = 0;
    while (e < state.size() && state[e] == 2) state[e++] = 0;
    if (e == state.size()) break;
    ++state[e];
  }
  return out;
}

Dag covered_reversal_walk(const Dag& g, int steps, std::mt19937_64& rng) {
  Dag cur = g;
  for (int s = 0; s < steps; ++s) {
    std::vector<NodePair> covered;
    for (auto [a, b] : cur.graph().directed_edges())
      if (with(cur.parents(a), a) == cur.parents(b)) covered.emplace_back(a, b);
    if (covered.empty()) break;
    auto [a, b] = covered[std::uniform_int_distribution<std::size_t>(0, covered.size() - 1)(rng)];
    cur.reverse_edge(a, b);
  }
  return cur;
}

std::vector<int> encode(const Pdag& g) {
  std::vector<int> out{g.size()};
  for (auto [a, b] : g.directed_edges()) out.push_back(a * g.size() + b);
  out.push_back(-1);
  for (auto [a, b] : g.undirected_edges()) out.push_back(a * g.size() + b);
  return out;
}

std::set<std::vector<int>> insertion_successors(const Cpdag& c, const RestrictionPolicy& policy) {
  std::set<std::vector<int>> out;
  for (const Dag& h : class_members(c.graph()))
    for (Node i = 0; i < c.size(); ++i)
      for (Node k = 0; k < c.size(); ++k) {
        if (i == k || h.adjacent(i, k) || !edge_admissible(c.graph(), i, k, policy) || !h.can_add(i, k)) continue;
        Dag next = h;
        next.add_edge(i, k);
        out.insert(encode(dag_to_cpdag(next).graph()));
      }
  return out;
}

std::set<std::vector<int>> deletion_successors(const Cpdag& c) {
  std::set<std::vector<int>> out;
  for (const Dag& h : class_members(c.graph()))
    for (auto [a, b] : h.graph().directed_edges()) {
      Dag next = h;
      next.remove_edge(a, b);
      out.insert(encode(dag_to_cpdag(next).graph()));
    }
  return out;
}

double residual_partial_correlation(const Eigen::MatrixXd& X, Node i, Node j, const NodeSet& S) {
  const Eigen::Index n = X.rows();
  Eigen::MatrixXd Z(n, static_cast<Eigen::Index>(S.size()) + 1);
  Z.col(0).setOnes();
  for (std::size_t t = 0; t < S.size(); ++t) Z.col(static_cast<Eigen::Index>(t) + 1) = X.col(S[t]);
  auto resid = [&](Node v) -> Eigen::VectorXd {
    Eigen::VectorXd y = X.col(v);
    Eigen::VectorXd beta = Z.colPivHouseholderQr().solve(y);
    return y - Z * beta;
  };
  Eigen::VectorXd ri = resid(i), rj = resid(j);
  ri.array() -= ri.mean();
  rj.array() -= rj.mean();
  return ri.dot(rj) / (ri.norm() * rj.norm());
}

double kendall_tau_b_quadratic(const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
  long long conc = 0, disc = 0, tx = 0, ty = 0;
  for (Eigen::Index a = 0; a < x.size(); ++a)
    for (Eigen::Index b = a + 1; b < x.size(); ++b) {
      double dx = x(a) - x(b), dy = y(a) - y(b);
      if (dx == 0 && dy == 0) continue;
      if (dx == 0) {
        ++tx;
      } else if (dy == 0) {
        ++ty;
      } else if ((dx > 0) == (dy > 0)) {
        ++conc;
      } else {
        ++disc;
      }
    }
  return static_cast<double>(conc - disc) /
         std::sqrt(static_cast<double>(conc + disc + tx) * static_cast<double>(conc + disc + ty));
}

Eigen::MatrixXd standardize(const Eigen::MatrixXd& X) {
  Eigen::MatrixXd Z = X.rowwise() - X.colwise().mean();
  for (Eigen::Index j = 0; j < Z.cols(); ++j) Z.col(j) /= std::sqrt(Z.col(j).squaredNorm() / Z.rows());
  return Z;
}

double lasso_objective(const Eigen::MatrixXd& Z, const Eigen::VectorXd& y, const Eigen::VectorXd& b, double gamma) {
  Eigen::VectorXd yc = y.array() - y.mean();
  return (yc - Z * b).squaredNorm() / (2.0 * Z.rows()) + gamma * b.lpNorm<1>();
}

double lasso_objective_ista(const Eigen::MatrixXd& Z, const Eigen::VectorXd& y, double gamma, int iters) {
  const double n = static_cast<double>(Z.rows());
  Eigen::VectorXd yc = y.array() - y.mean();
  Eigen::MatrixXd G = Z.transpose() * Z / n;
  Eigen::VectorXd c = Z.transpose() * yc / n;
  const double L = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(G).eigenvalues().maxCoeff();
  Eigen::VectorXd b = Eigen::VectorXd::Zero(Z.cols());
  for (int t = 0; t < iters; ++t) {
    Eigen::VectorXd z = b - (G * b - c) / L;
    for (Eigen::Index j = 0; j < z.size(); ++j) {
      double v = z(j), th = gamma / L;
      b(j) = v > th ? v - th : (v < -th ? v + th : 0.0);
    }
  }
  return lasso_objective(Z, y, b, gamma);
}

Eigen::MatrixXd random_correlation(int p, std::mt19937_64& rng) {
  std::normal_distribution<double> N(0.0, 1.0);
  Eigen::MatrixXd A(p + 3, p);
  for (Eigen::Index r = 0; r < A.rows(); ++r)
    for (Eigen::Index c = 0; c < A.cols(); ++c) A(r, c) = N(rng);
  Eigen::MatrixXd S = A.transpose() * A;
  Eigen::VectorXd d = S.diagonal().cwiseSqrt().cwiseInverse();
  Eigen::MatrixXd R = d.asDiagonal() * S * d.asDiagonal();
  R.diagonal().setOnes();
  return 0.5 * (R + R.transpose());
}

}  // namespace oracle
