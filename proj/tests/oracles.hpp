#pragma once

// Slow, obviously-correct reference implementations used only by tests.

#include <cstdint>
#include <random>
#include <set>
#include <vector>

#include <Eigen/Dense>

#include "argeslab/admissibility.hpp"
#include "argeslab/correlation.hpp"
#include "argeslab/graph.hpp"
#include "argeslab/scoring.hpp"

namespace oracle {

using namespace argeslab;

/// Random DAG: random order, each pair present with probability `density`.
Dag random_dag(int p, double density, std::mt19937_64& rng);
/// Random PDAG-free undirected graph.
Pdag random_undirected(int p, double density, std::mt19937_64& rng);
/// Random subset of `pool` (each element with probability 1/2).
NodeSet random_subset(const NodeSet& pool, std::mt19937_64& rng);

/// Path enumeration over simple paths in the skeleton.
bool d_separated_paths(const Dag& g, Node i, Node j, const NodeSet& S);

/// Every acyclic orientation of the skeleton of g (the input's directed edges
/// are not respected). Small graphs only.
std::vector<Dag> all_orientations(const Pdag& skel);
/// DAGs with g's skeleton and v-structures, via all_orientations.
std::vector<Dag> class_members(const Pdag& g);
/// Edges directed identically in every member, the rest undirected.
Pdag cpdag_by_intersection(const Dag& g);

/// All DAGs over p nodes (p <= 4 in practice).
std::vector<Dag> all_dags(int p);

/// Covered-edge reversal walk from g.
Dag covered_reversal_walk(const Dag& g, int steps, std::mt19937_64& rng);

/// Successor CPDAGs reachable from c by one admissible edge addition in a member.
std::set<std::vector<int>> insertion_successors(const Cpdag& c, const RestrictionPolicy& policy);
std::set<std::vector<int>> deletion_successors(const Cpdag& c);
/// Canonical encoding of a graph for set comparison.
std::vector<int> encode(const Pdag& g);

/// Partial correlation via OLS residual correlation on the data.
double residual_partial_correlation(const Eigen::MatrixXd& X, Node i, Node j, const NodeSet& S);

/// Kendall tau-b by direct pair counting.
double kendall_tau_b_quadratic(const Eigen::VectorXd& x, const Eigen::VectorXd& y);

/// Proximal gradient (ISTA) on the standardized lasso problem; returns the
/// objective value reached and the coefficients on the standardized scale.
double lasso_objective_ista(const Eigen::MatrixXd& Z, const Eigen::VectorXd& y, double gamma, int iters);
double lasso_objective(const Eigen::MatrixXd& Z, const Eigen::VectorXd& y, const Eigen::VectorXd& b, double gamma);
/// Centre and scale columns to unit population variance.
Eigen::MatrixXd standardize(const Eigen::MatrixXd& X);

/// Random correlation matrix from a random Gram matrix.
Eigen::MatrixXd random_correlation(int p, std::mt19937_64& rng);

}  // namespace oracle
