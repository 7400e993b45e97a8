#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "argeslab/dataset.hpp"
#include "argeslab/graph.hpp"

namespace argeslab {

enum class ErrorKind { Gaussian, Uniform, Laplace };
enum class NpnFamily { Identity, Cubic, SignedSqrt, Exp };

const char* to_string(ErrorKind k);
const char* to_string(NpnFamily f);
ErrorKind parse_error_kind(const std::string& s);
NpnFamily parse_npn_family(const std::string& s);

/// X = B X + eps with B(j, i) the weight of edge i -> j.
struct LinearSem {
  int p = 0;
  Eigen::MatrixXd B;
  Eigen::VectorXd error_variances;
  ErrorKind error_kind = ErrorKind::Gaussian;
  std::vector<Node> causal_order;  // empty when not drawn at random

  /// Nonzero pattern of B as a DAG; throws AcyclicityError.
  Dag structure() const;
};

/// Child streams derived from one user seed.
enum class Stream : std::uint64_t { Topology = 1, Weights = 2, Variances = 3, Noise = 4 };
/// splitmix64(seed ^ (stream * golden ratio constant)).
std::uint64_t stream_seed(std::uint64_t seed, Stream stream);
/// Seed of replicate r: the user seed itself for r = 0, a split-off value otherwise.
std::uint64_t replicate_seed(std::uint64_t seed, std::uint64_t r);

/// Random causal order, each pair included with probability
/// expected_edges / C(p, 2), weights uniform on (-1,-0.1) U (0.1,1), error
/// variances uniform on [1, 2]. Throws ConfigError if expected_edges > C(p, 2).
LinearSem random_sem(int p, double expected_edges, std::uint64_t seed,
                     ErrorKind kind = ErrorKind::Gaussian);

/// Random polytree: in a random order each node after the first attaches to a
/// uniformly chosen earlier node, with a random orientation.
LinearSem random_polytree_sem(int p, std::uint64_t seed, ErrorKind kind = ErrorKind::Gaussian);

/// Block-diagonal union; the nodes of b come after those of a.
LinearSem disjoint_union(const LinearSem& a, const LinearSem& b);

/// n rows, noise drawn from the Noise stream of `seed`, row by row.
Dataset sample_sem(const LinearSem& sem, int n, std::uint64_t seed);

Dataset nonparanormal_transform(const Dataset& d, NpnFamily family);

/// Four-node fixture: 0->2 (1.4), 1->2 (1.3), 1->3 (1.2), 2->3 (0.9), unit variances.
LinearSem example1_sem();

std::string sem_to_json(const LinearSem& sem);
LinearSem sem_from_json(const std::string& text);
LinearSem read_sem_file(const std::string& path);
void write_sem_file(const std::string& path, const LinearSem& sem);

}  // namespace argeslab
