#include "argeslab/simulation.hpp"

#include <cmath>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>

#include <boost/random/bernoulli_distribution.hpp>
#include <boost/random/laplace_distribution.hpp>
#include <boost/random/normal_distribution.hpp>
#include <boost/random/uniform_int_distribution.hpp>
#include <boost/random/uniform_real_distribution.hpp>
#include <json.hpp>

#include "argeslab/error.hpp"

namespace argeslab {

using Rng = std::mt19937_64;

const char* to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::Gaussian: return "gaussian";
    case ErrorKind::Uniform: return "uniform";
    case ErrorKind::Laplace: return "laplace";
  }
  return "?";
}

const char* to_string(NpnFamily f) {
  switch (f) {
    case NpnFamily::Identity: return "identity";
    case NpnFamily::Cubic: return "cubic";
    case NpnFamily::SignedSqrt: return "signed-sqrt";
    case NpnFamily::Exp: return "exp";
  }
  return "?";
}

ErrorKind parse_error_kind(const std::string& s) {
  for (ErrorKind k : {ErrorKind::Gaussian, ErrorKind::Uniform, ErrorKind::Laplace})
    if (s == to_string(k)) return k;
  throw ConfigError("unknown error kind '" + s + "'");
}

NpnFamily parse_npn_family(const std::string& s) {
  for (NpnFamily f : {NpnFamily::Identity, NpnFamily::Cubic, NpnFamily::SignedSqrt, NpnFamily::Exp})
    if (s == to_string(f)) return f;
  throw ConfigError("unknown nonparanormal family '" + s + "'");
}

Dag LinearSem::structure() const {
  if (B.rows() != p || B.cols() != p) throw ShapeError("weight matrix is not p x p");
  Pdag g(p);
  for (int j = 0; j < p; ++j)
    for (int i = 0; i < p; ++i)
      if (B(j, i) != 0.0) {
        if (i == j) throw GraphError("self loop in weight matrix");
        if (B(i, j) != 0.0) throw AcyclicityError("weights in both directions between " + std::to_string(i) +
                                                  " and " + std::to_string(j));
        g.add_directed(i, j);
      }
  return Dag(std::move(g));
}

std::uint64_t stream_seed(std::uint64_t seed, Stream stream) {
  std::uint64_t z = seed ^ (static_cast<std::uint64_t>(stream) * 0x9e3779b97f4a7c15ull);
  z += 0x9e3779b97f4a7c15ull;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

std::uint64_t replicate_seed(std::uint64_t seed, std::uint64_t r) {
  return r == 0 ? seed : stream_seed(seed + r, static_cast<Stream>(0x100 + r));
}

namespace {

double draw_weight(Rng& rng) {
  boost::random::uniform_real_distribution<double> mag(0.1, 1.0);
  boost::random::bernoulli_distribution<double> sign(0.5);
  const double w = mag(rng);
  return sign(rng) ? -w : w;
}

std::vector<Node> random_order(int p, Rng& rng) {
  std::vector<Node> order(p);
  std::iota(order.begin(), order.end(), 0);
  // Fisher-Yates with a portable distribution.
  for (int i = p - 1; i > 0; --i) {
    boost::random::uniform_int_distribution<int> pick(0, i);
    std::swap(order[i], order[pick(rng)]);
  }
  return order;
}

void fill_weights_and_variances(LinearSem& sem, const std::vector<NodePair>& edges, std::uint64_t seed) {
  Rng wr(stream_seed(seed, Stream::Weights));
  for (auto [from, to] : edges) sem.B(to, from) = draw_weight(wr);
  Rng vr(stream_seed(seed, Stream::Variances));
  boost::random::uniform_real_distribution<double> var(1.0, 2.0);
  for (int i = 0; i < sem.p; ++i) sem.error_variances(i) = var(vr);
}

LinearSem blank(int p, ErrorKind kind) {
  if (p < 1) throw ConfigError("p must be positive");
  LinearSem sem;
  sem.p = p;
  sem.B = Eigen::MatrixXd::Zero(p, p);
  sem.error_variances = Eigen::VectorXd::Ones(p);
  sem.error_kind = kind;
  return sem;
}

}  // namespace

LinearSem random_sem(int p, double expected_edges, std::uint64_t seed, ErrorKind kind) {
  LinearSem sem = blank(p, kind);
  const double pairs = 0.5 * p * (p - 1.0);
  if (!(expected_edges >= 0.0) || expected_edges > pairs)
    throw ConfigError("expected edges must lie in [0, " + std::to_string(static_cast<long>(pairs)) + "]");
  const double prob = pairs > 0 ? expected_edges / pairs : 0.0;
  Rng tr(stream_seed(seed, Stream::Topology));
  sem.causal_order = random_order(p, tr);
  std::vector<NodePair> edges;
  boost::random::uniform_real_distribution<double> u(0.0, 1.0);
  for (int a = 0; a < p; ++a)
    for (int b = a + 1; b < p; ++b)
      if (u(tr) < prob) edges.emplace_back(sem.causal_order[a], sem.causal_order[b]);
  fill_weights_and_variances(sem, edges, seed);
  return sem;
}

LinearSem random_polytree_sem(int p, std::uint64_t seed, ErrorKind kind) {
  LinearSem sem = blank(p, kind);
  Rng tr(stream_seed(seed, Stream::Topology));
  const std::vector<Node> order = random_order(p, tr);
  std::vector<NodePair> edges;
  boost::random::bernoulli_distribution<double> flip(0.5);
  for (int a = 1; a < p; ++a) {
    boost::random::uniform_int_distribution<int> pick(0, a - 1);
    const Node u = order[pick(tr)], v = order[a];
    edges.push_back(flip(tr) ? NodePair{u, v} : NodePair{v, u});
  }
  fill_weights_and_variances(sem, edges, seed);
  return sem;
}

LinearSem disjoint_union(const LinearSem& a, const LinearSem& b) {
  LinearSem out = blank(a.p + b.p, a.error_kind);
  out.B.topLeftCorner(a.p, a.p) = a.B;
  out.B.bottomRightCorner(b.p, b.p) = b.B;
  out.error_variances << a.error_variances, b.error_variances;
  return out;
}

Dataset sample_sem(const LinearSem& sem, int n, std::uint64_t seed) {
  if (n < 1) throw ConfigError("n must be positive");
  const Dag g = sem.structure();
  const std::vector<Node> topo = topological_order(g);
  Rng rng(stream_seed(seed, Stream::Noise));
  Dataset d;
  d.values.resize(n, sem.p);
  boost::random::normal_distribution<double> gauss(0.0, 1.0);
  boost::random::uniform_real_distribution<double> unif(-1.0, 1.0);
  boost::random::laplace_distribution<double> lap(0.0, 1.0);
  Eigen::VectorXd sd = sem.error_variances.cwiseSqrt();
  for (int r = 0; r < n; ++r)
    for (int j = 0; j < sem.p; ++j) {
      double e = 0.0;
      switch (sem.error_kind) {
        case ErrorKind::Gaussian: e = gauss(rng) * sd(j); break;
        case ErrorKind::Uniform: e = unif(rng) * std::sqrt(3.0) * sd(j); break;
        case ErrorKind::Laplace: e = lap(rng) * sd(j) / std::sqrt(2.0); break;
      }
      d.values(r, j) = e;
    }
  for (Node v : topo)
    for (Node u : g.parents(v)) d.values.col(v) += sem.B(v, u) * d.values.col(u);
  return d;
}

Dataset nonparanormal_transform(const Dataset& d, NpnFamily family) {
  Dataset out = d;
  switch (family) {
    case NpnFamily::Identity: break;
    case NpnFamily::Cubic: out.values = d.values.array().cube(); break;
    case NpnFamily::SignedSqrt: out.values = d.values.array().sign() * d.values.array().abs().sqrt(); break;
    case NpnFamily::Exp: out.values = d.values.array().exp(); break;
  }
  return out;
}

LinearSem example1_sem() {
  LinearSem sem = blank(4, ErrorKind::Gaussian);
  sem.B(2, 0) = 1.4;
  sem.B(2, 1) = 1.3;
  sem.B(3, 1) = 1.2;
  sem.B(3, 2) = 0.9;
  return sem;
}

std::string sem_to_json(const LinearSem& sem) {
  nlohmann::ordered_json j;
  j["p"] = sem.p;
  j["edges"] = nlohmann::ordered_json::array();
  for (int from = 0; from < sem.p; ++from)
    for (int to = 0; to < sem.p; ++to)
      if (sem.B(to, from) != 0.0) j["edges"].push_back({{"from", from}, {"to", to}, {"weight", sem.B(to, from)}});
  j["error_variances"] = std::vector<double>(sem.error_variances.data(), sem.error_variances.data() + sem.p);
  j["error_kind"] = to_string(sem.error_kind);
  j["causal_order"] = sem.causal_order;
  return j.dump(2) + "\n";
}

LinearSem sem_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("SEM JSON: ") + e.what(), 0);
  }
  try {
    LinearSem sem = blank(j.at("p").get<int>(), parse_error_kind(j.value("error_kind", std::string("gaussian"))));
    for (const auto& e : j.at("edges")) {
      const int from = e.at("from").get<int>(), to = e.at("to").get<int>();
      if (from < 0 || to < 0 || from >= sem.p || to >= sem.p) throw ParseError("SEM edge index out of range", 0);
      sem.B(to, from) = e.at("weight").get<double>();
    }
    const auto vars = j.at("error_variances").get<std::vector<double>>();
    if (static_cast<int>(vars.size()) != sem.p) throw ParseError("error_variances has wrong length", 0);
    for (int i = 0; i < sem.p; ++i) sem.error_variances(i) = vars[i];
    if (j.contains("causal_order")) sem.causal_order = j["causal_order"].get<std::vector<Node>>();
    sem.structure();
    return sem;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("SEM JSON: ") + e.what(), 0);
  }
}

LinearSem read_sem_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::ios_base::failure("cannot open '" + path + "' for reading");
  std::stringstream ss;
  ss << f.rdbuf();
  return sem_from_json(ss.str());
}

void write_sem_file(const std::string& path, const LinearSem& sem) {
  std::ofstream f(path);
  if (!f) throw std::ios_base::failure("cannot open '" + path + "' for writing");
  f << sem_to_json(sem);
  if (!f) throw std::ios_base::failure("write to '" + path + "' failed");
}

}  // namespace argeslab
