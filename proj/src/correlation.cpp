#include "argeslab/correlation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <boost/math/constants/constants.hpp>

#include "argeslab/error.hpp"
#include "argeslab/simulation.hpp"

namespace argeslab {

const char* to_string(CorrKind k) {
  switch (k) {
    case CorrKind::Pearson: return "pearson";
    case CorrKind::Spearman: return "spearman";
    case CorrKind::Kendall: return "kendall";
    case CorrKind::Oracle: return "oracle";
  }
  return "?";
}

CorrSource::CorrSource(Eigen::MatrixXd R, CorrKind kind, std::optional<long> n, double ridge)
    : R_(std::move(R)), kind_(kind), n_(n), ridge_(ridge) {
  if (R_.rows() != R_.cols()) throw ShapeError("correlation matrix is not square");
  if ((kind_ == CorrKind::Oracle) != !n_.has_value())
    throw ConfigError("oracle sources carry no sample size; sample sources need one");
  if (n_ && *n_ < 1) throw ConfigError("sample size must be positive");
  if (!(ridge_ >= 0.0)) throw ConfigError("ridge must be non-negative");
  const Eigen::Index p = R_.rows();
  for (Eigen::Index i = 0; i < p; ++i) {
    if (std::abs(R_(i, i) - 1.0) > 1e-8) throw ConfigError("diagonal entry is not 1");
    for (Eigen::Index j = 0; j < p; ++j) {
      double v = R_(i, j);
      if (!std::isfinite(v) || std::abs(v) > 1.0 + 1e-8) throw ConfigError("entry outside [-1, 1]");
      if (std::abs(v - R_(j, i)) > 1e-8) throw ConfigError("matrix is not symmetric");
    }
  }
  R_ = (0.5 * (R_ + R_.transpose())).cwiseMax(-1.0).cwiseMin(1.0);
  R_.diagonal().setOnes();
}

CorrSource CorrSource::with_ridge(double ridge) const {
  CorrSource out = *this;
  if (!(ridge >= 0.0)) throw ConfigError("ridge must be non-negative");
  out.ridge_ = ridge;
  return out;
}

namespace {

void check_columns(const Eigen::MatrixXd& X) {
  for (Eigen::Index j = 0; j < X.cols(); ++j) {
    const double first = X(0, j);
    if ((X.col(j).array() == first).all())
      throw DegenerateColumnError("column " + std::to_string(j) + " is constant", static_cast<int>(j));
  }
}

Eigen::MatrixXd pearson(const Eigen::MatrixXd& X) {
  Eigen::MatrixXd Z = X.rowwise() - X.colwise().mean();
  Eigen::VectorXd sd = Z.colwise().norm();
  for (Eigen::Index j = 0; j < Z.cols(); ++j) {
    if (sd(j) == 0.0 || !std::isfinite(sd(j)))
      throw DegenerateColumnError("column " + std::to_string(j) + " has zero variance", static_cast<int>(j));
    Z.col(j) /= sd(j);
  }
  Eigen::MatrixXd R = Z.transpose() * Z;
  R = (0.5 * (R + R.transpose())).cwiseMax(-1.0).cwiseMin(1.0);
  R.diagonal().setOnes();
  return R;
}

}  // namespace

CorrSource sample_correlation(const Dataset& d) {
  if (d.n() < 2) throw ConfigError("sample correlation needs at least 2 observations");
  check_columns(d.values);
  return CorrSource(pearson(d.values), CorrKind::Pearson, d.n());
}

Eigen::VectorXd average_ranks(const Eigen::VectorXd& x) {
  const Eigen::Index n = x.size();
  std::vector<Eigen::Index> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](auto a, auto b) { return x(a) < x(b); });
  Eigen::VectorXd r(n);
  for (Eigen::Index s = 0; s < n;) {
    Eigen::Index e = s;
    while (e + 1 < n && x(idx[e + 1]) == x(idx[s])) ++e;
    const double avg = 0.5 * static_cast<double>(s + e) + 1.0;
    for (Eigen::Index t = s; t <= e; ++t) r(idx[t]) = avg;
    s = e + 1;
  }
  return r;
}

double kendall_tau_b(const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
  const std::size_t n = static_cast<std::size_t>(x.size());
  if (static_cast<std::size_t>(y.size()) != n) throw ShapeError("kendall_tau_b: length mismatch");
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](auto a, auto b) {
    return x(a) < x(b) || (x(a) == x(b) && y(a) < y(b));
  });

  auto pairs = [](long long t) { return t * (t - 1) / 2; };
  long long n1 = 0, n3 = 0;
  for (std::size_t s = 0; s < n;) {
    std::size_t e = s;
    while (e + 1 < n && x(idx[e + 1]) == x(idx[s])) ++e;
    n1 += pairs(static_cast<long long>(e - s + 1));
    for (std::size_t a = s; a <= e;) {
      std::size_t b = a;
      while (b + 1 <= e && y(idx[b + 1]) == y(idx[a])) ++b;
      n3 += pairs(static_cast<long long>(b - a + 1));
      a = b + 1;
    }
    s = e + 1;
  }

  // Bottom-up merge sort on y counting swaps (discordant pairs).
  std::vector<double> v(n), buf(n);
  for (std::size_t k = 0; k < n; ++k) v[k] = y(idx[k]);
  long long swaps = 0;
  for (std::size_t width = 1; width < n; width *= 2) {
    for (std::size_t lo = 0; lo < n; lo += 2 * width) {
      std::size_t mid = std::min(lo + width, n), hi = std::min(lo + 2 * width, n);
      std::size_t a = lo, b = mid, o = lo;
      while (a < mid && b < hi) {
        if (v[b] < v[a]) {
          swaps += static_cast<long long>(mid - a);
          buf[o++] = v[b++];
        } else {
          buf[o++] = v[a++];
        }
      }
      while (a < mid) buf[o++] = v[a++];
      while (b < hi) buf[o++] = v[b++];
    }
    std::swap(v, buf);
  }
  long long n2 = 0;
  for (std::size_t s = 0; s < n;) {
    std::size_t e = s;
    while (e + 1 < n && v[e + 1] == v[s]) ++e;
    n2 += pairs(static_cast<long long>(e - s + 1));
    s = e + 1;
  }
  const long long n0 = pairs(static_cast<long long>(n));
  const double denom = std::sqrt(static_cast<double>(n0 - n1)) * std::sqrt(static_cast<double>(n0 - n2));
  if (denom == 0.0) throw DegenerateColumnError("kendall_tau_b: constant input", -1);
  const long long S = n0 - n1 - n2 + n3 - 2 * swaps;
  return static_cast<double>(S) / denom;
}

CorrSource rank_correlation(const Dataset& d, CorrKind kind, Exec exec) {
  if (kind != CorrKind::Spearman && kind != CorrKind::Kendall)
    throw ConfigError("rank_correlation needs Spearman or Kendall");
  if (d.n() < 3) throw ConfigError("rank correlation needs at least 3 observations");
  check_columns(d.values);
  const double pi = boost::math::constants::pi<double>();
  const int p = d.p();
  Eigen::MatrixXd R = Eigen::MatrixXd::Identity(p, p);
  if (kind == CorrKind::Spearman) {
    Eigen::MatrixXd ranks(d.n(), p);
#pragma omp parallel for schedule(dynamic) if (exec == Exec::Parallel)
    for (int j = 0; j < p; ++j) ranks.col(j) = average_ranks(d.values.col(j));
    R = pearson(ranks);
    R = (2.0 * (pi / 6.0 * R.array()).sin()).matrix();
  } else {
    const long npairs = static_cast<long>(p) * (p - 1) / 2;
    std::vector<std::pair<int, int>> pairs;
    pairs.reserve(static_cast<std::size_t>(npairs));
    for (int i = 0; i < p; ++i)
      for (int j = i + 1; j < p; ++j) pairs.emplace_back(i, j);
#pragma omp parallel for schedule(dynamic) if (exec == Exec::Parallel)
    for (long t = 0; t < npairs; ++t) {
      auto [i, j] = pairs[static_cast<std::size_t>(t)];
      const double tau = kendall_tau_b(d.values.col(i), d.values.col(j));
      R(i, j) = R(j, i) = std::sin(pi / 2.0 * tau);
    }
  }
  R.diagonal().setOnes();
  return CorrSource(R.cwiseMax(-1.0).cwiseMin(1.0), kind, d.n());
}

Eigen::MatrixXd population_covariance(const LinearSem& sem) {
  sem.structure();  // validates acyclicity
  if (sem.error_variances.size() != sem.p) throw ConfigError("error variance vector has wrong length");
  for (int i = 0; i < sem.p; ++i)
    if (!(sem.error_variances(i) > 0.0)) throw ConfigError("error variances must be positive");
  const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(sem.p, sem.p);
  const Eigen::MatrixXd A = (I - sem.B).partialPivLu().solve(I);
  Eigen::MatrixXd S = A * sem.error_variances.asDiagonal() * A.transpose();
  return 0.5 * (S + S.transpose());
}

CorrSource oracle_correlation(const LinearSem& sem) {
  const Eigen::MatrixXd S = population_covariance(sem);
  const Eigen::VectorXd inv_sd = S.diagonal().cwiseSqrt().cwiseInverse();
  Eigen::MatrixXd R = inv_sd.asDiagonal() * S * inv_sd.asDiagonal();
  R = (0.5 * (R + R.transpose())).cwiseMax(-1.0).cwiseMin(1.0);
  R.diagonal().setOnes();
  return CorrSource(R, CorrKind::Oracle, std::nullopt);
}

namespace {

// Cholesky factor of the submatrix over `order` (plus ridge); throws on failure.
Eigen::MatrixXd factor(const CorrSource& src, const std::vector<Node>& order, Node i, Node j,
                       const NodeSet& S) {
  const auto m = static_cast<Eigen::Index>(order.size());
  Eigen::MatrixXd psi(m, m);
  for (Eigen::Index a = 0; a < m; ++a)
    for (Eigen::Index b = 0; b < m; ++b) psi(a, b) = src.R()(order[a], order[b]);
  if (src.ridge() > 0.0) psi.diagonal().array() += src.ridge();
  Eigen::LLT<Eigen::MatrixXd> llt(psi);
  Eigen::MatrixXd L = llt.matrixL();
  if (llt.info() != Eigen::Success || !(L.diagonal().array() > 0.0).all() || !L.allFinite())
    throw SingularityError("correlation submatrix over (" + std::to_string(i) + ", " + std::to_string(j) +
                               " | " + std::to_string(S.size()) + " nodes) is not positive definite",
                           i, j, S);
  return L;
}

void check_node(const CorrSource& src, Node v) {
  if (v < 0 || v >= src.p()) throw GraphError("node " + std::to_string(v) + " out of range");
}

}  // namespace

PartialCorrelation partial_correlation(const CorrSource& src, Node i, Node j, const NodeSet& S) {
  check_node(src, i);
  check_node(src, j);
  if (i == j || contains(S, i) || contains(S, j))
    throw ContractError("partial_correlation: i, j must be distinct and outside S");
  const bool reg = src.ridge() > 0.0;
  if (S.empty() && !reg) return {src.R()(i, j), false};
  // Order (S, i, j): the trailing 2x2 block of L factors the conditional
  // covariance of (i, j) given S, so rho = b / sqrt(b^2 + c^2).
  std::vector<Node> order(S.begin(), S.end());
  order.push_back(i);
  order.push_back(j);
  for (Node s : S) check_node(src, s);
  const Eigen::MatrixXd L = factor(src, order, i, j, S);
  const auto m = static_cast<Eigen::Index>(order.size());
  const double b = L(m - 1, m - 2), c = L(m - 1, m - 1);
  double rho = b / std::hypot(b, c);
  return {std::clamp(rho, -1.0, 1.0), reg};
}

double conditional_variance_ratio(const CorrSource& src, Node i, const NodeSet& Pa) {
  check_node(src, i);
  if (contains(Pa, i)) throw ContractError("conditional_variance_ratio: i is in Pa");
  if (Pa.empty()) return 1.0;
  std::vector<Node> order(Pa.begin(), Pa.end());
  order.push_back(i);
  for (Node s : Pa) check_node(src, s);
  const Eigen::MatrixXd L = factor(src, order, i, i, Pa);
  const auto m = static_cast<Eigen::Index>(order.size());
  const double l = L(m - 1, m - 1);
  return l * l / (1.0 + src.ridge());
}

}  // namespace argeslab
