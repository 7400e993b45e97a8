#include "argeslab/cig.hpp"

#include <cmath>

#include <boost/math/distributions/normal.hpp>

#include "argeslab/error.hpp"
#include "argeslab/scoring.hpp"

namespace argeslab {

void CigConfig::validate() const {
  if (!(gamma >= 0.0)) throw ConfigError("gamma must be >= 0");
  if (!(alpha > 0.0 && alpha < 1.0)) throw ConfigError("alpha must lie in (0, 1)");
  if (!(tol > 0.0)) throw ConfigError("tol must be positive");
  if (max_iter < 1) throw ConfigError("max_iter must be positive");
}

LassoResult lasso_regression(const Eigen::MatrixXd& X, const Eigen::VectorXd& y, double gamma, double tol,
                             int max_iter) {
  const Eigen::Index n = X.rows(), q = X.cols();
  if (y.size() != n) throw ShapeError("lasso_regression: X and y differ in rows");
  if (n < 2) throw ConfigError("lasso_regression needs n >= 2");
  LassoResult res;
  res.coef = Eigen::VectorXd::Zero(q);
  if (q == 0) {
    res.converged = true;
    return res;
  }
  const Eigen::RowVectorXd mean = X.colwise().mean();
  Eigen::MatrixXd Z = X.rowwise() - mean;
  Eigen::VectorXd sd = (Z.colwise().squaredNorm() / static_cast<double>(n)).cwiseSqrt().transpose();
  for (Eigen::Index j = 0; j < q; ++j) {
    if (!(sd(j) > 0.0)) throw DegenerateColumnError("predictor " + std::to_string(j) + " is constant", static_cast<int>(j));
    Z.col(j) /= sd(j);
  }
  const Eigen::VectorXd yc = y.array() - y.mean();
  const double inv_n = 1.0 / static_cast<double>(n);
  const Eigen::MatrixXd G = Z.transpose() * Z * inv_n;
  const Eigen::VectorXd c = Z.transpose() * yc * inv_n;

  Eigen::VectorXd b = Eigen::VectorXd::Zero(q);
  Eigen::VectorXd grad = c;  // c - G b
  for (res.iterations = 1; res.iterations <= max_iter; ++res.iterations) {
    double max_change = 0.0;
    for (Eigen::Index j = 0; j < q; ++j) {
      const double z = grad(j) + G(j, j) * b(j);
      const double nb = (z > gamma ? z - gamma : (z < -gamma ? z + gamma : 0.0)) / G(j, j);
      const double diff = nb - b(j);
      if (diff != 0.0) {
        grad -= G.col(j) * diff;
        b(j) = nb;
        max_change = std::max(max_change, std::abs(diff));
      }
    }
    if (max_change < tol) {
      res.converged = true;
      break;
    }
  }
  if (!res.converged) res.iterations = max_iter;
  res.coef = b.cwiseQuotient(sd);
  return res;
}

Pdag neighborhood_selection(const Dataset& d, const CigConfig& cfg, Exec exec, int* unconverged) {
  cfg.validate();
  if (cfg.method != CigMethod::NeighborhoodLasso) throw ConfigError("neighborhood_selection needs the lasso method");
  const int p = d.p();
  if (d.n() < 2) throw ConfigError("neighborhood selection needs n >= 2");
  for (int j = 0; j < p; ++j)
    if ((d.values.col(j).array() == d.values(0, j)).all())
      throw DegenerateColumnError("column " + std::to_string(j) + " is constant", j);
  const auto up = static_cast<std::size_t>(d.values.cols());
  std::vector<std::vector<char>> sel(up, std::vector<char>(up, 0));
  int missed = 0;
#pragma omp parallel for schedule(dynamic) reduction(+ : missed) if (exec == Exec::Parallel)
  for (int i = 0; i < p; ++i) {
    Eigen::MatrixXd X(d.n(), p - 1);
    for (int j = 0, c = 0; j < p; ++j)
      if (j != i) X.col(c++) = d.values.col(j);
    const LassoResult r = lasso_regression(X, d.values.col(i), cfg.gamma, cfg.tol, cfg.max_iter);
    if (!r.converged) ++missed;
    for (int j = 0, c = 0; j < p; ++j)
      if (j != i) sel[i][j] = std::abs(r.coef(c++)) > 1e-9;
  }
  if (unconverged) *unconverged = missed;
  Pdag g(p);
  for (int i = 0; i < p; ++i)
    for (int j = i + 1; j < p; ++j) {
      const bool keep = cfg.rule == SymmetrizeRule::OR ? (sel[i][j] || sel[j][i]) : (sel[i][j] && sel[j][i]);
      if (keep) g.add_undirected(i, j);
    }
  return g;
}

Pdag precision_threshold_cig(const CorrSource& src, double alpha) {
  const int p = src.p();
  Eigen::MatrixXd R = src.R();
  if (src.ridge() > 0.0) R.diagonal().array() += src.ridge();
  Eigen::LLT<Eigen::MatrixXd> llt(R);
  if (llt.info() != Eigen::Success) throw SingularityError("correlation matrix is not positive definite", -1, -1, {});
  const Eigen::MatrixXd K = llt.solve(Eigen::MatrixXd::Identity(p, p));
  double threshold = kOracleZero;
  double scale = 1.0;
  if (!src.is_oracle()) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw ConfigError("alpha must lie in (0, 1)");
    const long n = *src.n();
    if (n - p - 1 <= 0) throw ConfigError("precision threshold needs n > p + 1");
    boost::math::normal_distribution<double> normal;
    threshold = boost::math::quantile(normal, 1.0 - alpha / 2.0);
    scale = std::sqrt(static_cast<double>(n - p - 1));
  }
  Pdag g(p);
  for (int i = 0; i < p; ++i)
    for (int j = i + 1; j < p; ++j) {
      double rho = -K(i, j) / std::sqrt(K(i, i) * K(j, j));
      rho = std::clamp(rho, -1.0, 1.0);
      const double stat = src.is_oracle() ? std::abs(rho)
                                          : (std::abs(rho) >= 1.0 ? HUGE_VAL : scale * std::atanh(std::abs(rho)));
      if (stat > threshold || (src.is_oracle() && stat >= threshold)) g.add_undirected(i, j);
    }
  return g;
}

Pdag true_cig(const Dag& g) {
  Pdag out = skeleton(g);
  for (const Triple& t : v_structures(g))
    if (!out.adjacent(t[0], t[2])) out.add_undirected(t[0], t[2]);
  return out;
}

}  // namespace argeslab
