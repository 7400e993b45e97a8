#pragma once

#include <Eigen/Dense>

#include "argeslab/correlation.hpp"
#include "argeslab/dataset.hpp"
#include "argeslab/graph.hpp"

namespace argeslab {

enum class CigMethod { NeighborhoodLasso, PrecisionThreshold };
enum class SymmetrizeRule { OR, AND };

struct CigConfig {
  CigMethod method = CigMethod::NeighborhoodLasso;
  double gamma = 0.1;
  SymmetrizeRule rule = SymmetrizeRule::OR;
  double alpha = 0.01;
  double tol = 1e-7;
  int max_iter = 10000;

  /// Throws ConfigError for gamma < 0, alpha outside (0, 1), tol <= 0 or max_iter < 1.
  void validate() const;
};

struct LassoResult {
  Eigen::VectorXd coef;  // on the original scale of X
  int iterations = 0;
  bool converged = false;
};

/// Minimizes (1/2n) |y - X b|^2 + gamma |b|_1 over standardized, centred
/// columns by cyclic coordinate descent with covariance updates.
LassoResult lasso_regression(const Eigen::MatrixXd& X, const Eigen::VectorXd& y, double gamma,
                             double tol = 1e-7, int max_iter = 10000);

/// Regresses each column on the others; nonzero coefficients (> 1e-9) become
/// candidate neighbours, combined by the OR or AND rule.
Pdag neighborhood_selection(const Dataset& d, const CigConfig& cfg, Exec exec = Exec::Parallel,
                            int* unconverged = nullptr);

/// Edge {i, j} when the full-conditioning partial correlation is significant
/// at level alpha (Fisher z with the source's n), or nonzero beyond 1e-9 for
/// an oracle source. Throws SingularityError for a singular R.
Pdag precision_threshold_cig(const CorrSource& src, double alpha);

/// Skeleton of g plus the endpoint pairs of its v-structures.
Pdag true_cig(const Dag& g);

}  // namespace argeslab
