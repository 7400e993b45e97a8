#pragma once

#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "argeslab/dataset.hpp"
#include "argeslab/graph.hpp"

namespace argeslab {

struct LinearSem;

enum class CorrKind { Pearson, Spearman, Kendall, Oracle };
enum class Exec { Serial, Parallel };

const char* to_string(CorrKind k);

/// Correlation matrix plus its effective sample size (none for the oracle).
///
/// The matrix is symmetrized, its diagonal set to 1 and entries clamped to
/// [-1, 1]. A positive ridge makes every submatrix inversion use Psi + ridge*I.
class CorrSource {
 public:
  CorrSource() = default;
  /// Throws ShapeError for a non-square matrix, ConfigError for a matrix that
  /// is not a correlation matrix up to 1e-8, or for inconsistent kind and n.
  CorrSource(Eigen::MatrixXd R, CorrKind kind, std::optional<long> n, double ridge = 0.0);

  const Eigen::MatrixXd& R() const { return R_; }
  int p() const { return static_cast<int>(R_.rows()); }
  CorrKind kind() const { return kind_; }
  bool is_oracle() const { return kind_ == CorrKind::Oracle; }
  std::optional<long> n() const { return n_; }
  double ridge() const { return ridge_; }
  CorrSource with_ridge(double ridge) const;

 private:
  Eigen::MatrixXd R_;
  CorrKind kind_ = CorrKind::Pearson;
  std::optional<long> n_;
  double ridge_ = 0.0;
};

/// Pearson correlation. Needs n >= 2; a constant column raises DegenerateColumnError.
CorrSource sample_correlation(const Dataset& d);

/// Spearman (Pearson on average ranks) or Kendall tau-b, followed by the
/// sine transform 2 sin(pi r / 6) or sin(pi t / 2). Needs n >= 3.
CorrSource rank_correlation(const Dataset& d, CorrKind kind, Exec exec = Exec::Parallel);

/// Tie-corrected Kendall tau-b in O(n log n).
double kendall_tau_b(const Eigen::VectorXd& x, const Eigen::VectorXd& y);

/// Average ranks (1-based), ties share the mean of their positions.
Eigen::VectorXd average_ranks(const Eigen::VectorXd& x);

/// (I - B)^-1 D (I - B)^-T before standardization.
Eigen::MatrixXd population_covariance(const LinearSem& sem);
CorrSource oracle_correlation(const LinearSem& sem);

struct PartialCorrelation {
  double value;
  bool regularized;
};

/// rho_{ij|S} from the correlation submatrix over (i, j, S).
/// Throws SingularityError when that submatrix is not positive definite.
PartialCorrelation partial_correlation(const CorrSource& src, Node i, Node j, const NodeSet& S);

/// sigma^2_{i|Pa} / sigma^2_i, in (0, 1]; exactly 1 for an empty Pa.
double conditional_variance_ratio(const CorrSource& src, Node i, const NodeSet& Pa);

}  // namespace argeslab
