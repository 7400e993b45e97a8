#pragma once

#include <atomic>
#include <cstddef>
#include <memory>
#include <shared_mutex>
#include <unordered_map>
#include <vector>

#include "argeslab/correlation.hpp"
#include "argeslab/graph.hpp"

namespace argeslab {

enum class ScoreKind { GaussianL0, RankSpearman, RankKendall, Oracle };
const char* to_string(ScoreKind k);
ScoreKind score_kind_of(const CorrSource& src);

/// Oracle partial correlations below this magnitude count as exact zeros.
inline constexpr double kOracleZero = 1e-9;

struct ScoreDelta {
  double value;
  double rho;
  bool regularized;
};

/// Decomposable penalized score; lower is better.
///
/// local_score(i, Pa) = 0.5 ln(sigma^2_{i|Pa} / sigma^2_i) + lambda |Pa|, so
/// the empty graph scores 0 for every source. Thread safe.
class ScoreModel {
 public:
  /// Throws ConfigError for a negative or non-finite lambda.
  ScoreModel(CorrSource src, double lambda, bool cache = true);

  const CorrSource& source() const { return *src_; }
  double lambda() const { return lambda_; }
  ScoreKind kind() const { return score_kind_of(*src_); }
  int size() const { return src_->p(); }

  double local_score(Node i, const NodeSet& Pa) const;
  double dag_score(const Dag& h) const;

  /// local_score(k, Pa + i) - local_score(k, Pa) = 0.5 ln(1 - rho^2) + lambda,
  /// rho = rho_{ik|Pa}. Throws DeterministicDependenceError when |rho| = 1.
  ScoreDelta add_edge_delta(Node k, const NodeSet& Pa, Node i) const;
  /// local_score(k, Pa - i) - local_score(k, Pa); i must be in Pa.
  ScoreDelta delete_edge_delta(Node k, const NodeSet& Pa, Node i) const;

  /// Smallest nonzero |rho| seen by a delta computation so far (1 if none).
  double min_observed_rho() const { return min_rho_->load(); }
  std::size_t cache_size() const;

 private:
  double rho_for(Node i, Node k, const NodeSet& S, bool& regularized) const;

  struct KeyHash {
    std::size_t operator()(const std::vector<int>& key) const noexcept;
  };
  struct Cache {
    mutable std::shared_mutex mutex;
    std::unordered_map<std::vector<int>, double, KeyHash> map;
  };

  std::shared_ptr<const CorrSource> src_;
  double lambda_;
  std::shared_ptr<Cache> cache_;  // null when caching is off
  std::shared_ptr<std::atomic<double>> min_rho_;
};

/// ln(n) / (2n).
double bic_lambda(double n);

/// min over (i, j, S), |S| <= max_cond, of -0.5 ln(1 - rho_{ij|S}^2) restricted
/// to |rho| >= kOracleZero. Exhaustive; meant for small p. +inf if none.
double soundness_bound(const CorrSource& src, int max_cond);

}  // namespace argeslab
