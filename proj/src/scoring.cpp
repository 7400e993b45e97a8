#include "argeslab/scoring.hpp"

#include <cmath>
#include <limits>
#include <mutex>

#include "argeslab/error.hpp"

namespace argeslab {

const char* to_string(ScoreKind k) {
  switch (k) {
    case ScoreKind::GaussianL0: return "gaussian-l0";
    case ScoreKind::RankSpearman: return "rank-spearman";
    case ScoreKind::RankKendall: return "rank-kendall";
    case ScoreKind::Oracle: return "oracle";
  }
  return "?";
}

ScoreKind score_kind_of(const CorrSource& src) {
  switch (src.kind()) {
    case CorrKind::Pearson: return ScoreKind::GaussianL0;
    case CorrKind::Spearman: return ScoreKind::RankSpearman;
    case CorrKind::Kendall: return ScoreKind::RankKendall;
    case CorrKind::Oracle: return ScoreKind::Oracle;
  }
  return ScoreKind::GaussianL0;
}

std::size_t ScoreModel::KeyHash::operator()(const std::vector<int>& key) const noexcept {
  std::size_t h = 1469598103934665603ull;
  for (int v : key) {
    h ^= static_cast<std::size_t>(v) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  }
  return h;
}

ScoreModel::ScoreModel(CorrSource src, double lambda, bool cache)
    : src_(std::make_shared<const CorrSource>(std::move(src))),
      lambda_(lambda),
      cache_(cache ? std::make_shared<Cache>() : nullptr),
      min_rho_(std::make_shared<std::atomic<double>>(1.0)) {
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) throw ConfigError("lambda must be finite and >= 0");
}

double ScoreModel::local_score(Node i, const NodeSet& Pa) const {
  std::vector<int> key;
  if (cache_) {
    key.reserve(Pa.size() + 1);
    key.push_back(i);
    key.insert(key.end(), Pa.begin(), Pa.end());
    std::shared_lock lock(cache_->mutex);
    auto it = cache_->map.find(key);
    if (it != cache_->map.end()) return it->second;
  }
  const double ratio = conditional_variance_ratio(*src_, i, Pa);
  const double value = 0.5 * std::log(ratio) + lambda_ * static_cast<double>(Pa.size());
  if (cache_) {
    std::unique_lock lock(cache_->mutex);
    auto [it, inserted] = cache_->map.emplace(std::move(key), value);
    if (!inserted && it->second != value) throw ContractError("local score cache conflict");
  }
  return value;
}

double ScoreModel::dag_score(const Dag& h) const {
  if (h.size() != size()) throw GraphError("graph size does not match the score model");
  double total = 0.0;
  for (Node v = 0; v < h.size(); ++v) total += local_score(v, h.parents(v));
  return total;
}

double ScoreModel::rho_for(Node i, Node k, const NodeSet& S, bool& regularized) const {
  const PartialCorrelation pc = partial_correlation(*src_, i, k, S);
  regularized = pc.regularized;
  double rho = pc.value;
  const double a = std::abs(rho);
  if (src_->is_oracle() && a < kOracleZero) rho = 0.0;
  if (a >= 1.0 || 1.0 - rho * rho <= 0.0)
    throw DeterministicDependenceError("|rho| = 1 between " + std::to_string(i) + " and " +
                                       std::to_string(k));
  if (a >= kOracleZero) {
    double cur = min_rho_->load();
    while (a < cur && !min_rho_->compare_exchange_weak(cur, a)) {
    }
  }
  return rho;
}

ScoreDelta ScoreModel::add_edge_delta(Node k, const NodeSet& Pa, Node i) const {
  if (i == k || contains(Pa, i) || contains(Pa, k)) throw ContractError("add_edge_delta: bad arguments");
  bool reg = false;
  const double rho = rho_for(i, k, Pa, reg);
  return {0.5 * std::log1p(-rho * rho) + lambda_, rho, reg};
}

ScoreDelta ScoreModel::delete_edge_delta(Node k, const NodeSet& Pa, Node i) const {
  if (!contains(Pa, i) || contains(Pa, k)) throw ContractError("delete_edge_delta: i must be a parent");
  bool reg = false;
  const double rho = rho_for(i, k, without(Pa, i), reg);
  return {-0.5 * std::log1p(-rho * rho) - lambda_, rho, reg};
}

std::size_t ScoreModel::cache_size() const {
  if (!cache_) return 0;
  std::shared_lock lock(cache_->mutex);
  return cache_->map.size();
}

double bic_lambda(double n) {
  if (!(n >= 2.0)) throw ConfigError("bic_lambda needs n >= 2");
  return std::log(n) / (2.0 * n);
}

double soundness_bound(const CorrSource& src, int max_cond) {
  const int p = src.p();
  double best = std::numeric_limits<double>::infinity();
  for (Node i = 0; i < p; ++i)
    for (Node j = i + 1; j < p; ++j) {
      std::vector<Node> rest;
      for (Node v = 0; v < p; ++v)
        if (v != i && v != j) rest.push_back(v);
      const auto r = static_cast<int>(rest.size());
      if (r > 30) throw ConfigError("soundness_bound: too many nodes for exhaustive search");
      for (unsigned long mask = 0; mask < (1ul << r); ++mask) {
        if (__builtin_popcountl(mask) > max_cond) continue;
        NodeSet S;
        for (int b = 0; b < r; ++b)
          if (mask >> b & 1ul) S.push_back(rest[b]);
        const double rho = partial_correlation(src, i, j, S).value;
        if (std::abs(rho) < kOracleZero) continue;
        best = std::min(best, -0.5 * std::log1p(-rho * rho));
      }
    }
  return best;
}

}  // namespace argeslab
