#pragma once

#include <vector>

#include "argeslab/graph.hpp"

namespace argeslab {

/// Unordered pairs whose status (none, i->j, j->i, undirected) differs.
/// Throws GraphError on a size mismatch.
long shd(const Pdag& a, const Pdag& b);

struct Confusion {
  long tp = 0, fp = 0, tn = 0, fn = 0;
  double tpr = 0.0, fpr = 0.0;  // 1 and 0 respectively when undefined
};

enum class ConfusionMode { Skeleton, Directed };

/// Skeleton: over unordered pairs, positive = adjacent. Directed: over ordered
/// pairs, positive = directed edge; truth positives come from the CPDAG of truth.
Confusion confusion(const Pdag& est, const Pdag& truth, ConfusionMode mode);

struct RocPoint {
  double tuning;
  double tpr;
  double fpr;
};

/// Mean tpr and fpr per tuning value, sorted by mean fpr (then tuning).
/// Throws ShapeError when tuning values occur unequally often.
std::vector<RocPoint> roc_average(const std::vector<std::pair<double, Confusion>>& runs);

}  // namespace argeslab
