#include "argeslab/evaluation.hpp"

#include <algorithm>
#include <map>

#include "argeslab/equivalence.hpp"
#include "argeslab/error.hpp"

namespace argeslab {

namespace {

int status(const Pdag& g, Node i, Node j) {
  if (g.has_directed(i, j)) return 1;
  if (g.has_directed(j, i)) return 2;
  if (g.has_undirected(i, j)) return 3;
  return 0;
}

void same_size(const Pdag& a, const Pdag& b) {
  if (a.size() != b.size())
    throw GraphError("graphs have " + std::to_string(a.size()) + " and " + std::to_string(b.size()) + " nodes");
}

void finish_rates(Confusion& c) {
  c.tpr = c.tp + c.fn ? static_cast<double>(c.tp) / static_cast<double>(c.tp + c.fn) : 1.0;
  c.fpr = c.fp + c.tn ? static_cast<double>(c.fp) / static_cast<double>(c.fp + c.tn) : 0.0;
}

}  // namespace

long shd(const Pdag& a, const Pdag& b) {
  same_size(a, b);
  long d = 0;
  for (Node i = 0; i < a.size(); ++i)
    for (Node j = i + 1; j < a.size(); ++j) d += status(a, i, j) != status(b, i, j);
  return d;
}

Confusion confusion(const Pdag& est, const Pdag& truth, ConfusionMode mode) {
  same_size(est, truth);
  Confusion c;
  const int p = truth.size();
  if (mode == ConfusionMode::Skeleton) {
    for (Node i = 0; i < p; ++i)
      for (Node j = i + 1; j < p; ++j) {
        const bool t = truth.adjacent(i, j), e = est.adjacent(i, j);
        (t ? (e ? c.tp : c.fn) : (e ? c.fp : c.tn))++;
      }
  } else {
    const Pdag ref = dag_to_cpdag(consistent_extension(truth)).graph();
    for (Node i = 0; i < p; ++i)
      for (Node j = 0; j < p; ++j) {
        if (i == j) continue;
        const bool t = ref.has_directed(i, j), e = est.has_directed(i, j);
        (t ? (e ? c.tp : c.fn) : (e ? c.fp : c.tn))++;
      }
  }
  finish_rates(c);
  return c;
}

std::vector<RocPoint> roc_average(const std::vector<std::pair<double, Confusion>>& runs) {
  std::map<double, std::pair<std::vector<double>, std::vector<double>>> groups;
  for (const auto& [t, c] : runs) {
    groups[t].first.push_back(c.tpr);
    groups[t].second.push_back(c.fpr);
  }
  std::vector<RocPoint> out;
  std::size_t count = 0;
  for (auto& [t, g] : groups) {
    if (count && g.first.size() != count) throw ShapeError("tuning values appear unequally often");
    count = g.first.size();
    // Sorting makes the sums independent of replicate order.
    std::sort(g.first.begin(), g.first.end());
    std::sort(g.second.begin(), g.second.end());
    double st = 0, sf = 0;
    for (double v : g.first) st += v;
    for (double v : g.second) sf += v;
    out.push_back({t, st / static_cast<double>(count), sf / static_cast<double>(count)});
  }
  std::stable_sort(out.begin(), out.end(), [](const RocPoint& a, const RocPoint& b) { return a.fpr < b.fpr; });
  return out;
}

}  // namespace argeslab
