// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "argeslab/cig.hpp"
#include "argeslab/equivalence.hpp"
#include "argeslab/independence.hpp"
#include "argeslab/scoring.hpp"
#include "argeslab/search.hpp"
#include "argeslab/simulation.hpp"
#include "oracles.hpp"

using namespace argeslab;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
  bool pass;
  std::string detail;
};

const Pdag& truth_graph() {
  static const Pdag g = parse_graph("nodes: 4\n0 -> 2\n1 -> 2\n1 -> 3\n2 -> 3");
  return g;
}

std::vector<NodeSet> subsets(const NodeSet& pool) {
  std::vector<NodeSet> out;
  for (unsigned m = 0; m < (1u << pool.size()); ++m) {
    NodeSet s;
    for (std::size_t b = 0; b < pool.size(); ++b)
      if (m >> b & 1u) s.push_back(pool[b]);
    out.push_back(std::move(s));
  }
  return out;
}

NodeSet others(int p, Node a, Node b) {
  NodeSet s;
  for (Node v = 0; v < p; ++v)
    if (v != a && v != b) s.push_back(v);
  return s;
}

Outcome example1_limits() {
  const auto t0 = Clock::now();
  const LinearSem sem = example1_sem();
  const ScoreModel m(oracle_correlation(sem), 1e-6);
  const Dag g0 = sem.structure();
  const Pdag cig = true_cig(g0), sk = skeleton(g0);
  const Pdag cig_limit = parse_graph("nodes: 4\n0 -> 2\n0 -> 1\n3 -> 2\n3 -> 1\n1 -- 2");
  const Pdag skeleton_limit = parse_graph("nodes: 4\n0 -> 2\n3 -> 2\n3 -> 1\n2 -> 1");
  struct Case {
    Variant v;
    std::optional<Pdag> restriction;
    const Pdag* want;
  };
  const Case cases[] = {{Variant::GES, std::nullopt, &truth_graph()},
                        {Variant::ARGES_CIG, cig, &truth_graph()},
                        {Variant::ARGES_Skeleton, sk, &truth_graph()},
                        {Variant::RGES_CIG, cig, &cig_limit},
                        {Variant::RGES_Skeleton, sk, &skeleton_limit}};
  std::string wrong;
  for (const Case& c : cases)
    if (!(run_learner(c.v, Cpdag::empty(4), m, c.restriction).final.graph() == *c.want))
      wrong += std::string(" ") + to_string(c.v);
  const double secs = seconds_since(t0);
  std::ostringstream os;
  os << "5 variants, " << secs << " s" << (wrong.empty() ? "" : ", wrong:" + wrong);
  return {wrong.empty() && secs < 1.0, os.str()};
}

Outcome delta_identity() {
  std::mt19937_64 rng(2024);
  double worst = 0.0;
  int done = 0;
  for (int t = 0; done < 1000; ++t) {
    const int p = 2 + static_cast<int>(rng() % 9);
    LinearSem sem = random_sem(p, 0.3 * p * (p - 1) / 2.0, 9000 + t);
    const CorrSource src = t % 2 ? oracle_correlation(sem) : sample_correlation(sample_sem(sem, 500, 9000 + t));
    const ScoreModel m(src, std::uniform_real_distribution<double>(0.0, 0.05)(rng));
    for (int k = 0; k < 5 && done < 1000; ++k) {
      const Node kk = static_cast<Node>(rng() % p);
      Node i = static_cast<Node>(rng() % (p - 1));
      if (i >= kk) ++i;
      const NodeSet Pa = oracle::random_subset(others(p, i, kk), rng);
      const double rho = partial_correlation(src, i, kk, Pa).value;
      const double lhs = m.local_score(kk, with(Pa, i)) - m.local_score(kk, Pa);
      worst = std::max(worst, std::abs(lhs - (0.5 * std::log(1 - rho * rho) + m.lambda())));
      ++done;
    }
  }
  std::ostringstream os;
  os << done << " tuples, max error " << worst;
  return {worst < 1e-10, os.str()};
}

// Sum of add_edge_delta over the edges of g inserted in the given order.
double telescoped(const ScoreModel& m, const Dag& g, std::vector<NodePair> order) {
  std::vector<NodeSet> pa(static_cast<std::size_t>(g.size()));
  double total = 0.0;
  for (auto [i, k] : order) {
    total += m.add_edge_delta(k, pa[k], i).value;
    pa[k] = with(pa[k], i);
  }
  return total;
}

Outcome score_equivalence() {
  std::mt19937_64 rng(303);
  double worst_eq = 0.0, worst_tel = 0.0;
  for (int t = 0; t < 200; ++t) {
    const int p = 2 + t % 7;
    const LinearSem sem = random_sem(p, 0.4 * p * (p - 1) / 2.0, 500 + t);
    const Dataset d = sample_sem(sem, 300, 500 + t);
    const Dag g = oracle::random_dag(p, 0.5, rng);
    const Dag h = oracle::covered_reversal_walk(g, 3 * p, rng);
    if (!markov_equivalent(g, h)) return {false, "covered reversal walk left the class"};
    const CorrSource sources[] = {sample_correlation(d), oracle_correlation(sem),
                                  rank_correlation(d, CorrKind::Spearman), rank_correlation(d, CorrKind::Kendall)};
    for (const CorrSource& src : sources) {
      const ScoreModel m(src, 0.03);
      const double sg = m.dag_score(g);
      worst_eq = std::max(worst_eq, std::abs(sg - m.dag_score(h)));
      auto edges = g.graph().directed_edges();
      std::shuffle(edges.begin(), edges.end(), rng);
      const double a = telescoped(m, g, edges);
      std::shuffle(edges.begin(), edges.end(), rng);
      const double b = telescoped(m, g, edges);
      worst_tel = std::max({worst_tel, std::abs(a - b), std::abs(a - sg)});
    }
  }
  std::ostringstream os;
  os << "200 pairs x 4 sources, equivalence error " << worst_eq << ", telescoping error " << worst_tel;
  return {worst_eq < 1e-9 && worst_tel < 1e-9, os.str()};
}

Outcome dsep_oracle() {
  std::mt19937_64 rng(404);
  long queries = 0, mismatches = 0;
  for (int t = 0; t < 50; ++t) {
    const int p = 2 + t % 6;
    const Dag g = oracle::random_dag(p, 0.4, rng);
    for (Node i = 0; i < p; ++i)
      for (Node j = 0; j < p; ++j) {
        if (i == j) continue;
        for (const NodeSet& S : subsets(others(p, i, j))) {
          ++queries;
          mismatches += d_separated(g, i, j, S) != oracle::d_separated_paths(g, i, j, S);
        }
      }
  }
  std::ostringstream os;
  os << queries << " queries, " << mismatches << " mismatches";
  return {mismatches == 0, os.str()};
}

Outcome roundtrips() {
  std::mt19937_64 rng(505);
  int bad_rt = 0, bad_int = 0, compared = 0;
  for (int t = 0; t < 500; ++t) {
    const int p = 1 + t % 8;
    const Dag g = oracle::random_dag(p, std::uniform_real_distribution<double>(0.1, 0.8)(rng), rng);
    const Cpdag c = dag_to_cpdag(g);
    if (!(dag_to_cpdag(consistent_extension(c)) == c)) ++bad_rt;
    if (p <= 6) {
      ++compared;
      if (!(c.graph() == oracle::cpdag_by_intersection(g))) ++bad_int;
    }
  }
  std::ostringstream os;
  os << "500 roundtrips (" << bad_rt << " bad), " << compared << " intersection checks (" << bad_int << " bad)";
  return {bad_rt == 0 && bad_int == 0, os.str()};
}

Outcome move_sets() {
  std::mt19937_64 rng(606);
  const RestrictionMode modes[] = {RestrictionMode::Unrestricted, RestrictionMode::StaticCIG,
                                   RestrictionMode::StaticSkeleton, RestrictionMode::AdaptiveCIG,
                                   RestrictionMode::AdaptiveSkeleton};
  int bad = 0;
  long moves = 0;
  for (int t = 0; t < 500; ++t) {
    const int p = 2 + t % 5;
    const Cpdag c = dag_to_cpdag(oracle::random_dag(p, std::uniform_real_distribution<double>(0.1, 0.7)(rng), rng));
    const RestrictionPolicy pol{modes[t % 5], oracle::random_undirected(p, 0.5, rng)};
    const ScoreModel m(oracle_correlation(random_sem(p, 0.3 * p * (p - 1) / 2.0, 600 + t)), 1e-3);
    EnumerateOptions opt;
    opt.improving_only = false;
    std::set<std::vector<int>> ins, del;
    for (const auto& mv : enumerate_insertions(c, m, pol, opt)) ins.insert(oracle::encode(mv.successor->graph()));
    for (const auto& mv : enumerate_deletions(c, m, opt)) del.insert(oracle::encode(mv.successor->graph()));
    moves += static_cast<long>(ins.size() + del.size());
    if (ins != oracle::insertion_successors(c, pol) || del != oracle::deletion_successors(c)) ++bad;
  }
  std::ostringstream os;
  os << "500 states, " << moves << " successors, " << bad << " mismatching states";
  return {bad == 0, os.str()};
}

Outcome oracle_soundness() {
  const auto t0 = Clock::now();
  int bad = 0;
  for (int t = 0; t < 100; ++t) {
    const int p = 3 + t % 6;
    const LinearSem sem = random_sem(p, 0.4 * p * (p - 1) / 2.0, 700 + t);
    const CorrSource src = oracle_correlation(sem);
    const double lambda = std::min(1e-6, 0.5 * soundness_bound(src, p - 2));
    const ScoreModel m(src, lambda);
    const Dag g0 = sem.structure();
    const Cpdag truth = dag_to_cpdag(g0);
    const Cpdag empty = Cpdag::empty(p);
    bad += !(run_learner(Variant::GES, empty, m, std::nullopt).final == truth);
    bad += !(run_learner(Variant::ARGES_CIG, empty, m, true_cig(g0)).final == truth);
    bad += !(run_learner(Variant::ARGES_Skeleton, empty, m, skeleton(g0)).final == truth);
  }
  const double secs = seconds_since(t0);
  std::ostringstream os;
  os << "100 SEMs x 3 variants, " << bad << " wrong, " << secs << " s";
  return {bad == 0 && secs < 60.0, os.str()};
}

Outcome forests() {
  int bad_tree = 0;
  for (int t = 0; t < 100; ++t) {
    const int p = 2 + t % 14;
    const LinearSem sem = random_polytree_sem(p, 800 + t);
    const ScoreModel m(oracle_correlation(sem), 1e-6);
    const PhaseResult r = delta_optimal_oracle_forward(Cpdag::empty(p), m, RestrictionPolicy::unrestricted(), 0.0,
                                                       WindowSelection::Optimal);
    bad_tree += !(r.graph == dag_to_cpdag(sem.structure()));
  }
  long cross = 0;
  int runs = 0;
  for (int t = 0; t < 100; ++t) {
    const int pa = 2 + t % 4, pb = 2 + (t / 4) % 4;
    const LinearSem sem = disjoint_union(random_sem(pa, 0.5 * pa * (pa - 1) / 2.0, 900 + t),
                                         random_sem(pb, 0.5 * pb * (pb - 1) / 2.0, 1900 + t));
    const ScoreModel m(oracle_correlation(sem), 1e-6);
    for (double delta : {0.0, 0.05, 0.2})
      for (WindowSelection sel :
           {WindowSelection::Optimal, WindowSelection::WorstInWindow, WindowSelection::RandomInWindow}) {
        ++runs;
        const PhaseResult r = delta_optimal_oracle_forward(Cpdag::empty(pa + pb), m, RestrictionPolicy::unrestricted(),
                                                           delta, sel, static_cast<std::uint64_t>(t));
        for (Node a = 0; a < pa; ++a)
          for (Node b = pa; b < pa + pb; ++b) cross += r.graph.adjacent(a, b);
      }
  }
  std::ostringstream os;
  os << "100 polytrees (" << bad_tree << " wrong), " << runs << " two-component runs (" << cross
     << " cross edges)";
  return {bad_tree == 0 && cross == 0, os.str()};
}

Outcome consistency_trend() {
  const LinearSem sem = example1_sem();
  const Cpdag truth = dag_to_cpdag(sem.structure());
  const int ns[] = {500, 5000, 50000};
  double frac_ges[3], frac_arges[3];
  for (int s = 0; s < 3; ++s) {
    int ges = 0, arges = 0;
    for (std::uint64_t r = 0; r < 100; ++r) {
      const Dataset d = sample_sem(sem, ns[s], replicate_seed(1234, r));
      const CorrSource src = sample_correlation(d);
      const ScoreModel m(src, bic_lambda(ns[s]));
      ges += run_learner(Variant::GES, Cpdag::empty(4), m, std::nullopt).final == truth;
      arges += run_learner(Variant::ARGES_CIG, Cpdag::empty(4), m, precision_threshold_cig(src, 0.01)).final == truth;
    }
    frac_ges[s] = ges / 100.0;
    frac_arges[s] = arges / 100.0;
  }
  const bool ok = frac_ges[0] <= frac_ges[1] && frac_ges[1] <= frac_ges[2] && frac_arges[0] <= frac_arges[1] &&
                  frac_arges[1] <= frac_arges[2] && frac_ges[2] >= 0.9 && frac_arges[2] >= 0.9;
  std::ostringstream os;
  os << "GES " << frac_ges[0] << "/" << frac_ges[1] << "/" << frac_ges[2] << ", ARGES-CIG " << frac_arges[0] << "/"
     << frac_arges[1] << "/" << frac_arges[2] << " at n=500/5000/50000";
  return {ok, os.str()};
}

Outcome rank_robustness() {
  const LinearSem sem = example1_sem();
  const Cpdag truth = dag_to_cpdag(sem.structure());
  const int n = 50000;
  int rank_hits = 0, pearson_hits = 0;
  bool invariant = true;
  for (std::uint64_t s = 0; s < 50; ++s) {
    const Dataset d = sample_sem(sem, n, replicate_seed(4321, s));
    const Dataset t = nonparanormal_transform(d, NpnFamily::Exp);
    const CorrSource spearman = rank_correlation(t, CorrKind::Spearman);
    invariant = invariant && spearman.R() == rank_correlation(d, CorrKind::Spearman).R() &&
                rank_correlation(t, CorrKind::Kendall).R() == rank_correlation(d, CorrKind::Kendall).R();
    const double lambda = bic_lambda(n);
    rank_hits += run_learner(Variant::GES, Cpdag::empty(4), ScoreModel(spearman, lambda), std::nullopt).final == truth;
    pearson_hits +=
        run_learner(Variant::GES, Cpdag::empty(4), ScoreModel(sample_correlation(t), lambda), std::nullopt).final ==
        truth;
  }
  std::ostringstream os;
  os << "Spearman " << rank_hits << "/50, Pearson " << pearson_hits << "/50, rank invariance "
     << (invariant ? "exact" : "broken");
  return {rank_hits >= 40 && pearson_hits < rank_hits && invariant, os.str()};
}

Outcome local_consistency() {
  long checked = 0, bad = 0;
  auto check_sem = [&](const LinearSem& sem) {
    const CorrSource src = oracle_correlation(sem);
    const int p = sem.p;
    const ScoreModel m(src, std::min(1e-6, 0.5 * soundness_bound(src, std::max(0, p - 2))));
    const Dag g = sem.structure();
    for (Node k = 0; k < p; ++k)
      for (Node i = 0; i < p; ++i) {
        if (i == k) continue;
        for (const NodeSet& Pa : subsets(others(p, i, k))) {
          ++checked;
          const bool improving = m.add_edge_delta(k, Pa, i).value < -kImprovement;
          bad += improving != !d_separated(g, i, k, Pa);
        }
      }
  };
  check_sem(example1_sem());
  for (int t = 0; t < 20; ++t) {
    const int p = 2 + t % 5;
    check_sem(random_sem(p, 0.5 * p * (p - 1) / 2.0, 1100 + t));
  }
  std::ostringstream os;
  os << checked << " (k, Pa, i) triples, " << bad << " disagreements";
  return {bad == 0, os.str()};
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<Outcome()> run;
  };
  const Criterion criteria[] = {
      {"example-1 oracle limits", example1_limits},
      {"score delta identity", delta_identity},
      {"score equivalence and telescoping", score_equivalence},
      {"d-separation oracle", dsep_oracle},
      {"equivalence class roundtrips", roundtrips},
      {"move set completeness", move_sets},
      {"oracle soundness", oracle_soundness},
      {"forests and disconnected components", forests},
      {"consistency trend", consistency_trend},
      {"rank score robustness", rank_robustness},
      {"local consistency at the oracle", local_consistency},
  };
  int failures = 0;
  int index = 0;
  for (const Criterion& c : criteria) {
    ++index;
    Outcome o;
    const auto t0 = Clock::now();
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failures += !o.pass;
    std::printf("%-4s criterion %2d  %-36s %s (%.2f s)\n", o.pass ? "PASS" : "FAIL", index, c.name, o.detail.c_str(),
                seconds_since(t0));
    std::fflush(stdout);
  }
  std::printf("%d of %d criteria passed\n", index - failures, index);
  return failures == 0 ? 0 : 1;
}
