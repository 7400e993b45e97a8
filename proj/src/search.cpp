#include "argeslab/search.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>

#include "argeslab/equivalence.hpp"
#include "argeslab/error.hpp"

namespace argeslab {

const char* to_string(MoveKind k) {
  switch (k) {
    case MoveKind::Insert: return "insert";
    case MoveKind::Delete: return "delete";
    case MoveKind::Turn: return "turn";
  }
  return "?";
}

const char* to_string(Phase p) {
  switch (p) {
    case Phase::Forward: return "forward";
    case Phase::Backward: return "backward";
    case Phase::Turning: return "turning";
  }
  return "?";
}

const char* to_string(Variant v) {
  switch (v) {
    case Variant::GES: return "ges";
    case Variant::RGES_CIG: return "rges-cig";
    case Variant::RGES_Skeleton: return "rges-skeleton";
    case Variant::ARGES_CIG: return "arges-cig";
    case Variant::ARGES_Skeleton: return "arges-skeleton";
  }
  return "?";
}

Variant parse_variant(const std::string& s) {
  for (Variant v : {Variant::GES, Variant::RGES_CIG, Variant::RGES_Skeleton, Variant::ARGES_CIG,
                    Variant::ARGES_Skeleton})
    if (s == to_string(v)) return v;
  throw ConfigError("unknown variant '" + s + "'");
}

RestrictionMode restriction_mode(Variant v) {
  switch (v) {
    case Variant::GES: return RestrictionMode::Unrestricted;
    case Variant::RGES_CIG: return RestrictionMode::StaticCIG;
    case Variant::RGES_Skeleton: return RestrictionMode::StaticSkeleton;
    case Variant::ARGES_CIG: return RestrictionMode::AdaptiveCIG;
    case Variant::ARGES_Skeleton: return RestrictionMode::AdaptiveSkeleton;
  }
  return RestrictionMode::Unrestricted;
}

bool move_key_less(const MoveProposal& a, const MoveProposal& b) {
  return std::tie(a.kind, a.x, a.y, a.context) < std::tie(b.kind, b.x, b.y, b.context);
}

std::uint64_t graph_fingerprint(const Pdag& g) {
  std::uint64_t h = 1469598103934665603ull;
  auto mix = [&](std::uint64_t v) {
    h ^= v;
    h *= 1099511628211ull;
  };
  mix(static_cast<std::uint64_t>(g.size()));
  for (Node v = 0; v < g.size(); ++v) {
    mix(0xfffffff0u);
    for (Node u : g.parents(v)) mix(static_cast<std::uint64_t>(u));
    mix(0xfffffff1u);
    for (Node u : g.neighbors(v)) mix(static_cast<std::uint64_t>(u));
  }
  return h;
}

namespace {

// A move before scoring: `cond` is the parent set the delta is taken against.
struct Candidate {
  MoveProposal move;
  NodeSet cond;  // Insert/Delete: Pa of y in the witnessing member
  NodeSet cond2;  // Turn: Pa of x in the member before reversal
  bool ok = false;
  std::string error;
};

bool is_clique(const Pdag& g, const NodeSet& s) {
  for (std::size_t a = 0; a < s.size(); ++a)
    for (std::size_t b = a + 1; b < s.size(); ++b)
      if (!g.adjacent(s[a], s[b])) return false;
  return true;
}

// Some path from `from` to `to` along undirected or forward directed edges
// avoiding `blocked`.
bool semi_directed_path(const Pdag& g, Node from, Node to, const NodeSet& blocked) {
  std::vector<char> seen(g.size(), 0);
  for (Node b : blocked) seen[b] = 1;
  std::vector<Node> stack{from};
  seen[from] = 1;
  while (!stack.empty()) {
    Node v = stack.back();
    stack.pop_back();
    for (const NodeSet* next : {&g.children(v), &g.neighbors(v)})
      for (Node w : *next) {
        if (w == to) return true;
        if (!seen[w]) {
          seen[w] = 1;
          stack.push_back(w);
        }
      }
  }
  return false;
}

Cpdag complete(const Pdag& g) { return dag_to_cpdag(consistent_extension(g)); }

void insertion_candidates(const Cpdag& c, const RestrictionPolicy& policy, std::vector<Candidate>& out) {
  const Pdag& g = c.graph();
  const int p = g.size();
  for (Node x = 0; x < p; ++x) {
    const NodeSet adj_x = g.adjacents(x);
    for (Node y = 0; y < p; ++y) {
      if (x == y || g.adjacent(x, y) || !edge_admissible(g, x, y, policy)) continue;
      const NodeSet NA = set_intersection(g.neighbors(y), adj_x);
      if (!is_clique(g, NA)) continue;
      const NodeSet T0 = set_difference(g.neighbors(y), adj_x);
      const NodeSet& pa = g.parents(y);
      // Grow T through T0 in index order keeping NA + T a clique.
      NodeSet T;
      auto visit = [&](auto&& self, std::size_t from) -> void {
        const NodeSet naT = set_union(NA, T);
        if (!semi_directed_path(g, y, x, naT)) {
          Candidate cand;
          cand.move.kind = MoveKind::Insert;
          cand.move.x = x;
          cand.move.y = y;
          cand.move.context = T;
          cand.cond = set_union(pa, naT);
          out.push_back(std::move(cand));
        }
        for (std::size_t t = from; t < T0.size(); ++t) {
          const Node v = T0[t];
          bool fits = true;
          for (Node u : naT)
            if (!g.adjacent(u, v)) {
              fits = false;
              break;
            }
          if (!fits) continue;
          T.push_back(v);
          self(self, t + 1);
          T.pop_back();
        }
      };
      visit(visit, 0);
    }
  }
}

void deletion_candidates(const Cpdag& c, std::vector<Candidate>& out) {
  const Pdag& g = c.graph();
  const int p = g.size();
  for (Node y = 0; y < p; ++y) {
    std::vector<Node> xs = g.parents(y);
    xs.insert(xs.end(), g.neighbors(y).begin(), g.neighbors(y).end());
    for (Node x : xs) {
      const NodeSet NA = set_intersection(g.neighbors(y), g.adjacents(x));
      const std::size_t k = NA.size();
      if (k > 20) throw ConfigError("deletion neighbourhood too large to enumerate");
      for (unsigned long mask = 0; mask < (1ul << k); ++mask) {
        NodeSet H, rest;
        for (std::size_t b = 0; b < k; ++b) (mask >> b & 1ul ? H : rest).push_back(NA[b]);
        if (!is_clique(g, rest)) continue;
        Candidate cand;
        cand.move.kind = MoveKind::Delete;
        cand.move.x = x;
        cand.move.y = y;
        cand.move.context = H;
        cand.cond = with(set_union(g.parents(y), rest), x);
        out.push_back(std::move(cand));
      }
    }
  }
}

Pdag insertion_result(const Pdag& g, const MoveProposal& mv) {
  Pdag r = g;
  r.add_directed(mv.x, mv.y);
  for (Node t : mv.context) r.orient(t, mv.y);
  return r;
}

Pdag deletion_result(const Pdag& g, const MoveProposal& mv) {
  Pdag r = g;
  r.remove_edge(mv.x, mv.y);
  for (Node h : mv.context) {
    r.orient(mv.y, h);
    if (r.has_undirected(mv.x, h)) r.orient(mv.x, h);
  }
  return r;
}

// Turn candidates carry their successor already (computed from the member).
void turn_candidates(const Cpdag& c, std::vector<Candidate>& out) {
  std::map<std::tuple<Node, Node, NodeSet>, bool> seen;
  for (const Dag& h : enumerate_equivalence_class(c.graph())) {
    for (auto [a, b] : h.graph().directed_edges()) {
      Dag r = h;
      r.remove_edge(a, b);
      if (!r.can_add(b, a)) continue;
      r.add_edge(b, a);
      Cpdag succ = dag_to_cpdag(r);
      if (succ == c) continue;
      auto key = std::make_tuple(a, b, h.parents(a));
      if (seen.count(key)) continue;
      seen[key] = true;
      Candidate cand;
      cand.move.kind = MoveKind::Turn;
      cand.move.x = a;
      cand.move.y = b;
      cand.move.context = h.parents(a);
      cand.move.successor = std::make_shared<const Cpdag>(std::move(succ));
      cand.cond = h.parents(b);
      cand.cond2 = h.parents(a);
      out.push_back(std::move(cand));
    }
  }
}

std::string describe(const MoveProposal& mv) {
  std::string s = std::string(to_string(mv.kind)) + "(" + std::to_string(mv.x) + ", " + std::to_string(mv.y) + ", {";
  for (std::size_t i = 0; i < mv.context.size(); ++i) s += (i ? "," : "") + std::to_string(mv.context[i]);
  return s + "})";
}

void score_candidates(std::vector<Candidate>& cands, const ScoreModel& m, Exec exec) {
  const long n = static_cast<long>(cands.size());
#pragma omp parallel for schedule(dynamic, 8) if (exec == Exec::Parallel && n > 32)
  for (long t = 0; t < n; ++t) {
    Candidate& cd = cands[static_cast<std::size_t>(t)];
    MoveProposal& mv = cd.move;
    try {
      switch (mv.kind) {
        case MoveKind::Insert: mv.delta = m.add_edge_delta(mv.y, cd.cond, mv.x); break;
        case MoveKind::Delete: mv.delta = m.delete_edge_delta(mv.y, cd.cond, mv.x); break;
        case MoveKind::Turn: {
          ScoreDelta del = m.delete_edge_delta(mv.y, cd.cond, mv.x);
          ScoreDelta add = m.add_edge_delta(mv.x, cd.cond2, mv.y);
          mv.delta = {del.value + add.value, add.rho, del.regularized || add.regularized};
          break;
        }
      }
      cd.ok = std::isfinite(mv.delta.value);
      if (!cd.ok) cd.error = "non-finite delta";
    } catch (const Error& e) {
      cd.ok = false;
      cd.error = e.what();
    }
  }
}

void collect_warnings(const std::vector<Candidate>& cands, std::vector<std::string>* warnings) {
  if (!warnings) return;
  for (const Candidate& cd : cands)
    if (!cd.ok) warnings->push_back("skipped " + describe(cd.move) + ": " + cd.error);
}

Pdag move_result(const Pdag& g, const MoveProposal& mv) {
  switch (mv.kind) {
    case MoveKind::Insert: return insertion_result(g, mv);
    case MoveKind::Delete: return deletion_result(g, mv);
    case MoveKind::Turn: break;
  }
  throw ContractError("turn moves carry their successor");
}

std::vector<MoveProposal> finish(const Cpdag& c, std::vector<Candidate>& cands, const ScoreModel& m,
                                 const EnumerateOptions& opt) {
  score_candidates(cands, m, opt.exec);
  collect_warnings(cands, opt.warnings);
  const std::uint64_t fp = graph_fingerprint(c.graph());
  std::vector<MoveProposal> moves;
  for (Candidate& cd : cands) {
    if (!cd.ok) continue;
    if (opt.improving_only && !(cd.move.delta.value < -kImprovement)) continue;
    cd.move.source_hash = fp;
    if (!cd.move.successor) cd.move.successor = std::make_shared<const Cpdag>(complete(move_result(c.graph(), cd.move)));
    moves.push_back(std::move(cd.move));
  }
  std::sort(moves.begin(), moves.end(), move_key_less);
  std::vector<MoveProposal> out;
  std::map<std::uint64_t, std::vector<std::size_t>> by_hash;
  for (MoveProposal& mv : moves) {
    auto& bucket = by_hash[graph_fingerprint(mv.successor->graph())];
    bool dup = false;
    for (std::size_t idx : bucket)
      if (*out[idx].successor == *mv.successor) {
        dup = true;
        break;
      }
    if (dup) continue;
    bucket.push_back(out.size());
    out.push_back(std::move(mv));
  }
  return out;
}

// Index of the move to apply: minimum delta, near-ties broken by key.
std::optional<std::size_t> select_best(const std::vector<Candidate>& cands) {
  double best = std::numeric_limits<double>::infinity();
  for (const Candidate& cd : cands)
    if (cd.ok && cd.move.delta.value < -kImprovement) best = std::min(best, cd.move.delta.value);
  if (!std::isfinite(best)) return std::nullopt;
  const double cutoff = best + 1e-12 * (1.0 + std::abs(best));
  std::optional<std::size_t> pick;
  for (std::size_t t = 0; t < cands.size(); ++t) {
    const Candidate& cd = cands[t];
    if (!cd.ok || cd.move.delta.value > cutoff || !(cd.move.delta.value < -kImprovement)) continue;
    if (!pick || move_key_less(cd.move, cands[*pick].move)) pick = t;
  }
  return pick;
}

std::size_t step_bound(int p) { return static_cast<std::size_t>(p) * static_cast<std::size_t>(p) + 16; }

struct PhaseState {
  PhaseResult result;
  std::size_t steps = 0;
};

PhaseState begin_phase(const Cpdag& start, const ScoreModel& m) {
  if (start.size() != m.size()) throw GraphError("start graph size does not match the score model");
  PhaseState st;
  st.result.graph = start;
  st.result.score = m.dag_score(consistent_extension(start.graph()));
  return st;
}

// Applies the chosen candidate; false (with a warning) if completion failed.
bool advance(PhaseState& st, Phase phase, const Candidate& cd, std::size_t evaluated) {
  if (++st.steps > step_bound(st.result.graph.size()))
    throw Error(std::string(to_string(phase)) + " phase exceeded its step bound");
  const MoveProposal& mv = cd.move;
  Cpdag next;
  try {
    next = mv.successor ? *mv.successor : complete(move_result(st.result.graph.graph(), mv));
  } catch (const GraphError& e) {
    st.result.warnings.push_back(std::string(to_string(phase)) + " phase stopped at " + describe(mv) + ": " +
                                 e.what());
    return false;
  }
  st.result.graph = std::move(next);
  st.result.score += mv.delta.value;
  st.result.candidates_evaluated += evaluated;
  st.result.trace.push_back(
      {phase, mv.kind, mv.x, mv.y, mv.context, mv.delta.value, mv.delta.rho, st.result.score});
  return true;
}

template <class Generate>
PhaseResult greedy_phase(const Cpdag& start, const ScoreModel& m, Phase phase, Exec exec, Generate gen) {
  PhaseState st = begin_phase(start, m);
  while (true) {
    std::vector<Candidate> cands;
    gen(st.result.graph, cands);
    score_candidates(cands, m, exec);
    collect_warnings(cands, &st.result.warnings);
    auto pick = select_best(cands);
    if (!pick) {
      st.result.candidates_evaluated += cands.size();
      break;
    }
    if (!advance(st, phase, cands[*pick], cands.size())) break;
  }
  return std::move(st.result);
}

}  // namespace

std::vector<MoveProposal> enumerate_insertions(const Cpdag& c, const ScoreModel& m,
                                               const RestrictionPolicy& policy, const EnumerateOptions& opt) {
  std::vector<Candidate> cands;
  insertion_candidates(c, policy, cands);
  return finish(c, cands, m, opt);
}

std::vector<MoveProposal> enumerate_deletions(const Cpdag& c, const ScoreModel& m, const EnumerateOptions& opt) {
  std::vector<Candidate> cands;
  deletion_candidates(c, cands);
  return finish(c, cands, m, opt);
}

std::vector<MoveProposal> enumerate_turns(const Cpdag& c, const ScoreModel& m, const EnumerateOptions& opt) {
  std::vector<Candidate> cands;
  turn_candidates(c, cands);
  return finish(c, cands, m, opt);
}

Cpdag apply_move(const Cpdag& c, const MoveProposal& mv) {
  if (mv.source_hash != graph_fingerprint(c.graph()))
    throw ContractError("move " + describe(mv) + " was not generated for this graph");
  if (mv.successor) return *mv.successor;
  return complete(move_result(c.graph(), mv));
}

PhaseResult forward_phase(const Cpdag& start, const ScoreModel& m, const RestrictionPolicy& policy, Exec exec) {
  return greedy_phase(start, m, Phase::Forward, exec, [&](const Cpdag& c, std::vector<Candidate>& out) {
    insertion_candidates(c, policy, out);
  });
}

PhaseResult backward_phase(const Cpdag& start, const ScoreModel& m, Exec exec) {
  return greedy_phase(start, m, Phase::Backward, exec,
                      [&](const Cpdag& c, std::vector<Candidate>& out) { deletion_candidates(c, out); });
}

PhaseResult turning_phase(const Cpdag& start, const ScoreModel& m, Exec exec) {
  return greedy_phase(start, m, Phase::Turning, exec,
                      [&](const Cpdag& c, std::vector<Candidate>& out) { turn_candidates(c, out); });
}

PhaseResult delta_optimal_oracle_forward(const Cpdag& start, const ScoreModel& m, const RestrictionPolicy& policy,
                                         double delta, WindowSelection selection, std::uint64_t seed,
                                         Exec exec) {
  if (!m.source().is_oracle()) throw ConfigError("delta-optimal forward phase needs an oracle source");
  if (!(delta >= 0.0 && delta <= 1.0)) throw ConfigError("delta must lie in [0, 1]");
  std::mt19937_64 rng(seed);
  PhaseState st = begin_phase(start, m);
  while (true) {
    std::vector<Candidate> cands;
    insertion_candidates(st.result.graph, policy, cands);
    score_candidates(cands, m, exec);
    collect_warnings(cands, &st.result.warnings);
    double max_rho = 0.0;
    std::vector<std::size_t> improving;
    for (std::size_t t = 0; t < cands.size(); ++t)
      if (cands[t].ok && cands[t].move.delta.value < -kImprovement) {
        improving.push_back(t);
        max_rho = std::max(max_rho, std::abs(cands[t].move.delta.rho));
      }
    if (improving.empty()) break;
    std::vector<std::size_t> window;
    for (std::size_t t : improving)
      if (std::abs(cands[t].move.delta.rho) >= max_rho - delta) window.push_back(t);
    std::size_t pick = window.front();
    switch (selection) {
      case WindowSelection::Optimal: pick = *select_best(cands); break;
      case WindowSelection::WorstInWindow:
        for (std::size_t t : window) {
          const double a = std::abs(cands[t].move.delta.rho), b = std::abs(cands[pick].move.delta.rho);
          if (a < b || (a == b && move_key_less(cands[t].move, cands[pick].move))) pick = t;
        }
        break;
      case WindowSelection::RandomInWindow: {
        std::sort(window.begin(), window.end(),
                  [&](auto a, auto b) { return move_key_less(cands[a].move, cands[b].move); });
        pick = window[std::uniform_int_distribution<std::size_t>(0, window.size() - 1)(rng)];
        break;
      }
    }
    if (!advance(st, Phase::Forward, cands[pick], cands.size())) break;
    st.result.trace.back().max_abs_rho = max_rho;
    st.result.trace.back().chosen_abs_rho = std::abs(cands[pick].move.delta.rho);
  }
  return std::move(st.result);
}

LearnReport run_learner(Variant variant, const Cpdag& start, const ScoreModel& m,
                        const std::optional<Pdag>& restriction, const LearnOptions& options) {
  RestrictionPolicy policy{restriction_mode(variant), {}};
  if (variant != Variant::GES) {
    if (!restriction) throw ConfigError(std::string(to_string(variant)) + " needs a restriction graph");
    if (restriction->size() != m.size()) throw GraphError("restriction graph size does not match the data");
    policy.graph = skeleton(*restriction);
  }
  if (options.max_iterations < 1) throw ConfigError("max_iterations must be positive");

  LearnReport rep{variant, m.lambda(), m.kind(), start, {}, {}, {}, 0.0, 0.0};
  rep.config = {{"variant", to_string(variant)},
                {"lambda", std::to_string(m.lambda())},
                {"score_kind", to_string(m.kind())},
                {"turning", options.turning ? "true" : "false"},
                {"iterate", options.iterate ? "true" : "false"},
                {"max_iterations", std::to_string(options.max_iterations)},
                {"restriction_edges", std::to_string(restriction ? restriction->num_edges() : 0)}};
  rep.start_score = m.dag_score(consistent_extension(start.graph()));

  auto absorb = [&](PhaseResult&& r) {
    rep.final = std::move(r.graph);
    rep.final_score = r.score;
    const std::size_t moved = r.trace.size();
    rep.trace.insert(rep.trace.end(), r.trace.begin(), r.trace.end());
    rep.warnings.insert(rep.warnings.end(), r.warnings.begin(), r.warnings.end());
    return moved;
  };
  rep.final_score = rep.start_score;
  const int rounds = options.iterate ? options.max_iterations : 1;
  for (int it = 0; it < rounds; ++it) {
    std::size_t moved = absorb(forward_phase(rep.final, m, policy, options.exec));
    moved += absorb(backward_phase(rep.final, m, options.exec));
    if (options.turning) moved += absorb(turning_phase(rep.final, m, options.exec));
    if (moved == 0) break;
    if (options.iterate && it + 1 == rounds) rep.warnings.push_back("iteration cap reached");
  }
  if (m.source().is_oracle()) {
    const double r = m.min_observed_rho();
    const double bound = -0.5 * std::log1p(-r * r);
    if (r < 1.0 && m.lambda() >= bound)
      rep.warnings.push_back("lambda " + std::to_string(m.lambda()) +
                             " is not below the soundness bound " + std::to_string(bound) +
                             " implied by the smallest nonzero partial correlation seen");
  }
  return rep;
}

}  // namespace argeslab
