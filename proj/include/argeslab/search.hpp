#pragma once

#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "argeslab/admissibility.hpp"
#include "argeslab/correlation.hpp"
#include "argeslab/graph.hpp"
#include "argeslab/scoring.hpp"

namespace argeslab {

enum class MoveKind { Insert, Delete, Turn };
enum class Phase { Forward, Backward, Turning };
const char* to_string(MoveKind k);
const char* to_string(Phase p);

/// Moves with delta below -kImprovement count as improving.
inline constexpr double kImprovement = 1e-12;

/// One equivalence-class move.
///
/// Insert(x, y, T): add x -> y to a member where the undirected neighbours T
/// of y (non-adjacent to x) point into y. Delete(x, y, H): remove the edge
/// between x and y and orient y -> h for h in H. Turn(x, y, Pa): reverse
/// x -> y in a member where x has parents Pa.
struct MoveProposal {
  MoveKind kind = MoveKind::Insert;
  Node x = 0;
  Node y = 0;
  NodeSet context;
  ScoreDelta delta{0.0, 0.0, false};
  std::uint64_t source_hash = 0;
  std::shared_ptr<const Cpdag> successor;
};

/// (kind, x, y, context) lexicographic order.
bool move_key_less(const MoveProposal& a, const MoveProposal& b);

std::uint64_t graph_fingerprint(const Pdag& g);

struct TraceEntry {
  Phase phase;
  MoveKind kind;
  Node x;
  Node y;
  NodeSet context;
  double delta;
  double rho;
  double cum_score;
  double max_abs_rho = std::numeric_limits<double>::quiet_NaN();
  double chosen_abs_rho = std::numeric_limits<double>::quiet_NaN();
};

struct PhaseResult {
  Cpdag graph;
  std::vector<TraceEntry> trace;
  std::vector<std::string> warnings;
  double score = 0.0;
  std::size_t candidates_evaluated = 0;
};

struct EnumerateOptions {
  bool improving_only = true;
  Exec exec = Exec::Parallel;
  std::vector<std::string>* warnings = nullptr;  // scoring failures land here
};

/// Admissible Insert moves of c, one per distinct successor CPDAG (keeping the
/// smallest key), sorted by key. Successors are filled in.
std::vector<MoveProposal> enumerate_insertions(const Cpdag& c, const ScoreModel& m,
                                               const RestrictionPolicy& policy,
                                               const EnumerateOptions& opt = {});
std::vector<MoveProposal> enumerate_deletions(const Cpdag& c, const ScoreModel& m,
                                              const EnumerateOptions& opt = {});
/// Brute force over class members; intended for small graphs.
std::vector<MoveProposal> enumerate_turns(const Cpdag& c, const ScoreModel& m,
                                          const EnumerateOptions& opt = {});

/// Successor of c under mv. Throws ContractError if mv was built for another graph.
Cpdag apply_move(const Cpdag& c, const MoveProposal& mv);

PhaseResult forward_phase(const Cpdag& start, const ScoreModel& m, const RestrictionPolicy& policy,
                          Exec exec = Exec::Parallel);
PhaseResult backward_phase(const Cpdag& start, const ScoreModel& m, Exec exec = Exec::Parallel);
PhaseResult turning_phase(const Cpdag& start, const ScoreModel& m, Exec exec = Exec::Parallel);

enum class WindowSelection { Optimal, WorstInWindow, RandomInWindow };

/// Oracle forward phase that may pick any improving admissible insertion whose
/// |rho| is within delta of the largest. Records both values per step.
PhaseResult delta_optimal_oracle_forward(const Cpdag& start, const ScoreModel& m,
                                         const RestrictionPolicy& policy, double delta,
                                         WindowSelection selection, std::uint64_t seed = 0,
                                         Exec exec = Exec::Parallel);

enum class Variant { GES, RGES_CIG, RGES_Skeleton, ARGES_CIG, ARGES_Skeleton };
const char* to_string(Variant v);
Variant parse_variant(const std::string& s);
RestrictionMode restriction_mode(Variant v);

struct LearnOptions {
  bool turning = false;
  bool iterate = false;
  int max_iterations = 100;
  Exec exec = Exec::Parallel;
};

struct LearnReport {
  Variant variant;
  double lambda;
  ScoreKind score_kind;
  Cpdag final;
  std::vector<TraceEntry> trace;
  std::vector<std::string> warnings;
  std::vector<std::pair<std::string, std::string>> config;
  double start_score = 0.0;
  double final_score = 0.0;
};

/// Forward, backward, optional turning; with `iterate` the cycle repeats until
/// a full pass makes no move. Throws ConfigError when a restricted variant has
/// no restriction graph.
LearnReport run_learner(Variant variant, const Cpdag& start, const ScoreModel& m,
                        const std::optional<Pdag>& restriction, const LearnOptions& options = {});

}  // namespace argeslab
