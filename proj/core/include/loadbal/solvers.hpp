#pragma once

#include <vector>

#include "loadbal/assignment.hpp"
#include "loadbal/instance.hpp"
#include "loadbal/matching.hpp"
#include "loadbal/rounding.hpp"

namespace loadbal {

/// One step of a doubling schedule: the matching computed for capacity B.
struct ScheduleEntry {
  Mult B = 0;
  CapMatching matching;
  bool client_perfect = false;
  int newly_assigned = 0;  // clients whose minimum matched B is this one
};

struct UnweightedOptions {
  /// Vertex count used for the schedule length and path bound; 0 means
  /// the instance's own n. The weighted reductions pass the global n.
  int n_hint = 0;
};

struct UnweightedResult {
  Assignment assignment;
  std::vector<ScheduleEntry> schedule;
  int log_n = 0;  // ceil(log2 n) of the effective n
  int k = 1;      // path-length bound 4 log_n + 1
};

/// Doubling schedule of (1, 2B)-matchings without short augmenting paths;
/// every client takes its server in the first x_B that matches it.
/// Throws InputError on weighted input, InfeasibleError on an isolated client.
UnweightedResult solve_unweighted(const Instance& instance, const UnweightedOptions& options = {});

struct ClassRun {
  int class_index = 0;
  SubInstance sub;
  UnweightedResult result;
};

struct WeightedCongestResult {
  Assignment assignment;
  std::vector<ClassRun> classes;
  int log_n = 0;
  int k = 1;
};

/// Runs solve_unweighted independently on every weight class.
/// Requires power-of-two weights (see normalize_weights).
WeightedCongestResult solve_weighted_congest(const Instance& instance);

struct LocalClassRun {
  int class_index = 0;
  SubInstance sub;
  std::vector<Mult> tau;  // per sub server, in load units
  CapMatching matching;
};

struct WeightedLocalResult {
  Assignment assignment;
  ExpandedInstance expanded;
  UnweightedResult emulation;  // solve_unweighted on the expanded graph
  std::vector<LocalClassRun> classes;
  int log_n = 0;
  int k = 1;
};

/// Solves the client-expanded graph as if unweighted, uses the per-class
/// loads of that split solution as capacity targets and computes one
/// unweighted matching per class. Requires power-of-two weights.
WeightedLocalResult solve_weighted_local(const Instance& instance,
                                         std::int64_t expansion_cap = kDefaultExpansionCap);

struct SplitResult {
  SplitAssignment split;
  std::vector<ScheduleEntry> schedule;
  int phases = 0;
};

/// Split assignment from a doubling schedule of (w, 2B)-matchings computed
/// by a fixed number of blocking-flow phases. Requires power-of-two weights.
SplitResult split_assignment_seq(const Instance& instance);

struct SequentialResult {
  Assignment assignment;
  SplitResult split;
};

/// split_assignment_seq followed by round_split.
SequentialResult solve_sequential(const Instance& instance);

struct BackupClassRun {
  int class_index = 0;
  SubInstance sub;
  std::vector<ScheduleEntry> schedule;
};

struct BackupResult {
  MultiAssignment assignment;
  std::vector<BackupClassRun> classes;
  int log_n = 0;
  int k = 1;
};

/// Places every client on r distinct adjacent servers using simple
/// (1, 2B, r)-matchings. Weighted instances go through the weight classes
/// and need power-of-two weights. Throws InfeasibleError when some client
/// has fewer than r neighbours.
BackupResult solve_backup(const Instance& instance, int r);

}  // namespace loadbal
