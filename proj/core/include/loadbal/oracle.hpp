#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "loadbal/assignment.hpp"
#include "loadbal/instance.hpp"
#include "loadbal/matching.hpp"
#include "loadbal/solvers.hpp"

namespace loadbal {

inline constexpr std::int64_t kDefaultEnumLimit = 1'000'000;

/// Size of a maximum matching under `profile`, by Edmonds-Karp on an
/// explicit flow network (independent of the matching engine).
Mult max_matching_size(const Instance& instance, const CapacityProfile& profile);

/// Whether a client-perfect matching exists under `profile`.
bool client_perfect_exists(const Instance& instance, const CapacityProfile& profile);

/// Optimal maximum load for unit weights (binary search over B).
Mult opt_minmax_unweighted(const Instance& instance);

/// Optimal maximum load of a split assignment.
Mult opt_split(const Instance& instance);

struct AllNormOptimum {
  std::vector<double> ps;
  std::vector<double> optimum;  // per entry of ps
  /// Lexicographically smallest descending-sorted load vector, ties broken
  /// by the lexicographically smallest assignment.
  Assignment canonical;
  LoadVector canonical_loads;
  /// canonical attains every per-p optimum (always true for unit weights).
  bool canonical_is_all_norm = false;
  std::int64_t enumerated = 0;
};

/// Number of assignments, saturating at limit + 1.
std::int64_t assignment_count(const Instance& instance, std::int64_t limit = kDefaultEnumLimit);

/// Exhaustive enumeration. Throws InputError when the number of
/// assignments exceeds `limit`, InfeasibleError on an isolated client.
AllNormOptimum opt_allnorm_enum(const Instance& instance, std::span<const double> ps,
                                std::int64_t limit = kDefaultEnumLimit);

struct BackupOptimum {
  Load linf = 0;
  MultiAssignment witness;
  std::int64_t enumerated = 0;
};

/// Minimum maximum load over all placements on r distinct adjacent servers.
BackupOptimum opt_backup_enum(const Instance& instance, int r, std::int64_t limit = kDefaultEnumLimit);

/// s_1 c_1 s_2 c_2 ... s_k c_k s_{k+1}: c_i is assigned to s_i and adjacent
/// to s_{i+1}; load(s_{k+1}) <= load(s_1) - 2.
struct CostReducingPath {
  std::vector<int> servers;
  std::vector<int> clients;
};

/// Unit weights only.
std::optional<CostReducingPath> find_cost_reducing_path(const Instance& instance, const Assignment& assignment);

/// Moves every c_i to s_{i+1}.
Assignment apply_cost_reducing_path(const Assignment& assignment, const CostReducingPath& path);

/// Shortest augmenting path of length <= k under x's own capacities, or
/// nullopt when none exists (the check passes).
std::optional<AugPath> verify_no_short_aug_paths(const Instance& instance, const CapMatching& x, int k);

/// Shortest source-sink distance in the residual flow network of x
/// (source -> client -> server -> sink), or nullopt when the sink is
/// unreachable.
std::optional<int> residual_distance(const Instance& instance, const CapMatching& x);

/// Smallest t with alpha^t >= total, i.e. ceil(log_alpha total).
int ceil_log_alpha(double alpha, Mult total);

struct ExpansionCounterexample {
  Instance instance;
  std::vector<Mult> kappa;
  std::vector<Mult> tau;
  double alpha = 2.0;
  std::vector<Mult> mult;
  int client = 0;      // local index of the stuck client
  int bound = 0;       // allowed path length
  int shortest = -1;   // shortest augmenting path found, -1 if none
};

/// For every x-unsaturated client checks that an augmenting path of length
/// <= 2 ceil(log_alpha tau(S)) + 1 exists w.r.t. capacities (kappa,
/// ceil(alpha tau)). Throws PreconditionError when no client-perfect
/// (kappa, tau)-matching exists or x violates (kappa, ceil(alpha tau)).
std::optional<ExpansionCounterexample> verify_expansion_lemma(const Instance& instance,
                                                              std::span<const Mult> kappa,
                                                              std::span<const Mult> tau, double alpha,
                                                              const CapMatching& x);

struct LevelMap {
  std::vector<Load> server_level;
  std::vector<Load> client_level;
  Assignment reference;
};

struct NodownViolation {
  int client = 0;
  int server = 0;
};

std::vector<NodownViolation> nodown_violations(const Instance& instance, const LevelMap& levels);

/// Levels of the canonical all-norm optimum. Unit weights only; throws
/// std::logic_error if the map has an adjacency from a client down to a
/// server two or more levels lower.
LevelMap levels(const Instance& instance, std::int64_t limit = kDefaultEnumLimit);

struct SaturationViolation {
  Mult B = 0;
  int client = 0;
};

/// Clients with level <= B - 1 that are unsaturated in x_B.
std::vector<SaturationViolation> saturation_violations(const Instance& instance, const LevelMap& levels,
                                                       std::span<const ScheduleEntry> schedule);

}  // namespace loadbal
