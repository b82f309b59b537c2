#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <ostream>
#include <span>
#include <vector>

#include "loadbal/instance.hpp"

namespace loadbal {

using Mult = std::int64_t;

inline constexpr Mult kUnbounded = std::numeric_limits<Mult>::max() / 4;

enum class EdgeCapMode { kOne, kUnbounded, kExplicit };

/// Client capacities kappa, server capacities tau and per-edge limits.
/// A server with capacity 0 is unusable.
struct CapacityProfile {
  std::vector<Mult> client_cap;
  std::vector<Mult> server_cap;
  EdgeCapMode edge_mode = EdgeCapMode::kUnbounded;
  std::vector<Mult> edge_cap;  // used only in kExplicit mode

  static CapacityProfile uniform(const Instance& instance, Mult kappa, Mult tau,
                                 EdgeCapMode mode = EdgeCapMode::kUnbounded);
  /// kappa = client weights, tau uniform.
  static CapacityProfile weighted(const Instance& instance, Mult tau);

  Mult edge_limit(int e) const {
    switch (edge_mode) {
      case EdgeCapMode::kOne: return 1;
      case EdgeCapMode::kUnbounded: return kUnbounded;
      case EdgeCapMode::kExplicit: return edge_cap[e];
    }
    return 0;
  }

  /// Throws InputError when sizes disagree with the instance or kappa < 1.
  void validate(const Instance& instance) const;

  bool operator==(const CapacityProfile&) const = default;
};

/// Integral edge multiplicities under a capacity profile, with cached vertex
/// degrees x(delta(v)).
class CapMatching {
 public:
  CapMatching() = default;
  CapMatching(const Instance& instance, CapacityProfile profile);

  const CapacityProfile& profile() const { return profile_; }
  Mult mult(int e) const { return mult_[e]; }
  std::span<const Mult> mults() const { return mult_; }
  Mult client_degree(int c) const { return client_deg_[c]; }
  Mult server_degree(int s) const { return server_deg_[s]; }

  bool client_saturated(int c) const { return client_deg_[c] >= profile_.client_cap[c]; }
  bool server_saturated(int s) const { return server_deg_[s] >= profile_.server_cap[s]; }
  Mult client_residual(int c) const { return profile_.client_cap[c] - client_deg_[c]; }
  Mult server_residual(int s) const { return profile_.server_cap[s] - server_deg_[s]; }
  Mult edge_residual(int e) const { return profile_.edge_limit(e) - mult_[e]; }

  /// Adds delta to edge e (delta may be negative). No capacity checks.
  void add(const Instance& instance, int e, Mult delta);

  Mult total() const;

  /// Recomputes degrees and checks every capacity; returns false on any
  /// violation or stale cache.
  bool feasible(const Instance& instance) const;

 private:
  CapacityProfile profile_;
  std::vector<Mult> mult_;
  std::vector<Mult> client_deg_;
  std::vector<Mult> server_deg_;
};

/// Alternating path client, server, client, ..., server. `clients` and
/// `servers` interleave as c0 s0 c1 s1 ...; edges[2i] is (c_i, s_i) and
/// edges[2i+1] is (c_{i+1}, s_i), which must carry positive multiplicity.
struct AugPath {
  std::vector<int> clients;
  std::vector<int> servers;
  std::vector<int> edges;

  int length() const { return static_cast<int>(edges.size()); }
};

/// Shortest augmenting path of length <= max_len from `start` (or from any
/// unsaturated client), by BFS over the residual orientation. Ties resolve
/// to ascending ids.
std::optional<AugPath> find_augmenting_path(const Instance& instance, const CapMatching& x, int max_len,
                                            std::optional<int> start = std::nullopt);

/// Applies one unit along the path.
void augment(const Instance& instance, CapMatching& x, const AugPath& path);

struct PhaseOptions {
  /// When set, per-phase layer sizes are written as CSV rows
  /// "phase,layer,vertices".
  std::ostream* layer_log = nullptr;
};

/// Layered shortest-augmentation phases from the empty matching until the
/// shortest augmenting path is longer than k.
CapMatching eliminate_short_paths(const Instance& instance, const CapacityProfile& profile, int k,
                                  const PhaseOptions& options = {});

/// `phases` blocking-flow phases on the network source -> client (kappa)
/// -> server (edge limit) -> sink (tau). Stops early once the sink is
/// unreachable.
CapMatching blocking_flow_matching(const Instance& instance, const CapacityProfile& profile, int phases,
                                   const PhaseOptions& options = {});

bool is_client_perfect(const Instance& instance, const CapMatching& x);

}  // namespace loadbal
