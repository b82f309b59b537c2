#pragma once

#include <optional>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "loadbal/assignment.hpp"
#include "loadbal/dist_sim.hpp"
#include "loadbal/instance.hpp"
#include "loadbal/matching.hpp"
#include "loadbal/oracle.hpp"

namespace loadbal {

using nlohmann::ordered_json;

/// {"chargedRounds", "phases":[{"label","rounds"}], "simulatedMessages":[{"round","edge","bits"}]}
ordered_json trace_to_json(const SimTrace& trace);

/// [[clientId, serverId], ...] in client order.
ordered_json assignment_to_json(const Instance& instance, const Assignment& assignment);
/// [[clientId, [serverId, ...]], ...]
ordered_json multi_assignment_to_json(const Instance& instance, const MultiAssignment& assignment);

/// {"p1": .., "p2": .., "p3": .., "inf": ..}; l1 and l_inf are integers.
ordered_json norms_to_json(const LoadVector& loads);

/// {"kind":"matching","client_cap":[..],"server_cap":[..],"edge_cap":"one"|"unbounded"|[..],
///  "edges":[[clientId, serverId, mult], ...]} with zero entries omitted.
ordered_json matching_to_json(const Instance& instance, const CapMatching& x);

ordered_json counterexample_to_json(const ExpansionCounterexample& ce);

/// Something a verifier can inspect: a matching dump, an assignment or a
/// backup placement, either bare or inside a solve report.
struct Artifact {
  std::optional<CapMatching> matching;
  std::optional<Assignment> assignment;
  std::optional<MultiAssignment> multi_assignment;
};

/// Throws InputError with the offending field on malformed input.
Artifact artifact_from_json(const Instance& instance, std::string_view text);

}  // namespace loadbal
