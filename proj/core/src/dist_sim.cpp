#include "loadbal/dist_sim.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <utility>

#include "loadbal/errors.hpp"
#include "loadbal/solvers.hpp"

namespace loadbal {

namespace {

std::int64_t congest_call(int log_n) {
  const std::int64_t k = 4 * log_n + 1;
  return k * k * k * log_n;
}

std::int64_t local_call(int log_n) {
  const std::int64_t k = 4 * log_n + 1;
  return k * k * log_n;
}

// Doubling schedule of log_n + 1 matching calls: summed under CONGEST,
// one parallel step under LOCAL.
void charge_schedule(SimTrace& trace, const ModelSpec& model, int log_n, const std::string& prefix) {
  if (model.model == Model::kCongest) {
    for (int i = 0; i <= log_n; ++i) {
      trace.phases.push_back({prefix + "matching B=" + std::to_string(std::int64_t{1} << i), congest_call(log_n)});
    }
  } else {
    trace.phases.push_back({prefix + "matching, all B in parallel", local_call(log_n)});
  }
}

void announce(SimTrace& trace, const Instance& instance, const ModelSpec& model,
              const std::vector<std::vector<int>>& servers_of) {
  const std::int64_t round = trace.charged_rounds + 1;
  const std::int64_t bits = std::max(1, ceil_log2(instance.n()));
  const std::int64_t limit = model.bandwidth_bits(instance.n());
  for (int c = 0; c < instance.num_clients(); ++c) {
    for (int s : servers_of[c]) {
      int e = *instance.find_edge(c, s);
      if (bits > limit) {
        throw BandwidthError(round, e,
                             "round " + std::to_string(round) + ", edge " + std::to_string(e) + ": " +
                                 std::to_string(bits) + " bits exceed the bandwidth of " + std::to_string(limit));
      }
      trace.messages.push_back({round, e, bits});
    }
  }
  trace.phases.push_back({"announcement", 0});
}

}  // namespace

std::int64_t ModelSpec::bandwidth_bits(int n) const {
  if (model == Model::kLocal) return std::numeric_limits<std::int64_t>::max();
  return static_cast<std::int64_t>(bandwidth_factor) * std::max(1, ceil_log2(n));
}

std::string_view to_string(AlgorithmId id) {
  switch (id) {
    case AlgorithmId::kCongestUnweighted: return "congest-unweighted";
    case AlgorithmId::kCongestWeighted: return "congest-weighted";
    case AlgorithmId::kLocalWeighted: return "local-weighted";
    case AlgorithmId::kCongestBackup: return "congest-backup";
  }
  return "?";
}

std::string_view to_string(Model model) { return model == Model::kCongest ? "CONGEST" : "LOCAL"; }

AlgorithmId parse_algorithm(std::string_view name) {
  for (auto id : {AlgorithmId::kCongestUnweighted, AlgorithmId::kCongestWeighted, AlgorithmId::kLocalWeighted,
                  AlgorithmId::kCongestBackup}) {
    if (to_string(id) == name) return id;
  }
  throw InputError("unknown algorithm '" + std::string(name) + "'");
}

Model parse_model(std::string_view name) {
  if (name == "CONGEST" || name == "congest") return Model::kCongest;
  if (name == "LOCAL" || name == "local") return Model::kLocal;
  throw InputError("unknown model '" + std::string(name) + "' (expected CONGEST or LOCAL)");
}

SimResult run_simulation(const Instance& instance, AlgorithmId algorithm, const ModelSpec& model,
                         std::uint64_t /*seed*/, int r) {
  if (model.model == Model::kCongest && model.bandwidth_factor < 1) {
    throw InputError("CONGEST bandwidth factor must be positive");
  }
  if (algorithm == AlgorithmId::kLocalWeighted && model.model != Model::kLocal) {
    throw InputError("local-weighted runs only in the LOCAL model");
  }
  SimResult out;
  out.algorithm = algorithm;
  SimTrace& trace = out.trace;
  trace.n = instance.n();
  std::vector<std::vector<int>> announced(instance.num_clients());

  switch (algorithm) {
    case AlgorithmId::kCongestUnweighted: {
      auto res = solve_unweighted(instance);
      charge_schedule(trace, model, res.log_n, "");
      out.assignment = std::move(res.assignment);
      break;
    }
    case AlgorithmId::kCongestWeighted: {
      auto res = solve_weighted_congest(instance);
      // classes are edge-disjoint and share the schedule length, so the
      // parallel charge per step equals one class's charge
      charge_schedule(trace, model, res.log_n, "all classes, ");
      out.assignment = std::move(res.assignment);
      break;
    }
    case AlgorithmId::kLocalWeighted: {
      auto res = solve_weighted_local(instance);
      out.n_expanded = res.expanded.expanded.n();
      trace.phases.push_back({"emulation on expanded graph, all B in parallel", local_call(res.emulation.log_n)});
      trace.phases.push_back({"class matchings in parallel", local_call(res.log_n)});
      out.assignment = std::move(res.assignment);
      break;
    }
    case AlgorithmId::kCongestBackup: {
      auto res = solve_backup(instance, r);
      charge_schedule(trace, model, res.log_n, "all classes, ");
      out.multi_assignment = std::move(res.assignment);
      break;
    }
  }
  for (const auto& p : trace.phases) trace.charged_rounds += p.rounds;

  if (algorithm == AlgorithmId::kCongestBackup) {
    announced = out.multi_assignment.servers_of;
  } else {
    for (int c = 0; c < instance.num_clients(); ++c) announced[c] = {out.assignment.server_of[c]};
  }
  announce(trace, instance, model, announced);
  return out;
}

bool verify_message_budget(const SimTrace& trace, const ModelSpec& model) {
  const std::int64_t limit = model.bandwidth_bits(trace.n);
  std::map<std::pair<std::int64_t, int>, std::int64_t> used;
  for (const auto& msg : trace.messages) {
    if ((used[{msg.round, msg.edge}] += msg.bits) > limit) return false;
  }
  return true;
}

std::int64_t round_budget(AlgorithmId algorithm, int n, const ModelSpec& model, int n_expanded) {
  const int L = ceil_log2(n);
  switch (algorithm) {
    case AlgorithmId::kCongestUnweighted:
    case AlgorithmId::kCongestWeighted:
    case AlgorithmId::kCongestBackup:
      if (model.model == Model::kCongest) return (L + 1) * congest_call(L);
      return local_call(L);
    case AlgorithmId::kLocalWeighted:
      if (model.model != Model::kLocal) throw InputError("local-weighted runs only in the LOCAL model");
      if (n_expanded < 1) throw InputError("local-weighted budget needs the expanded vertex count");
      return local_call(ceil_log2(n_expanded)) + local_call(L);
  }
  throw InputError("unknown algorithm id");
}

}  // namespace loadbal
