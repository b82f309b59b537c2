#include "loadbal/solvers.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "loadbal/errors.hpp"

namespace loadbal {

namespace {

void require_degree(const Instance& instance, int r) {
  for (int c = 0; c < instance.num_clients(); ++c) {
    if (instance.client_degree(c) < r) {
      const auto id = instance.client_vertex(c);
      std::string why = "client " + std::to_string(id) + " has " + std::to_string(instance.client_degree(c)) +
                        (r == 1 ? " neighbours; no assignment exists"
                                : " neighbours, fewer than r = " + std::to_string(r));
      throw InfeasibleError(id, why);
    }
  }
}

void require_power_of_two(const Instance& instance) {
  for (int c = 0; c < instance.num_clients(); ++c) {
    if (!is_power_of_two(instance.weight(c))) {
      throw InputError("client " + std::to_string(instance.client_vertex(c)) + " has weight " +
                       std::to_string(instance.weight(c)) + "; call normalize_weights first");
    }
  }
}

int matched_server(const Instance& instance, const CapMatching& x, int c) {
  for (int e = instance.client_edge_begin(c); e < instance.client_edge_end(c); ++e) {
    if (x.mult(e) > 0) return instance.edge_server(e);
  }
  return -1;
}

}  // namespace

UnweightedResult solve_unweighted(const Instance& instance, const UnweightedOptions& options) {
  if (!instance.unit_weights()) {
    throw InputError(
        "solve_unweighted needs unit weights; normalize the instance and use a weighted algorithm");
  }
  require_degree(instance, 1);

  UnweightedResult out;
  const int n = options.n_hint > 0 ? options.n_hint : instance.n();
  out.log_n = ceil_log2(n);
  out.k = 4 * out.log_n + 1;
  out.assignment.server_of.assign(instance.num_clients(), -1);

  for (int i = 0; i <= out.log_n; ++i) {
    ScheduleEntry entry;
    entry.B = Mult{1} << i;
    entry.matching = eliminate_short_paths(instance, CapacityProfile::uniform(instance, 1, 2 * entry.B), out.k);
    entry.client_perfect = is_client_perfect(instance, entry.matching);
    for (int c = 0; c < instance.num_clients(); ++c) {
      if (out.assignment.server_of[c] >= 0 || entry.matching.client_degree(c) == 0) continue;
      out.assignment.server_of[c] = matched_server(instance, entry.matching, c);
      ++entry.newly_assigned;
    }
    out.schedule.push_back(std::move(entry));
  }
  if (!out.schedule.back().client_perfect) {
    throw std::logic_error("solve_unweighted: last matching of the schedule is not client-perfect");
  }
  return out;
}

WeightedCongestResult solve_weighted_congest(const Instance& instance) {
  auto views = weight_classes(instance);
  require_degree(instance, 1);

  WeightedCongestResult out;
  out.log_n = ceil_log2(instance.n());
  out.k = 4 * out.log_n + 1;
  out.assignment.server_of.assign(instance.num_clients(), -1);
  for (const auto& view : views) {
    ClassRun run;
    run.class_index = view.class_index;
    run.sub = materialize(instance, view, true);
    run.result = solve_unweighted(run.sub.instance, {instance.n()});
    for (int i = 0; i < run.sub.instance.num_clients(); ++i) {
      out.assignment.server_of[run.sub.parent_client[i]] =
          run.sub.parent_server[run.result.assignment.server_of[i]];
    }
    out.classes.push_back(std::move(run));
  }
  return out;
}

WeightedLocalResult solve_weighted_local(const Instance& instance, std::int64_t expansion_cap) {
  auto views = weight_classes(instance);
  require_degree(instance, 1);

  WeightedLocalResult out;
  out.expanded = client_expand(instance, expansion_cap);
  out.emulation = solve_unweighted(out.expanded.expanded);
  out.log_n = ceil_log2(instance.n());
  out.k = 4 * out.log_n + 1;
  out.assignment.server_of.assign(instance.num_clients(), -1);

  std::vector<int> sub_pos(instance.num_servers(), -1);
  for (const auto& view : views) {
    LocalClassRun run;
    run.class_index = view.class_index;
    run.sub = materialize(instance, view, true);
    const Instance& g = run.sub.instance;
    const Mult class_weight = view.class_weight();
    for (int j = 0; j < g.num_servers(); ++j) sub_pos[run.sub.parent_server[j]] = j;

    // load of this class under the expanded solution, one unit per copy
    std::vector<Mult> units(g.num_servers(), 0);
    for (int c : view.clients) {
      for (int copy = out.expanded.first_copy[c]; copy < out.expanded.first_copy[c + 1]; ++copy) {
        ++units[sub_pos[out.emulation.assignment.server_of[copy]]];
      }
    }
    run.tau.assign(g.num_servers(), 0);
    std::vector<Mult> caps(g.num_servers(), 0);
    for (int j = 0; j < g.num_servers(); ++j) {
      if (units[j] == 0) continue;
      run.tau[j] = units[j] + class_weight;
      caps[j] = 2 * ((run.tau[j] + class_weight - 1) / class_weight);
    }
    CapacityProfile profile = CapacityProfile::uniform(g, 1, 0);
    profile.server_cap = std::move(caps);
    run.matching = eliminate_short_paths(g, profile, out.k);
    if (!is_client_perfect(g, run.matching)) {
      throw std::logic_error("solve_weighted_local: class " + std::to_string(view.class_index) +
                             " matching is not client-perfect");
    }
    for (int i = 0; i < g.num_clients(); ++i) {
      out.assignment.server_of[run.sub.parent_client[i]] =
          run.sub.parent_server[matched_server(g, run.matching, i)];
    }
    out.classes.push_back(std::move(run));
  }
  return out;
}

SplitResult split_assignment_seq(const Instance& instance) {
  require_power_of_two(instance);
  require_degree(instance, 1);

  SplitResult out;
  const int nc = instance.num_clients();
  const int log_nw = ceil_log2(static_cast<std::int64_t>(instance.n()) * std::max<Weight>(1, instance.max_weight()));
  out.phases = std::max(1, 9 * log_nw);
  out.split.mult.assign(instance.m(), 0);

  std::vector<Mult> placed(nc, 0);
  std::vector<int> order;
  for (int i = 0; i <= log_nw; ++i) {
    ScheduleEntry entry;
    entry.B = Mult{1} << i;
    entry.matching =
        blocking_flow_matching(instance, CapacityProfile::weighted(instance, 2 * entry.B), out.phases);
    entry.client_perfect = is_client_perfect(instance, entry.matching);
    for (int c = 0; c < nc; ++c) {
      const Mult target = std::min<Mult>(instance.weight(c), std::max(placed[c], entry.matching.client_degree(c)));
      Mult need = target - placed[c];
      if (need == 0) continue;
      // servers already holding units of c first, then ascending server id
      order.clear();
      for (int e = instance.client_edge_begin(c); e < instance.client_edge_end(c); ++e) {
        if (out.split.mult[e] > 0) order.push_back(e);
      }
      for (int e = instance.client_edge_begin(c); e < instance.client_edge_end(c); ++e) {
        if (out.split.mult[e] == 0) order.push_back(e);
      }
      for (int e : order) {
        Mult take = std::min(need, entry.matching.mult(e));
        out.split.mult[e] += take;
        need -= take;
        if (need == 0) break;
      }
      placed[c] = target - need;
      if (placed[c] == instance.weight(c)) ++entry.newly_assigned;
    }
    out.schedule.push_back(std::move(entry));
  }

  // top up from the last matching, then from the first neighbour
  const CapMatching& last = out.schedule.back().matching;
  for (int c = 0; c < nc; ++c) {
    Mult need = instance.weight(c) - placed[c];
    for (int e = instance.client_edge_begin(c); need > 0 && e < instance.client_edge_end(c); ++e) {
      Mult take = std::min(need, last.mult(e));
      out.split.mult[e] += take;
      need -= take;
    }
    if (need > 0) out.split.mult[instance.client_edge_begin(c)] += need;
  }
  return out;
}

SequentialResult solve_sequential(const Instance& instance) {
  SequentialResult out;
  out.split = split_assignment_seq(instance);
  out.assignment = round_split(instance, out.split.split);
  return out;
}

BackupResult solve_backup(const Instance& instance, int r) {
  if (r < 1) throw InputError("r must be at least 1");
  auto views = weight_classes(instance);
  require_degree(instance, r);

  BackupResult out;
  out.log_n = ceil_log2(instance.n());
  out.k = 4 * out.log_n + 1;
  out.assignment.r = r;
  out.assignment.servers_of.assign(instance.num_clients(), {});
  for (const auto& view : views) {
    BackupClassRun run;
    run.class_index = view.class_index;
    run.sub = materialize(instance, view, true);
    const Instance& g = run.sub.instance;
    std::vector<char> done(g.num_clients(), 0);
    for (int i = 0; i <= out.log_n; ++i) {
      ScheduleEntry entry;
      entry.B = Mult{1} << i;
      entry.matching = eliminate_short_paths(g, CapacityProfile::uniform(g, r, 2 * entry.B, EdgeCapMode::kOne), out.k);
      entry.client_perfect = is_client_perfect(g, entry.matching);
      for (int c = 0; c < g.num_clients(); ++c) {
        if (done[c] || entry.matching.client_degree(c) < r) continue;
        auto& chosen = out.assignment.servers_of[run.sub.parent_client[c]];
        for (int e = g.client_edge_begin(c); e < g.client_edge_end(c); ++e) {
          if (entry.matching.mult(e) > 0) chosen.push_back(run.sub.parent_server[g.edge_server(e)]);
        }
        done[c] = 1;
        ++entry.newly_assigned;
      }
      run.schedule.push_back(std::move(entry));
    }
    if (!run.schedule.back().client_perfect) {
      throw std::logic_error("solve_backup: last matching of the schedule is not client-perfect");
    }
    out.classes.push_back(std::move(run));
  }
  return out;
}

}  // namespace loadbal
