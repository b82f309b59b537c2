#include "loadbal/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>

#include "loadbal/errors.hpp"

namespace loadbal {

namespace {

// Plain Edmonds-Karp on an adjacency-list network.
class FlowNetwork {
 public:
  explicit FlowNetwork(int nodes) : adj_(nodes) {}

  void add_arc(int u, int v, Mult cap) {
    adj_[u].push_back(static_cast<int>(arcs_.size()));
    arcs_.push_back({v, cap});
    adj_[v].push_back(static_cast<int>(arcs_.size()));
    arcs_.push_back({u, 0});
  }

  Mult max_flow(int s, int t) {
    Mult total = 0;
    std::vector<int> via(adj_.size());
    while (true) {
      std::fill(via.begin(), via.end(), -1);
      std::deque<int> queue{s};
      via[s] = -2;
      while (!queue.empty() && via[t] == -1) {
        int u = queue.front();
        queue.pop_front();
        for (int a : adj_[u]) {
          int v = arcs_[a].to;
          if (arcs_[a].cap > 0 && via[v] == -1) {
            via[v] = a;
            queue.push_back(v);
          }
        }
      }
      if (via[t] == -1) return total;
      Mult push = std::numeric_limits<Mult>::max();
      for (int v = t; v != s; v = arcs_[via[v] ^ 1].to) push = std::min(push, arcs_[via[v]].cap);
      for (int v = t; v != s; v = arcs_[via[v] ^ 1].to) {
        arcs_[via[v]].cap -= push;
        arcs_[via[v] ^ 1].cap += push;
      }
      total += push;
    }
  }

 private:
  struct Arc {
    int to;
    Mult cap;
  };
  std::vector<std::vector<int>> adj_;
  std::vector<Arc> arcs_;
};

void require_assignable(const Instance& instance) {
  for (int c = 0; c < instance.num_clients(); ++c) {
    if (instance.client_degree(c) == 0) {
      throw InfeasibleError(instance.client_vertex(c),
                            "client " + std::to_string(instance.client_vertex(c)) + " has no neighbours");
    }
  }
}

void require_unit(const Instance& instance, const char* what) {
  if (!instance.unit_weights()) throw InputError(std::string(what) + " needs unit weights");
}

struct Residual {
  const Instance& g;
  std::span<const Mult> mult;
  std::span<const Mult> kappa;
  std::span<const Mult> tau;
  const CapacityProfile& limits;  // edge limits only
  std::vector<Mult> cdeg;
  std::vector<Mult> sdeg;

  Residual(const Instance& inst, std::span<const Mult> m, std::span<const Mult> k, std::span<const Mult> t,
           const CapacityProfile& p)
      : g(inst), mult(m), kappa(k), tau(t), limits(p), cdeg(inst.num_clients(), 0), sdeg(inst.num_servers(), 0) {
    for (int e = 0; e < g.m(); ++e) {
      cdeg[g.edge_client(e)] += mult[e];
      sdeg[g.edge_server(e)] += mult[e];
    }
  }

  bool client_open(int c) const { return cdeg[c] < kappa[c]; }

  // Shortest augmenting path of length <= max_len starting from any client
  // in `starts`.
  std::optional<AugPath> shortest(const std::vector<int>& starts, int max_len) const {
    std::vector<int> client_parent(g.num_clients(), -2);  // edge into the client, -1 for a start
    std::vector<int> server_parent(g.num_servers(), -2);
    std::vector<int> depth(g.num_clients(), 0);
    std::deque<int> queue;
    for (int c : starts) {
      client_parent[c] = -1;
      queue.push_back(c);
    }
    while (!queue.empty()) {
      int c = queue.front();
      queue.pop_front();
      const int len = 2 * depth[c] + 1;
      if (len > max_len) break;
      for (int e = g.client_edge_begin(c); e < g.client_edge_end(c); ++e) {
        int s = g.edge_server(e);
        if (server_parent[s] != -2 || tau[s] <= 0 || mult[e] >= limits.edge_limit(e)) continue;
        server_parent[s] = e;
        if (sdeg[s] < tau[s]) return build(client_parent, server_parent, s);
        for (int f : g.server_edges(s)) {
          int d = g.edge_client(f);
          if (mult[f] <= 0 || client_parent[d] != -2) continue;
          client_parent[d] = f;
          depth[d] = depth[c] + 1;
          queue.push_back(d);
        }
      }
    }
    return std::nullopt;
  }

  AugPath build(const std::vector<int>& client_parent, const std::vector<int>& server_parent, int s) const {
    std::vector<int> rev_edges;
    while (true) {
      int e = server_parent[s];
      rev_edges.push_back(e);
      int c = g.edge_client(e);
      int back = client_parent[c];
      if (back == -1) break;
      rev_edges.push_back(back);
      s = g.edge_server(back);
    }
    AugPath path;
    path.edges.assign(rev_edges.rbegin(), rev_edges.rend());
    for (std::size_t i = 0; i < path.edges.size(); i += 2) {
      path.clients.push_back(g.edge_client(path.edges[i]));
      path.servers.push_back(g.edge_server(path.edges[i]));
    }
    return path;
  }
};

}  // namespace

Mult max_matching_size(const Instance& instance, const CapacityProfile& profile) {
  profile.validate(instance);
  const int nc = instance.num_clients();
  const int ns = instance.num_servers();
  const int source = 0;
  const int sink = nc + ns + 1;
  FlowNetwork net(nc + ns + 2);
  for (int c = 0; c < nc; ++c) net.add_arc(source, 1 + c, profile.client_cap[c]);
  for (int e = 0; e < instance.m(); ++e) {
    net.add_arc(1 + instance.edge_client(e), 1 + nc + instance.edge_server(e),
                std::min(profile.edge_limit(e), profile.client_cap[instance.edge_client(e)]));
  }
  for (int s = 0; s < ns; ++s) net.add_arc(1 + nc + s, sink, profile.server_cap[s]);
  return net.max_flow(source, sink);
}

bool client_perfect_exists(const Instance& instance, const CapacityProfile& profile) {
  Mult demand = 0;
  for (Mult k : profile.client_cap) demand += k;
  return max_matching_size(instance, profile) == demand;
}

Mult opt_minmax_unweighted(const Instance& instance) {
  require_unit(instance, "opt_minmax_unweighted");
  require_assignable(instance);
  if (instance.num_clients() == 0) return 0;
  Mult lo = 1;
  Mult hi = instance.num_clients();
  while (lo < hi) {
    Mult mid = lo + (hi - lo) / 2;
    if (client_perfect_exists(instance, CapacityProfile::uniform(instance, 1, mid))) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  return lo;
}

Mult opt_split(const Instance& instance) {
  require_assignable(instance);
  if (instance.num_clients() == 0) return 0;
  const Mult total = instance.total_weight();
  Mult lo = std::max<Mult>(1, (total + instance.num_servers() - 1) / instance.num_servers());
  Mult hi = total;
  while (lo < hi) {
    Mult mid = lo + (hi - lo) / 2;
    if (client_perfect_exists(instance, CapacityProfile::weighted(instance, mid))) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  return lo;
}

std::int64_t assignment_count(const Instance& instance, std::int64_t limit) {
  std::int64_t count = 1;
  for (int c = 0; c < instance.num_clients(); ++c) {
    count *= instance.client_degree(c);
    if (count == 0) return 0;
    if (count > limit) return limit + 1;
  }
  return count;
}

AllNormOptimum opt_allnorm_enum(const Instance& instance, std::span<const double> ps, std::int64_t limit) {
  require_assignable(instance);
  if (assignment_count(instance, limit) > limit) {
    throw InputError("instance has more than " + std::to_string(limit) + " assignments to enumerate");
  }
  const int nc = instance.num_clients();
  const int ns = instance.num_servers();

  AllNormOptimum out;
  out.ps.assign(ps.begin(), ps.end());
  std::vector<double> best(ps.size(), std::numeric_limits<double>::infinity());
  std::vector<int> choice(nc, 0);
  std::vector<Load> loads(ns, 0);
  std::vector<Load> sorted(ns);
  std::vector<Load> best_sorted;
  for (int c = 0; c < nc; ++c) loads[instance.edge_server(instance.client_edge_begin(c))] += instance.weight(c);

  auto server_at = [&](int c) { return instance.edge_server(instance.client_edge_begin(c) + choice[c]); };

  while (true) {
    ++out.enumerated;
    for (std::size_t i = 0; i < ps.size(); ++i) {
      double v = 0.0;
      if (std::isinf(ps[i])) {
        for (Load l : loads) v = std::max(v, static_cast<double>(l));
      } else {
        for (Load l : loads) v += std::pow(static_cast<double>(l), ps[i]);
      }
      best[i] = std::min(best[i], v);
    }
    sorted = loads;
    std::sort(sorted.begin(), sorted.end(), std::greater<>());
    if (out.enumerated == 1 || sorted < best_sorted) {
      best_sorted = sorted;
      out.canonical.server_of.resize(nc);
      for (int c = 0; c < nc; ++c) out.canonical.server_of[c] = server_at(c);
    }
    // odometer, client 0 most significant
    int c = nc - 1;
    for (; c >= 0; --c) {
      loads[server_at(c)] -= instance.weight(c);
      if (++choice[c] < instance.client_degree(c)) {
        loads[server_at(c)] += instance.weight(c);
        break;
      }
      choice[c] = 0;
      loads[server_at(c)] += instance.weight(c);
    }
    if (c < 0) break;
  }

  out.canonical_loads = out.canonical.loads(instance);
  out.canonical_is_all_norm = true;
  for (std::size_t i = 0; i < ps.size(); ++i) {
    out.optimum.push_back(std::isinf(ps[i]) ? best[i] : std::pow(best[i], 1.0 / ps[i]));
    double mine = out.canonical_loads.norm(ps[i]);
    if (mine > out.optimum[i] * (1.0 + 1e-9) + 1e-9) out.canonical_is_all_norm = false;
  }
  return out;
}

BackupOptimum opt_backup_enum(const Instance& instance, int r, std::int64_t limit) {
  if (r < 1) throw InputError("r must be at least 1");
  const int nc = instance.num_clients();
  std::vector<std::vector<std::vector<int>>> options(nc);
  std::int64_t count = 1;
  for (int c = 0; c < nc; ++c) {
    if (instance.client_degree(c) < r) {
      throw InfeasibleError(instance.client_vertex(c), "client " + std::to_string(instance.client_vertex(c)) +
                                                           " has fewer than r neighbours");
    }
    const int d = instance.client_degree(c);
    std::vector<int> pick(r);
    for (int i = 0; i < r; ++i) pick[i] = i;
    while (true) {
      std::vector<int> servers;
      for (int i : pick) servers.push_back(instance.edge_server(instance.client_edge_begin(c) + i));
      options[c].push_back(std::move(servers));
      if (static_cast<std::int64_t>(options[c].size()) > limit) break;
      int i = r - 1;
      while (i >= 0 && pick[i] == d - r + i) --i;
      if (i < 0) break;
      ++pick[i];
      for (int j = i + 1; j < r; ++j) pick[j] = pick[j - 1] + 1;
    }
    count *= static_cast<std::int64_t>(options[c].size());
    if (count > limit) {
      throw InputError("instance has more than " + std::to_string(limit) + " placements to enumerate");
    }
  }

  BackupOptimum out;
  out.linf = std::numeric_limits<Load>::max();
  out.witness.r = r;
  std::vector<int> choice(nc, 0);
  std::vector<Load> loads(instance.num_servers(), 0);
  auto place = [&](int c, Load sign) {
    for (int s : options[c][choice[c]]) loads[s] += sign * instance.weight(c);
  };
  for (int c = 0; c < nc; ++c) place(c, 1);
  while (true) {
    ++out.enumerated;
    Load mx = loads.empty() ? 0 : *std::max_element(loads.begin(), loads.end());
    if (mx < out.linf) {
      out.linf = mx;
      out.witness.servers_of.resize(nc);
      for (int c = 0; c < nc; ++c) out.witness.servers_of[c] = options[c][choice[c]];
    }
    int c = nc - 1;
    for (; c >= 0; --c) {
      place(c, -1);
      if (++choice[c] < static_cast<int>(options[c].size())) {
        place(c, 1);
        break;
      }
      choice[c] = 0;
      place(c, 1);
    }
    if (c < 0) break;
  }
  return out;
}

std::optional<CostReducingPath> find_cost_reducing_path(const Instance& instance, const Assignment& assignment) {
  require_unit(instance, "find_cost_reducing_path");
  const int ns = instance.num_servers();
  const auto loads = assignment.loads(instance).loads;
  std::vector<std::vector<int>> assigned(ns);
  for (int c = 0; c < instance.num_clients(); ++c) assigned[assignment.server_of[c]].push_back(c);

  std::vector<int> via_server(ns), via_client(ns);
  for (int start = 0; start < ns; ++start) {
    if (loads[start] < 2) continue;
    std::fill(via_server.begin(), via_server.end(), -2);
    via_server[start] = -1;
    std::deque<int> queue{start};
    while (!queue.empty()) {
      int u = queue.front();
      queue.pop_front();
      for (int c : assigned[u]) {
        for (int e = instance.client_edge_begin(c); e < instance.client_edge_end(c); ++e) {
          int v = instance.edge_server(e);
          if (via_server[v] != -2) continue;
          via_server[v] = u;
          via_client[v] = c;
          if (loads[v] <= loads[start] - 2) {
            CostReducingPath path;
            for (int w = v; w != start; w = via_server[w]) {
              path.servers.push_back(w);
              path.clients.push_back(via_client[w]);
            }
            path.servers.push_back(start);
            std::reverse(path.servers.begin(), path.servers.end());
            std::reverse(path.clients.begin(), path.clients.end());
            return path;
          }
          queue.push_back(v);
        }
      }
    }
  }
  return std::nullopt;
}

Assignment apply_cost_reducing_path(const Assignment& assignment, const CostReducingPath& path) {
  Assignment out = assignment;
  for (std::size_t i = 0; i < path.clients.size(); ++i) out.server_of[path.clients[i]] = path.servers[i + 1];
  return out;
}

std::optional<AugPath> verify_no_short_aug_paths(const Instance& instance, const CapMatching& x, int k) {
  const auto& p = x.profile();
  Residual res(instance, x.mults(), p.client_cap, p.server_cap, p);
  std::vector<int> starts;
  for (int c = 0; c < instance.num_clients(); ++c) {
    if (res.client_open(c)) starts.push_back(c);
  }
  return res.shortest(starts, k);
}

std::optional<int> residual_distance(const Instance& instance, const CapMatching& x) {
  const auto& p = x.profile();
  const int nc = instance.num_clients();
  const int ns = instance.num_servers();
  // nodes: source 0, clients 1..nc, servers nc+1..nc+ns
  std::vector<int> dist(nc + ns + 2, -1);
  std::deque<int> queue;
  dist[0] = 0;
  for (int c = 0; c < nc; ++c) {
    if (x.client_degree(c) < p.client_cap[c]) {
      dist[1 + c] = 1;
      queue.push_back(1 + c);
    }
  }
  while (!queue.empty()) {
    int u = queue.front();
    queue.pop_front();
    if (u <= nc) {
      int c = u - 1;
      for (int e = instance.client_edge_begin(c); e < instance.client_edge_end(c); ++e) {
        int v = 1 + nc + instance.edge_server(e);
        if (x.mult(e) < p.edge_limit(e) && dist[v] < 0) {
          dist[v] = dist[u] + 1;
          queue.push_back(v);
        }
      }
    } else {
      int s = u - 1 - nc;
      if (x.server_degree(s) < p.server_cap[s]) return dist[u] + 1;
      for (int e : instance.server_edges(s)) {
        int v = 1 + instance.edge_client(e);
        if (x.mult(e) > 0 && dist[v] < 0) {
          dist[v] = dist[u] + 1;
          queue.push_back(v);
        }
      }
    }
  }
  return std::nullopt;
}

int ceil_log_alpha(double alpha, Mult total) {
  if (!(alpha > 1.0)) throw InputError("alpha must exceed 1");
  int t = 0;
  for (double v = 1.0; v < static_cast<double>(total); v *= alpha) ++t;
  return t;
}

std::optional<ExpansionCounterexample> verify_expansion_lemma(const Instance& instance,
                                                              std::span<const Mult> kappa,
                                                              std::span<const Mult> tau, double alpha,
                                                              const CapMatching& x) {
  const int nc = instance.num_clients();
  const int ns = instance.num_servers();
  if (kappa.size() != static_cast<std::size_t>(nc) || tau.size() != static_cast<std::size_t>(ns)) {
    throw InputError("capacity vectors do not match the instance");
  }
  CapacityProfile base = x.profile();
  base.client_cap.assign(kappa.begin(), kappa.end());
  base.server_cap.assign(tau.begin(), tau.end());
  if (!client_perfect_exists(instance, base)) {
    throw PreconditionError("no client-perfect (kappa, tau)-matching exists");
  }
  std::vector<Mult> scaled(ns);
  for (int s = 0; s < ns; ++s) scaled[s] = static_cast<Mult>(std::ceil(alpha * static_cast<double>(tau[s])));
  if (!x.feasible(instance)) throw PreconditionError("x violates its own capacities");
  for (int c = 0; c < nc; ++c) {
    if (x.client_degree(c) > kappa[c]) throw PreconditionError("x exceeds kappa");
  }
  for (int s = 0; s < ns; ++s) {
    if (x.server_degree(s) > scaled[s]) throw PreconditionError("x exceeds ceil(alpha tau)");
  }

  Mult total = 0;
  for (Mult t : tau) total += t;
  const int bound = 2 * ceil_log_alpha(alpha, total) + 1;
  Residual res(instance, x.mults(), kappa, scaled, x.profile());
  for (int c = 0; c < nc; ++c) {
    if (!res.client_open(c)) continue;
    auto path = res.shortest({c}, bound);
    if (path) continue;
    ExpansionCounterexample ce{instance, {kappa.begin(), kappa.end()}, {tau.begin(), tau.end()}, alpha,
                               {x.mults().begin(), x.mults().end()}, c, bound, -1};
    if (auto longer = res.shortest({c}, std::numeric_limits<int>::max() / 2)) ce.shortest = longer->length();
    return ce;
  }
  return std::nullopt;
}

std::vector<NodownViolation> nodown_violations(const Instance& instance, const LevelMap& levels) {
  std::vector<NodownViolation> out;
  for (int e = 0; e < instance.m(); ++e) {
    int c = instance.edge_client(e);
    int s = instance.edge_server(e);
    if (levels.server_level[s] <= levels.client_level[c] - 2) out.push_back({c, s});
  }
  return out;
}

LevelMap levels(const Instance& instance, std::int64_t limit) {
  require_unit(instance, "levels");
  const double inf = kInfNorm;
  auto opt = opt_allnorm_enum(instance, std::span<const double>(&inf, 1), limit);
  LevelMap out;
  out.reference = opt.canonical;
  out.server_level = opt.canonical_loads.loads;
  for (int c = 0; c < instance.num_clients(); ++c) {
    out.client_level.push_back(out.server_level[out.reference.server_of[c]]);
  }
  if (!nodown_violations(instance, out).empty()) {
    throw std::logic_error("canonical optimum has a client adjacent to a server two levels below it");
  }
  return out;
}

std::vector<SaturationViolation> saturation_violations(const Instance& instance, const LevelMap& levels,
                                                       std::span<const ScheduleEntry> schedule) {
  std::vector<SaturationViolation> out;
  for (const auto& entry : schedule) {
    for (int c = 0; c < instance.num_clients(); ++c) {
      if (levels.client_level[c] <= entry.B - 1 && !entry.matching.client_saturated(c)) {
        out.push_back({entry.B, c});
      }
    }
  }
  return out;
}

}  // namespace loadbal
