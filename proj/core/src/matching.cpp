#include "loadbal/matching.hpp"

#include <algorithm>
#include <cassert>
#include <deque>
#include <string>

#include "loadbal/errors.hpp"

namespace loadbal {

CapacityProfile CapacityProfile::uniform(const Instance& instance, Mult kappa, Mult tau, EdgeCapMode mode) {
  CapacityProfile p;
  p.client_cap.assign(instance.num_clients(), kappa);
  p.server_cap.assign(instance.num_servers(), tau);
  p.edge_mode = mode;
  return p;
}

CapacityProfile CapacityProfile::weighted(const Instance& instance, Mult tau) {
  CapacityProfile p;
  p.client_cap.assign(instance.weights().begin(), instance.weights().end());
  p.server_cap.assign(instance.num_servers(), tau);
  return p;
}

void CapacityProfile::validate(const Instance& instance) const {
  if (client_cap.size() != static_cast<std::size_t>(instance.num_clients()) ||
      server_cap.size() != static_cast<std::size_t>(instance.num_servers())) {
    throw InputError("capacity profile does not match instance dimensions");
  }
  for (Mult k : client_cap) {
    if (k < 1) throw InputError("client capacity must be >= 1");
  }
  for (Mult t : server_cap) {
    if (t < 0) throw InputError("server capacity must be >= 0");
  }
  if (edge_mode == EdgeCapMode::kExplicit) {
    if (edge_cap.size() != static_cast<std::size_t>(instance.m())) {
      throw InputError("explicit edge capacities do not match edge count");
    }
    for (Mult u : edge_cap) {
      if (u < 1) throw InputError("edge capacity must be >= 1");
    }
  }
}

CapMatching::CapMatching(const Instance& instance, CapacityProfile profile)
    : profile_(std::move(profile)),
      mult_(instance.m(), 0),
      client_deg_(instance.num_clients(), 0),
      server_deg_(instance.num_servers(), 0) {
  profile_.validate(instance);
}

void CapMatching::add(const Instance& instance, int e, Mult delta) {
  mult_[e] += delta;
  client_deg_[instance.edge_client(e)] += delta;
  server_deg_[instance.edge_server(e)] += delta;
}

Mult CapMatching::total() const {
  Mult t = 0;
  for (Mult v : mult_) t += v;
  return t;
}

bool CapMatching::feasible(const Instance& instance) const {
  std::vector<Mult> cd(instance.num_clients(), 0);
  std::vector<Mult> sd(instance.num_servers(), 0);
  for (int e = 0; e < instance.m(); ++e) {
    if (mult_[e] < 0 || mult_[e] > profile_.edge_limit(e)) return false;
    cd[instance.edge_client(e)] += mult_[e];
    sd[instance.edge_server(e)] += mult_[e];
  }
  if (cd != client_deg_ || sd != server_deg_) return false;
  for (int c = 0; c < instance.num_clients(); ++c) {
    if (cd[c] > profile_.client_cap[c]) return false;
  }
  for (int s = 0; s < instance.num_servers(); ++s) {
    if (sd[s] > profile_.server_cap[s]) return false;
  }
  return true;
}

std::optional<AugPath> find_augmenting_path(const Instance& instance, const CapMatching& x, int max_len,
                                            std::optional<int> start) {
  const int nc = instance.num_clients();
  const int ns = instance.num_servers();
  const auto& tau = x.profile().server_cap;
  std::vector<int> client_dist(nc, -1), server_dist(ns, -1);
  std::vector<int> client_via(nc, -1), server_via(ns, -1);  // edge used to enter
  std::deque<int> queue;  // clients as c, servers as nc + s

  if (start) {
    if (x.client_residual(*start) > 0) {
      client_dist[*start] = 0;
      queue.push_back(*start);
    }
  } else {
    for (int c = 0; c < nc; ++c) {
      if (x.client_residual(c) > 0) {
        client_dist[c] = 0;
        queue.push_back(c);
      }
    }
  }

  int found = -1;
  while (!queue.empty() && found < 0) {
    int v = queue.front();
    queue.pop_front();
    if (v < nc) {
      int c = v;
      if (client_dist[c] + 1 > max_len) continue;
      for (int e = instance.client_edge_begin(c); e < instance.client_edge_end(c); ++e) {
        int s = instance.edge_server(e);
        if (server_dist[s] >= 0 || tau[s] <= 0 || x.edge_residual(e) <= 0) continue;
        server_dist[s] = client_dist[c] + 1;
        server_via[s] = e;
        if (x.server_residual(s) > 0) {
          found = s;
          break;
        }
        queue.push_back(nc + s);
      }
    } else {
      int s = v - nc;
      if (server_dist[s] + 2 > max_len) continue;
      for (int e : instance.server_edges(s)) {
        int c = instance.edge_client(e);
        if (client_dist[c] >= 0 || x.mult(e) <= 0) continue;
        client_dist[c] = server_dist[s] + 1;
        client_via[c] = e;
        queue.push_back(c);
      }
    }
  }
  if (found < 0) return std::nullopt;

  AugPath path;
  int s = found;
  while (true) {
    int e = server_via[s];
    int c = instance.edge_client(e);
    path.servers.push_back(s);
    path.edges.push_back(e);
    path.clients.push_back(c);
    if (client_via[c] < 0) break;
    path.edges.push_back(client_via[c]);
    s = instance.edge_server(client_via[c]);
  }
  std::reverse(path.clients.begin(), path.clients.end());
  std::reverse(path.servers.begin(), path.servers.end());
  std::reverse(path.edges.begin(), path.edges.end());
  return path;
}

void augment(const Instance& instance, CapMatching& x, const AugPath& path) {
  for (std::size_t i = 0; i < path.edges.size(); ++i) {
    x.add(instance, path.edges[i], i % 2 == 0 ? 1 : -1);
  }
}

namespace {

constexpr int kNoLimit = std::numeric_limits<int>::max() / 2;

// Dinic-style phases on the implicit network source -> clients -> servers
// -> sink. Network distance = augmenting path length in G plus 2.
class LayeredPhases {
 public:
  LayeredPhases(const Instance& g, CapMatching& x) : g_(g), x_(x) {}

  // Levels up to `limit`; true when the sink is reachable within it.
  bool build_levels(int limit) {
    const int nc = g_.num_clients();
    client_level_.assign(nc, -1);
    server_level_.assign(g_.num_servers(), -1);
    sink_level_ = kNoLimit;
    queue_.clear();
    for (int c = 0; c < nc; ++c) {
      if (x_.client_residual(c) > 0) {
        client_level_[c] = 1;
        queue_.push_back(c);
      }
    }
    const auto& tau = x_.profile().server_cap;
    for (std::size_t head = 0; head < queue_.size(); ++head) {
      int v = queue_[head];
      if (v < nc) {
        int c = v;
        int d = client_level_[c];
        if (d + 1 >= sink_level_ || d + 2 > limit) continue;
        for (int e = g_.client_edge_begin(c); e < g_.client_edge_end(c); ++e) {
          int s = g_.edge_server(e);
          if (server_level_[s] != -1 || tau[s] <= 0 || x_.edge_residual(e) <= 0) continue;
          server_level_[s] = d + 1;
          if (x_.server_residual(s) > 0) sink_level_ = std::min(sink_level_, d + 2);
          queue_.push_back(nc + s);
        }
      } else {
        int s = v - nc;
        int d = server_level_[s];
        if (d + 1 >= sink_level_ - 1) continue;
        for (int e : g_.server_edges(s)) {
          int c = g_.edge_client(e);
          if (client_level_[c] != -1 || x_.mult(e) <= 0) continue;
          client_level_[c] = d + 1;
          queue_.push_back(c);
        }
      }
    }
    return sink_level_ < kNoLimit && sink_level_ <= limit;
  }

  void log_layers(std::ostream& out, int phase) const {
    std::vector<int> counts(sink_level_ + 1, 0);
    counts[0] = 1;
    counts[sink_level_] = 1;
    for (int l : client_level_) {
      if (l > 0 && l < sink_level_) ++counts[l];
    }
    for (int l : server_level_) {
      if (l > 0 && l < sink_level_) ++counts[l];
    }
    for (int l = 0; l <= sink_level_; ++l) out << phase << ',' << l << ',' << counts[l] << '\n';
  }

  // Blocking flow on the level graph built by the last build_levels call.
  Mult blocking_flow() {
    client_arc_.resize(g_.num_clients());
    server_arc_.assign(g_.num_servers(), 0);
    for (int c = 0; c < g_.num_clients(); ++c) client_arc_[c] = g_.client_edge_begin(c);
    Mult pushed = 0;
    for (int c = 0; c < g_.num_clients(); ++c) {
      if (client_level_[c] != 1) continue;
      while (x_.client_residual(c) > 0) {
        Mult f = push_from(c);
        if (f == 0) break;
        pushed += f;
      }
    }
    return pushed;
  }

 private:
  static constexpr int kDead = -2;

  int server_arc_edge(int s) const { return g_.server_edges(s)[server_arc_[s]]; }

  Mult push_from(int root) {
    const int nc = g_.num_clients();
    stack_.clear();
    stack_.push_back(root);
    while (!stack_.empty()) {
      int v = stack_.back();
      if (v < nc) {
        int c = v;
        bool advanced = false;
        for (; client_arc_[c] < g_.client_edge_end(c); ++client_arc_[c]) {
          int e = client_arc_[c];
          int s = g_.edge_server(e);
          if (server_level_[s] == client_level_[c] + 1 && x_.edge_residual(e) > 0) {
            stack_.push_back(nc + s);
            advanced = true;
            break;
          }
        }
        if (!advanced) {
          client_level_[c] = kDead;
          stack_.pop_back();
        }
        continue;
      }
      int s = v - nc;
      if (server_level_[s] == sink_level_ - 1) {
        if (x_.server_residual(s) > 0) return augment_stack();
        server_level_[s] = kDead;
        stack_.pop_back();
        continue;
      }
      bool advanced = false;
      auto edges = g_.server_edges(s);
      for (; server_arc_[s] < static_cast<int>(edges.size()); ++server_arc_[s]) {
        int e = edges[server_arc_[s]];
        int c = g_.edge_client(e);
        if (client_level_[c] == server_level_[s] + 1 && x_.mult(e) > 0) {
          stack_.push_back(c);
          advanced = true;
          break;
        }
      }
      if (!advanced) {
        server_level_[s] = kDead;
        stack_.pop_back();
      }
    }
    return 0;
  }

  Mult augment_stack() {
    const int nc = g_.num_clients();
    Mult f = std::min(x_.client_residual(stack_.front()), x_.server_residual(stack_.back() - nc));
    for (std::size_t i = 0; i + 1 < stack_.size(); ++i) {
      int v = stack_[i];
      f = std::min(f, v < nc ? x_.edge_residual(client_arc_[v]) : x_.mult(server_arc_edge(v - nc)));
    }
    for (std::size_t i = 0; i + 1 < stack_.size(); ++i) {
      int v = stack_[i];
      if (v < nc) {
        x_.add(g_, client_arc_[v], f);
      } else {
        x_.add(g_, server_arc_edge(v - nc), -f);
      }
    }
    return f;
  }

  const Instance& g_;
  CapMatching& x_;
  std::vector<int> client_level_, server_level_;
  std::vector<int> client_arc_, server_arc_;
  std::vector<int> queue_, stack_;
  int sink_level_ = kNoLimit;
};

}  // namespace

CapMatching eliminate_short_paths(const Instance& instance, const CapacityProfile& profile, int k,
                                  const PhaseOptions& options) {
  if (k < 1 || k % 2 == 0) throw InputError("augmenting path bound k must be odd and >= 1");
  CapMatching x(instance, profile);
  LayeredPhases engine(instance, x);
  for (int phase = 1; engine.build_levels(k + 2); ++phase) {
    if (options.layer_log) engine.log_layers(*options.layer_log, phase);
    engine.blocking_flow();
    assert(x.feasible(instance));
  }
  return x;
}

CapMatching blocking_flow_matching(const Instance& instance, const CapacityProfile& profile, int phases,
                                   const PhaseOptions& options) {
  if (phases < 1) throw InputError("phase count must be >= 1");
  CapMatching x(instance, profile);
  LayeredPhases engine(instance, x);
  for (int phase = 1; phase <= phases && engine.build_levels(kNoLimit); ++phase) {
    if (options.layer_log) engine.log_layers(*options.layer_log, phase);
    engine.blocking_flow();
    assert(x.feasible(instance));
  }
  return x;
}

bool is_client_perfect(const Instance& instance, const CapMatching& x) {
  for (int c = 0; c < instance.num_clients(); ++c) {
    if (x.client_degree(c) != x.profile().client_cap[c]) return false;
  }
  return true;
}

}  // namespace loadbal
