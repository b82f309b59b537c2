#include "loadbal/rounding.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "link_cut_forest.hpp"
#include "loadbal/errors.hpp"

namespace loadbal {

namespace {

class DisjointSets {
 public:
  explicit DisjointSets(int n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }

  int find(int v) {
    while (parent_[v] != v) {
      parent_[v] = parent_[parent_[v]];
      v = parent_[v];
    }
    return v;
  }

  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent_[a] = b;
    return true;
  }

 private:
  std::vector<int> parent_;
};

}  // namespace

LoadVector SplitAssignment::loads(const Instance& instance) const {
  LoadVector out{std::vector<Load>(instance.num_servers(), 0)};
  for (int e = 0; e < instance.m(); ++e) out.loads[instance.edge_server(e)] += mult[e];
  return out;
}

bool SplitAssignment::valid(const Instance& instance) const {
  if (mult.size() != static_cast<std::size_t>(instance.m())) return false;
  for (int c = 0; c < instance.num_clients(); ++c) {
    Mult placed = 0;
    for (int e = instance.client_edge_begin(c); e < instance.client_edge_end(c); ++e) {
      if (mult[e] < 0) return false;
      placed += mult[e];
    }
    if (placed != instance.weight(c)) return false;
  }
  return true;
}

std::vector<Mult> cancel_cycles(const Instance& instance, std::span<const Mult> mult) {
  const int nc = instance.num_clients();
  // forest vertices: clients [0, nc), servers [nc, n)
  detail::LinkCutForest forest(instance.n(), instance.m());
  std::vector<char> in_forest(instance.m(), 0);
  std::vector<Mult> out(mult.begin(), mult.end());

  for (int e = 0; e < instance.m(); ++e) {
    Mult value = mult[e];
    if (value <= 0) continue;
    const int c = instance.edge_client(e);
    const int s = nc + instance.edge_server(e);
    if (forest.connected(c, s)) {
      // Tree path from s down to c; together with e it closes an even cycle.
      // Walking s -> ... -> c, server-above edges come first in each pair and
      // alternate with e.
      auto path = forest.expose(s, c);
      const bool raise_server_above = path.first_server_above < path.first_client_above;
      Mult delta;
      if (!raise_server_above) {
        delta = path.min_server_above;
        forest.add_on_path(-delta, delta);
        value += delta;
      } else {
        delta = std::min(path.min_client_above, value);
        forest.add_on_path(delta, -delta);
        value -= delta;
      }
      for (int z : forest.zero_edges_on_path()) {
        forest.cut_edge(z);
        in_forest[z] = 0;
        out[z] = 0;
      }
    }
    if (value > 0) {
      forest.link_edge(e, c, s, value);
      in_forest[e] = 1;
    } else {
      out[e] = 0;
    }
  }
  for (int e = 0; e < instance.m(); ++e) {
    if (in_forest[e]) out[e] = forest.value(e);
  }
  return out;
}

SplitAssignment cancel_cycles(const Instance& instance, const SplitAssignment& split) {
  return SplitAssignment{cancel_cycles(instance, std::span<const Mult>(split.mult))};
}

CapMatching cancel_cycles(const Instance& instance, const CapMatching& x) {
  if (x.profile().edge_mode != EdgeCapMode::kUnbounded) {
    throw InputError("cycle cancelling needs unbounded edge capacities");
  }
  auto reduced = cancel_cycles(instance, x.mults());
  CapMatching out(instance, x.profile());
  for (int e = 0; e < instance.m(); ++e) {
    if (reduced[e] != 0) out.add(instance, e, reduced[e]);
  }
  return out;
}

bool support_is_forest(const Instance& instance, std::span<const Mult> mult) {
  DisjointSets sets(instance.n());
  for (int e = 0; e < instance.m(); ++e) {
    if (mult[e] == 0) continue;
    if (!sets.unite(instance.edge_client(e), instance.num_clients() + instance.edge_server(e))) return false;
  }
  return true;
}

Assignment star_round(const Instance& instance, std::span<const Mult> mult, std::span<const Mult> kappa) {
  const int nc = instance.num_clients();
  const int ns = instance.num_servers();
  if (!support_is_forest(instance, mult)) throw InputError("star_round: support is not a forest");
  for (int c = 0; c < nc; ++c) {
    Mult placed = 0;
    for (int e = instance.client_edge_begin(c); e < instance.client_edge_end(c); ++e) placed += mult[e];
    if (placed != kappa[c]) {
      throw InputError("star_round: client " + std::to_string(instance.client_vertex(c)) + " places " +
                       std::to_string(placed) + " of " + std::to_string(kappa[c]) + " units");
    }
  }

  // support adjacency; vertices: clients [0, nc), servers [nc, nc + ns)
  std::vector<std::vector<int>> adj(nc + ns);
  for (int e = 0; e < instance.m(); ++e) {
    if (mult[e] == 0) continue;
    int c = instance.edge_client(e);
    int s = nc + instance.edge_server(e);
    adj[c].push_back(s);
    adj[s].push_back(c);
  }
  // roots are visited in ascending global id
  std::vector<int> order(nc + ns);
  std::iota(order.begin(), order.end(), 0);
  auto gid = [&](int v) { return v < nc ? instance.client_vertex(v) : instance.server_vertex(v - nc); };
  std::sort(order.begin(), order.end(), [&](int a, int b) { return gid(a) < gid(b); });

  std::vector<int> parent(nc + ns, -2);
  Assignment out{std::vector<int>(nc, -1)};
  std::vector<int> queue;
  for (int root : order) {
    if (parent[root] != -2 || adj[root].empty()) continue;
    parent[root] = -1;
    queue.assign(1, root);
    for (std::size_t head = 0; head < queue.size(); ++head) {
      int v = queue[head];
      for (int u : adj[v]) {
        if (u == parent[v]) continue;
        parent[u] = v;
        queue.push_back(u);
      }
    }
  }
  for (int c = 0; c < nc; ++c) {
    int child = -1;
    for (int s : adj[c]) {
      if (s != parent[c] && (child < 0 || s < child)) child = s;
    }
    out.server_of[c] = (child >= 0 ? child : parent[c]) - nc;
  }
  return out;
}

Assignment round_split(const Instance& instance, const SplitAssignment& split) {
  auto forest = cancel_cycles(instance, std::span<const Mult>(split.mult));
  return star_round(instance, forest, instance.weights());
}

}  // namespace loadbal
