#include "loadbal/instance.hpp"

#include <algorithm>
#include <bit>
#include <string>

#include "loadbal/errors.hpp"

namespace loadbal {

namespace {

__extension__ using Wide = __int128;

std::string vid(VertexId v) { return std::to_string(v); }

}  // namespace

int ceil_log2(std::int64_t x) {
  if (x <= 1) return 0;
  return 64 - std::countl_zero(static_cast<std::uint64_t>(x - 1));
}

bool is_power_of_two(Weight w) { return w > 0 && (w & (w - 1)) == 0; }

Instance Instance::build(std::vector<ClientSpec> clients, std::vector<VertexId> servers,
                         std::vector<std::pair<VertexId, VertexId>> edges) {
  const std::size_t n = clients.size() + servers.size();
  Instance inst;
  inst.vertex_slot_.assign(n, 0);
  std::vector<char> seen(n, 0);
  auto claim = [&](VertexId v, const char* what) {
    if (v < 0 || static_cast<std::size_t>(v) >= n) {
      throw InputError(std::string(what) + " id " + vid(v) + " outside dense range [0, " +
                       std::to_string(n) + ")");
    }
    if (seen[v]) throw InputError("vertex id " + vid(v) + " used more than once");
    seen[v] = 1;
  };

  std::sort(clients.begin(), clients.end(),
            [](const ClientSpec& a, const ClientSpec& b) { return a.id < b.id; });
  std::sort(servers.begin(), servers.end());
  for (const auto& c : clients) {
    claim(c.id, "client");
    if (c.weight <= 0) {
      throw InputError("client " + vid(c.id) + " has non-positive weight " + std::to_string(c.weight));
    }
  }
  for (VertexId s : servers) claim(s, "server");

  for (std::size_t i = 0; i < clients.size(); ++i) {
    inst.client_ids_.push_back(clients[i].id);
    inst.weights_.push_back(clients[i].weight);
    inst.vertex_slot_[clients[i].id] = static_cast<int>(i);
  }
  for (std::size_t j = 0; j < servers.size(); ++j) {
    inst.server_ids_.push_back(servers[j]);
    inst.vertex_slot_[servers[j]] = ~static_cast<int>(j);
  }

  std::vector<std::pair<int, int>> local;
  local.reserve(edges.size());
  for (const auto& [a, b] : edges) {
    auto ca = inst.client_index(a);
    auto sb = inst.server_index(b);
    if (!ca || !sb) {
      bool a_known = a >= 0 && static_cast<std::size_t>(a) < n;
      bool b_known = b >= 0 && static_cast<std::size_t>(b) < n;
      if (!a_known || !b_known) {
        throw InputError("edge (" + vid(a) + ", " + vid(b) + ") has a dangling endpoint");
      }
      throw InputError("edge (" + vid(a) + ", " + vid(b) +
                       ") must join a client (first) and a server (second)");
    }
    local.emplace_back(*ca, *sb);
  }
  std::sort(local.begin(), local.end());
  if (auto dup = std::adjacent_find(local.begin(), local.end()); dup != local.end()) {
    throw InputError("duplicate edge (" + vid(inst.client_ids_[dup->first]) + ", " +
                     vid(inst.server_ids_[dup->second]) + ")");
  }
  for (const auto& [c, s] : local) {
    inst.edge_client_.push_back(c);
    inst.edge_server_.push_back(s);
  }
  inst.original_weights_ = inst.weights_;
  inst.index_edges();
  return inst;
}

void Instance::index_edges() {
  const int nc = num_clients();
  const int ns = num_servers();
  client_offset_.assign(nc + 1, 0);
  server_offset_.assign(ns + 1, 0);
  for (int e = 0; e < m(); ++e) {
    ++client_offset_[edge_client_[e] + 1];
    ++server_offset_[edge_server_[e] + 1];
  }
  for (int c = 0; c < nc; ++c) client_offset_[c + 1] += client_offset_[c];
  for (int s = 0; s < ns; ++s) server_offset_[s + 1] += server_offset_[s];
  server_edge_list_.assign(m(), 0);
  std::vector<int> fill(server_offset_.begin(), server_offset_.end() - 1);
  // edges are sorted by client, so each server list comes out sorted by client
  for (int e = 0; e < m(); ++e) server_edge_list_[fill[edge_server_[e]]++] = e;

  max_weight_ = 0;
  total_weight_ = 0;
  for (Weight w : weights_) {
    max_weight_ = std::max(max_weight_, w);
    total_weight_ += w;
  }
}

std::optional<int> Instance::client_index(VertexId v) const {
  if (v < 0 || static_cast<std::size_t>(v) >= vertex_slot_.size()) return std::nullopt;
  int slot = vertex_slot_[v];
  if (slot < 0) return std::nullopt;
  return slot;
}

std::optional<int> Instance::server_index(VertexId v) const {
  if (v < 0 || static_cast<std::size_t>(v) >= vertex_slot_.size()) return std::nullopt;
  int slot = vertex_slot_[v];
  if (slot >= 0) return std::nullopt;
  return ~slot;
}

std::optional<int> Instance::find_edge(int c, int s) const {
  auto first = edge_server_.begin() + client_offset_[c];
  auto last = edge_server_.begin() + client_offset_[c + 1];
  auto it = std::lower_bound(first, last, s);
  if (it == last || *it != s) return std::nullopt;
  return static_cast<int>(it - edge_server_.begin());
}

Instance Instance::with_weights(std::vector<Weight> weights) const {
  if (weights.size() != weights_.size()) throw InputError("weight vector size mismatch");
  for (std::size_t c = 0; c < weights.size(); ++c) {
    if (weights[c] <= 0) {
      throw InputError("client " + vid(client_ids_[c]) + " has non-positive weight");
    }
  }
  Instance out = *this;
  out.weights_ = std::move(weights);
  out.index_edges();
  return out;
}

bool Instance::operator==(const Instance& other) const {
  return client_ids_ == other.client_ids_ && server_ids_ == other.server_ids_ &&
         weights_ == other.weights_ && edge_client_ == other.edge_client_ &&
         edge_server_ == other.edge_server_;
}

Instance normalize_weights(const Instance& instance) {
  const Weight n = instance.n();
  const Weight cap = n >= 1 ? std::bit_floor(static_cast<std::uint64_t>(n)) : 1;
  const Weight W = instance.max_weight();
  const bool rescale = W > 0 && static_cast<Weight>(std::bit_ceil(static_cast<std::uint64_t>(W))) > cap;

  std::vector<Weight> out(instance.num_clients());
  for (int c = 0; c < instance.num_clients(); ++c) {
    Weight w = instance.weight(c);
    if (rescale) {
      // ceil(w * cap / W) without overflow for w <= W
      Wide num = static_cast<Wide>(w) * cap;
      w = static_cast<Weight>((num + W - 1) / W);
    }
    out[c] = static_cast<Weight>(std::bit_ceil(static_cast<std::uint64_t>(w)));
  }
  Instance result = instance.with_weights(std::move(out));
  return result;
}

std::vector<WeightClassView> weight_classes(const Instance& instance) {
  std::vector<WeightClassView> views;
  std::vector<int> slot(64, -1);
  for (int c = 0; c < instance.num_clients(); ++c) {
    Weight w = instance.weight(c);
    if (!is_power_of_two(w)) {
      throw InputError("client " + std::to_string(instance.client_vertex(c)) + " has weight " +
                       std::to_string(w) + "; call normalize_weights first");
    }
    slot[std::countr_zero(static_cast<std::uint64_t>(w))] = 0;
  }
  for (int i = 0; i < 64; ++i) {
    if (slot[i] < 0) continue;
    slot[i] = static_cast<int>(views.size());
    views.push_back(WeightClassView{i, {}, {}, {}});
  }
  std::vector<std::vector<char>> touched(views.size());
  for (auto& t : touched) t.assign(instance.num_servers(), 0);
  for (int c = 0; c < instance.num_clients(); ++c) {
    int i = std::countr_zero(static_cast<std::uint64_t>(instance.weight(c)));
    auto& view = views[slot[i]];
    view.clients.push_back(c);
    for (int e = instance.client_edge_begin(c); e < instance.client_edge_end(c); ++e) {
      view.edges.push_back(e);
      touched[slot[i]][instance.edge_server(e)] = 1;
    }
  }
  for (std::size_t v = 0; v < views.size(); ++v) {
    for (int s = 0; s < instance.num_servers(); ++s) {
      if (touched[v][s]) views[v].servers.push_back(s);
    }
  }
  return views;
}

SubInstance materialize(const Instance& parent, const WeightClassView& view, bool unit_weights) {
  SubInstance sub;
  const int k = static_cast<int>(view.clients.size());
  std::vector<int> server_pos(parent.num_servers(), -1);
  for (std::size_t j = 0; j < view.servers.size(); ++j) server_pos[view.servers[j]] = static_cast<int>(j);

  std::vector<ClientSpec> clients;
  for (int i = 0; i < k; ++i) {
    int c = view.clients[i];
    clients.push_back({i, unit_weights ? 1 : parent.weight(c)});
  }
  std::vector<VertexId> servers;
  for (std::size_t j = 0; j < view.servers.size(); ++j) servers.push_back(k + static_cast<VertexId>(j));
  std::vector<int> client_pos(parent.num_clients(), -1);
  for (int i = 0; i < k; ++i) client_pos[view.clients[i]] = i;
  std::vector<std::pair<VertexId, VertexId>> edges;
  for (int e : view.edges) {
    edges.emplace_back(client_pos[parent.edge_client(e)], k + server_pos[parent.edge_server(e)]);
  }
  sub.instance = Instance::build(std::move(clients), std::move(servers), std::move(edges));
  sub.parent_client = view.clients;
  sub.parent_server = view.servers;
  // view.edges is ascending in (client, server) order, matching the sub ordering
  sub.parent_edge = view.edges;
  return sub;
}

ExpandedInstance client_expand(const Instance& instance, std::int64_t cap) {
  if (instance.total_weight() > cap) {
    throw InputError("client expansion would create " + std::to_string(instance.total_weight()) +
                     " clients, above the cap of " + std::to_string(cap));
  }
  ExpandedInstance out;
  const int nc = instance.num_clients();
  const auto total = static_cast<int>(instance.total_weight());
  out.first_copy.assign(nc + 1, 0);
  for (int c = 0; c < nc; ++c) out.first_copy[c + 1] = out.first_copy[c] + static_cast<int>(instance.weight(c));

  std::vector<ClientSpec> clients;
  clients.reserve(total);
  for (int c = 0; c < nc; ++c) {
    for (Weight j = 1; j <= instance.weight(c); ++j) {
      clients.push_back({static_cast<VertexId>(clients.size()), 1});
      out.copy_of.push_back({c, static_cast<int>(j)});
    }
  }
  std::vector<VertexId> servers;
  for (int s = 0; s < instance.num_servers(); ++s) servers.push_back(total + static_cast<VertexId>(s));
  std::vector<std::pair<VertexId, VertexId>> edges;
  for (int x = 0; x < total; ++x) {
    int c = out.copy_of[x].client;
    for (int e = instance.client_edge_begin(c); e < instance.client_edge_end(c); ++e) {
      edges.emplace_back(x, total + instance.edge_server(e));
      out.base_edge.push_back(e);
    }
  }
  // edges were generated in (copy, server) order, which is the canonical order
  out.expanded = Instance::build(std::move(clients), std::move(servers), std::move(edges));
  return out;
}

}  // namespace loadbal
