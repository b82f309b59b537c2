#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace loadbal {

using VertexId = std::int64_t;
using Weight = std::int64_t;

struct ClientSpec {
  VertexId id;
  Weight weight;
};

/// Bipartite client/server instance.
///
/// Vertex ids are global and dense in [0, n). Internally clients and servers
/// are addressed by local indices (position in ascending id order) and edges
/// by an edge index into the canonical (client, server) ordering. For every
/// client the incident edges are therefore contiguous and sorted by server.
class Instance {
 public:
  Instance() = default;

  /// Validates and builds an instance. Throws InputError on duplicate edges,
  /// non-positive weights, dangling endpoints, client-client or
  /// server-server edges, and ids that do not cover [0, n) exactly once.
  static Instance build(std::vector<ClientSpec> clients,
                        std::vector<VertexId> servers,
                        std::vector<std::pair<VertexId, VertexId>> edges);

  int num_clients() const { return static_cast<int>(client_ids_.size()); }
  int num_servers() const { return static_cast<int>(server_ids_.size()); }
  int n() const { return num_clients() + num_servers(); }
  int m() const { return static_cast<int>(edge_client_.size()); }
  Weight max_weight() const { return max_weight_; }
  Weight total_weight() const { return total_weight_; }
  bool unit_weights() const { return max_weight_ <= 1; }

  Weight weight(int c) const { return weights_[c]; }
  std::span<const Weight> weights() const { return weights_; }
  /// Weights before normalize_weights; equal to weights() otherwise.
  std::span<const Weight> original_weights() const { return original_weights_; }

  VertexId client_vertex(int c) const { return client_ids_[c]; }
  VertexId server_vertex(int s) const { return server_ids_[s]; }
  /// Local index of a global id, or nullopt when the id is not a client.
  std::optional<int> client_index(VertexId v) const;
  std::optional<int> server_index(VertexId v) const;

  int edge_client(int e) const { return edge_client_[e]; }
  int edge_server(int e) const { return edge_server_[e]; }

  int client_degree(int c) const { return client_offset_[c + 1] - client_offset_[c]; }
  int server_degree(int s) const { return server_offset_[s + 1] - server_offset_[s]; }
  /// First edge index of client c; its edges are [first, first + degree).
  int client_edge_begin(int c) const { return client_offset_[c]; }
  int client_edge_end(int c) const { return client_offset_[c + 1]; }
  /// Edge indices incident to s, sorted by client.
  std::span<const int> server_edges(int s) const {
    return {server_edge_list_.data() + server_offset_[s],
            static_cast<std::size_t>(server_degree(s))};
  }
  std::optional<int> find_edge(int c, int s) const;

  /// Same graph, new weights (kept alongside the current original weights).
  Instance with_weights(std::vector<Weight> weights) const;

  bool operator==(const Instance& other) const;

 private:
  void index_edges();

  std::vector<VertexId> client_ids_;
  std::vector<VertexId> server_ids_;
  std::vector<Weight> weights_;
  std::vector<Weight> original_weights_;
  std::vector<int> edge_client_;
  std::vector<int> edge_server_;
  std::vector<int> client_offset_;
  std::vector<int> server_offset_;
  std::vector<int> server_edge_list_;
  // global id -> signed local index: >= 0 client, < 0 server as ~index
  std::vector<int> vertex_slot_;
  Weight max_weight_ = 0;
  Weight total_weight_ = 0;
};

/// Rounds weights up to powers of two. When that would exceed n, weights are
/// first rescaled by P / W with ceiling, P the largest power of two <= n.
Instance normalize_weights(const Instance& instance);

bool is_power_of_two(Weight w);

/// Clients whose weight is exactly 2^class_index, with their induced edges.
struct WeightClassView {
  int class_index = 0;
  std::vector<int> clients;  // local client indices, ascending
  std::vector<int> servers;  // N(clients), ascending
  std::vector<int> edges;    // parent edge indices, ascending

  Weight class_weight() const { return Weight{1} << class_index; }
};

/// Throws InputError when a weight is not a power of two.
std::vector<WeightClassView> weight_classes(const Instance& instance);

/// A view materialized as a standalone instance plus maps back to the parent.
struct SubInstance {
  Instance instance;
  std::vector<int> parent_client;  // sub client -> parent client index
  std::vector<int> parent_server;  // sub server -> parent server index
  std::vector<int> parent_edge;    // sub edge -> parent edge index
};

/// Materializes a class. Vertex ids are renumbered densely; with
/// unit_weights the clients are given weight 1.
SubInstance materialize(const Instance& parent, const WeightClassView& view, bool unit_weights);

struct CopyRef {
  int client = 0;  // base client index
  int copy = 0;    // in [1, w(client)]
};

struct ExpandedInstance {
  Instance expanded;
  std::vector<CopyRef> copy_of;       // expanded client -> base client copy
  std::vector<int> first_copy;        // base client -> first expanded index (size |C|+1)
  std::vector<int> base_edge;         // expanded edge -> base edge
};

inline constexpr std::int64_t kDefaultExpansionCap = 1'000'000;

/// Replaces each client c by w(c) unit copies. Throws InputError if the
/// number of copies exceeds cap.
ExpandedInstance client_expand(const Instance& instance, std::int64_t cap = kDefaultExpansionCap);

/// ceil(log2(x)) for x >= 1; 0 for x <= 1.
int ceil_log2(std::int64_t x);

}  // namespace loadbal
