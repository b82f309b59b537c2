#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <utility>
#include <vector>

namespace loadbal::detail {

// Link-cut forest over the support of a bipartite multiplicity function.
// Vertices and edges are both nodes (edge nodes carry the multiplicity), so
// rerooting is cheap. Every edge node remembers whether its endpoint nearer
// the root is the server ("server-above"); path aggregates are kept
// separately for server-above and client-above edges, which is exactly the
// split an alternating cycle update needs.
class LinkCutForest {
 public:
  static constexpr std::int64_t kInf = std::numeric_limits<std::int64_t>::max();
  static constexpr int kNoEdge = std::numeric_limits<int>::max();

  LinkCutForest(int vertices, int edges) : vertices_(vertices), nodes_(vertices + edges + 1) {}

  // Node handles: vertex v -> v + 1, edge e -> vertices + e + 1.
  int vertex_node(int v) const { return v + 1; }
  int edge_node(int e) const { return vertices_ + e + 1; }

  bool connected(int u, int v) { return find_root(vertex_node(u)) == find_root(vertex_node(v)); }

  // Adds edge node e between vertices `client_vertex` and `server_vertex`,
  // which must lie in different trees.
  void link_edge(int e, int client_vertex, int server_vertex, std::int64_t value) {
    int x = edge_node(e);
    int client = vertex_node(client_vertex);
    int server = vertex_node(server_vertex);
    Node& node = nodes_[x];
    node.is_edge = true;
    node.edge_id = e;
    node.value = value;
    node.server_above = true;
    node.client = client;
    node.server = server;
    pull(x);
    // x is a fresh singleton: it hangs below the server, the client's tree
    // hangs below x
    nodes_[x].parent = server;
    make_root(client);
    nodes_[client].parent = x;
  }

  void cut_edge(int e) {
    int x = edge_node(e);
    cut(x, nodes_[x].client);
    cut(x, nodes_[x].server);
  }

  struct PathSummary {
    std::int64_t min_server_above = kInf;
    std::int64_t min_client_above = kInf;
    int first_server_above = kNoEdge;
    int first_client_above = kNoEdge;
  };

  // Exposes the tree path from vertex `top` (made the root) down to vertex
  // `bottom`; later path calls act on it.
  PathSummary expose(int top, int bottom) {
    make_root(vertex_node(top));
    exposed_ = vertex_node(bottom);
    access(exposed_);
    const Node& n = nodes_[exposed_];
    return {n.min_a, n.min_b, n.id_a, n.id_b};
  }

  void add_on_path(std::int64_t server_above_delta, std::int64_t client_above_delta) {
    apply_add(exposed_, server_above_delta, client_above_delta);
  }

  // Edge ids on the exposed path whose value is zero.
  std::vector<int> zero_edges_on_path() {
    std::vector<int> out;
    std::vector<int> todo{exposed_};
    while (!todo.empty()) {
      int x = todo.back();
      todo.pop_back();
      if (x == 0) continue;
      const Node& n = nodes_[x];
      if (n.min_a != 0 && n.min_b != 0) continue;
      push(x);
      if (n.is_edge && n.value == 0) out.push_back(n.edge_id);
      todo.push_back(n.child[0]);
      todo.push_back(n.child[1]);
    }
    return out;
  }

  std::int64_t value(int e) {
    int x = edge_node(e);
    splay(x);
    return nodes_[x].value;
  }

 private:
  struct Node {
    int child[2] = {0, 0};
    int parent = 0;
    bool flip = false;
    bool is_edge = false;
    bool server_above = false;
    int edge_id = kNoEdge;
    int client = 0;
    int server = 0;
    std::int64_t value = 0;
    // aggregates: a = server-above edges, b = client-above edges
    std::int64_t min_a = kInf, min_b = kInf;
    int id_a = kNoEdge, id_b = kNoEdge;
    std::int64_t add_a = 0, add_b = 0;
  };

  bool is_splay_root(int x) const {
    int p = nodes_[x].parent;
    return p == 0 || (nodes_[p].child[0] != x && nodes_[p].child[1] != x);
  }

  void apply_flip(int x) {
    if (x == 0) return;
    Node& n = nodes_[x];
    std::swap(n.child[0], n.child[1]);
    if (n.is_edge) n.server_above = !n.server_above;
    std::swap(n.min_a, n.min_b);
    std::swap(n.id_a, n.id_b);
    std::swap(n.add_a, n.add_b);
    n.flip = !n.flip;
  }

  void apply_add(int x, std::int64_t da, std::int64_t db) {
    if (x == 0) return;
    Node& n = nodes_[x];
    if (n.is_edge) n.value += n.server_above ? da : db;
    if (n.min_a != kInf) n.min_a += da;
    if (n.min_b != kInf) n.min_b += db;
    n.add_a += da;
    n.add_b += db;
  }

  void push(int x) {
    Node& n = nodes_[x];
    if (n.flip) {
      apply_flip(n.child[0]);
      apply_flip(n.child[1]);
      n.flip = false;
    }
    if (n.add_a != 0 || n.add_b != 0) {
      apply_add(n.child[0], n.add_a, n.add_b);
      apply_add(n.child[1], n.add_a, n.add_b);
      n.add_a = n.add_b = 0;
    }
  }

  void pull(int x) {
    Node& n = nodes_[x];
    n.min_a = n.min_b = kInf;
    n.id_a = n.id_b = kNoEdge;
    if (n.is_edge) {
      if (n.server_above) {
        n.min_a = n.value;
        n.id_a = n.edge_id;
      } else {
        n.min_b = n.value;
        n.id_b = n.edge_id;
      }
    }
    for (int ch : n.child) {
      if (ch == 0) continue;
      const Node& c = nodes_[ch];
      n.min_a = std::min(n.min_a, c.min_a);
      n.min_b = std::min(n.min_b, c.min_b);
      n.id_a = std::min(n.id_a, c.id_a);
      n.id_b = std::min(n.id_b, c.id_b);
    }
  }

  void rotate(int x) {
    int p = nodes_[x].parent;
    int g = nodes_[p].parent;
    int dir = nodes_[p].child[1] == x ? 1 : 0;
    int moved = nodes_[x].child[dir ^ 1];
    if (!is_splay_root(p)) {
      nodes_[g].child[nodes_[g].child[1] == p ? 1 : 0] = x;
    }
    nodes_[x].parent = g;
    nodes_[x].child[dir ^ 1] = p;
    nodes_[p].parent = x;
    nodes_[p].child[dir] = moved;
    if (moved) nodes_[moved].parent = p;
    pull(p);
    pull(x);
  }

  void splay(int x) {
    path_.clear();
    for (int y = x;; y = nodes_[y].parent) {
      path_.push_back(y);
      if (is_splay_root(y)) break;
    }
    for (auto it = path_.rbegin(); it != path_.rend(); ++it) push(*it);
    while (!is_splay_root(x)) {
      int p = nodes_[x].parent;
      if (!is_splay_root(p)) {
        int g = nodes_[p].parent;
        bool zigzig = (nodes_[g].child[1] == p) == (nodes_[p].child[1] == x);
        rotate(zigzig ? p : x);
      }
      rotate(x);
    }
  }

  void access(int x) {
    int last = 0;
    for (int y = x; y != 0; y = nodes_[y].parent) {
      splay(y);
      nodes_[y].child[1] = last;
      pull(y);
      last = y;
    }
    splay(x);
  }

  void make_root(int x) {
    access(x);
    apply_flip(x);
  }

  int find_root(int x) {
    access(x);
    int r = x;
    while (true) {
      push(r);
      if (nodes_[r].child[0] == 0) break;
      r = nodes_[r].child[0];
    }
    splay(r);
    return r;
  }

  // a and b must be adjacent in the represented forest.
  void cut(int a, int b) {
    make_root(a);
    access(b);
    // b's left subtree is exactly a
    nodes_[b].child[0] = 0;
    nodes_[a].parent = 0;
    pull(b);
  }

  int vertices_;
  int exposed_ = 0;
  std::vector<Node> nodes_;
  std::vector<int> path_;
};

}  // namespace loadbal::detail
