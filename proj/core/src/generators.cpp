#include "loadbal/generators.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "loadbal/errors.hpp"

namespace loadbal {

namespace {

// Distribution helpers on raw engine output so sequences do not depend on
// the standard library's distribution implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  // uniform in [0, bound)
  std::uint64_t below(std::uint64_t bound) {
    std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
    std::uint64_t r;
    do {
      r = engine_();
    } while (r >= limit);
    return r % bound;
  }

 private:
  std::mt19937_64 engine_;
};

struct Builder {
  int nc = 0;
  int ns = 0;
  std::vector<Weight> weights;
  std::vector<std::vector<int>> adj;  // client -> servers

  Builder(int clients, int servers) : nc(clients), ns(servers), weights(clients, 1), adj(clients) {}

  void ensure_degree(Rng& rng) {
    for (int c = 0; c < nc; ++c) {
      if (adj[c].empty() && ns > 0) adj[c].push_back(static_cast<int>(rng.below(ns)));
    }
  }

  Instance finish() const {
    std::vector<ClientSpec> clients;
    for (int c = 0; c < nc; ++c) clients.push_back({c, weights[c]});
    std::vector<VertexId> servers;
    for (int s = 0; s < ns; ++s) servers.push_back(nc + s);
    std::vector<std::pair<VertexId, VertexId>> edges;
    for (int c = 0; c < nc; ++c) {
      for (int s : adj[c]) edges.emplace_back(c, nc + s);
    }
    return Instance::build(std::move(clients), std::move(servers), std::move(edges));
  }
};

void require(bool ok, const std::string& what) {
  if (!ok) throw InputError("generator parameter out of range: " + what);
}

// Each (client, server) pair independently with probability p, visiting the
// pair space with geometric skips so sparse graphs cost O(m).
void sample_bernoulli(Builder& b, double p, Rng& rng) {
  const std::int64_t total = static_cast<std::int64_t>(b.nc) * b.ns;
  if (p <= 0.0 || total == 0) return;
  if (p >= 1.0) {
    for (int c = 0; c < b.nc; ++c) {
      for (int s = 0; s < b.ns; ++s) b.adj[c].push_back(s);
    }
    return;
  }
  const double log_q = std::log1p(-p);
  std::int64_t pos = -1;
  while (true) {
    double u = 1.0 - rng.uniform();  // (0, 1]
    double skip = std::floor(std::log(u) / log_q);
    if (skip >= static_cast<double>(total)) break;
    pos += 1 + static_cast<std::int64_t>(skip);
    if (pos >= total) break;
    b.adj[pos / b.ns].push_back(static_cast<int>(pos % b.ns));
  }
}

}  // namespace

Instance generate_instance(const GeneratorSpec& spec, std::uint64_t seed) {
  Rng rng(seed);
  const std::string& name = spec.name;

  if (name == "star") {
    require(spec.clients >= 0, "clients >= 0");
    Builder b(spec.clients, 1);
    for (auto& a : b.adj) a.push_back(0);
    return b.finish();
  }
  if (name == "disjoint-perfect") {
    require(spec.k >= 0, "k >= 0");
    Builder b(spec.k, spec.k);
    for (int i = 0; i < spec.k; ++i) b.adj[i].push_back(i);
    return b.finish();
  }
  if (name == "random-bipartite" || name == "weighted-random") {
    require(spec.clients >= 0, "clients >= 0");
    require(spec.servers >= 1 || spec.clients == 0, "servers >= 1");
    require(spec.p >= 0.0 && spec.p <= 1.0, "p in [0, 1]");
    Builder b(spec.clients, spec.servers);
    sample_bernoulli(b, spec.p, rng);
    b.ensure_degree(rng);
    if (name == "weighted-random") {
      require(spec.max_weight >= 1, "max_weight >= 1");
      for (auto& w : b.weights) w = 1 + static_cast<Weight>(rng.below(spec.max_weight));
    }
    return b.finish();
  }
  if (name == "power-law-degrees") {
    require(spec.clients >= 0, "clients >= 0");
    require(spec.servers >= 1 || spec.clients == 0, "servers >= 1");
    require(spec.exponent > 1.0, "exponent > 1");
    Builder b(spec.clients, spec.servers);
    // P(d) proportional to d^-exponent on [1, servers]
    std::vector<double> cdf;
    double acc = 0.0;
    for (int d = 1; d <= spec.servers; ++d) {
      acc += std::pow(static_cast<double>(d), -spec.exponent);
      cdf.push_back(acc);
    }
    std::vector<int> pool(spec.servers);
    for (int c = 0; c < spec.clients; ++c) {
      double u = rng.uniform() * acc;
      int d = static_cast<int>(std::upper_bound(cdf.begin(), cdf.end(), u) - cdf.begin()) + 1;
      d = std::min(d, spec.servers);
      for (int s = 0; s < spec.servers; ++s) pool[s] = s;
      // partial Fisher-Yates for d distinct servers
      for (int i = 0; i < d; ++i) {
        int j = i + static_cast<int>(rng.below(spec.servers - i));
        std::swap(pool[i], pool[j]);
        b.adj[c].push_back(pool[i]);
      }
      std::sort(b.adj[c].begin(), b.adj[c].end());
    }
    b.ensure_degree(rng);
    return b.finish();
  }
  throw InputError("unknown generator '" + name +
                   "' (expected random-bipartite, star, disjoint-perfect, power-law-degrees, "
                   "weighted-random)");
}

}  // namespace loadbal
