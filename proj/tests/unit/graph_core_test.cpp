#include <doctest.h>

#include <bit>
#include <filesystem>
#include <fstream>
#include <random>

#include "loadbal/errors.hpp"
#include "loadbal/generators.hpp"
#include "loadbal/instance.hpp"
#include "loadbal/instance_io.hpp"
#include "test_support.hpp"

using namespace loadbal;
using testsupport::make;

TEST_SUITE("graph-core") {

TEST_CASE("build computes n, m and W") {
  Instance g = testsupport::chain();
  CHECK(g.n() == 5);
  CHECK(g.m() == 4);
  CHECK(g.max_weight() == 1);
  CHECK(g.num_clients() == 3);
  CHECK(g.num_servers() == 2);
}

TEST_CASE("edges come out in canonical order regardless of input order") {
  Instance a = Instance::build({{0, 1}, {1, 1}}, {2, 3}, {{1, 3}, {0, 2}, {1, 2}});
  Instance b = Instance::build({{1, 1}, {0, 1}}, {3, 2}, {{1, 2}, {1, 3}, {0, 2}});
  CHECK(a == b);
  CHECK(a.edge_client(0) == 0);
  CHECK(a.edge_server(1) == 0);
  CHECK(a.edge_server(2) == 1);
}

TEST_CASE("empty edge list is accepted") {
  Instance g = Instance::build({{0, 1}, {1, 1}}, {2}, {});
  CHECK(g.m() == 0);
  CHECK(g.client_degree(0) == 0);
}

TEST_CASE("build rejects malformed input") {
  CHECK_THROWS_AS(Instance::build({{0, 1}, {1, 1}}, {2}, {{0, 1}}), InputError);
  CHECK_THROWS_AS(Instance::build({{0, 1}}, {1}, {{0, 1}, {0, 1}}), InputError);
  CHECK_THROWS_AS(Instance::build({{0, 0}}, {1}, {{0, 1}}), InputError);
  CHECK_THROWS_AS(Instance::build({{0, 1}}, {1}, {{0, 7}}), InputError);
  CHECK_THROWS_AS(Instance::build({{0, 1}}, {2}, {}), InputError);
  CHECK_THROWS_AS(Instance::build({{0, 1}}, {0}, {}), InputError);
  CHECK_THROWS_WITH_AS(Instance::build({{0, 1}, {1, 1}}, {2}, {{0, 1}}),
                       doctest::Contains("client (first) and a server (second)"), InputError);
}

TEST_CASE("normalize_weights examples") {
  // (3, 5, 8), n = 10
  Instance a = make({3, 5, 8}, 7, {{0}, {1}, {2}});
  auto na = normalize_weights(a);
  CHECK(std::vector<Weight>(na.weights().begin(), na.weights().end()) == std::vector<Weight>{4, 8, 8});
  CHECK(std::vector<Weight>(na.original_weights().begin(), na.original_weights().end()) ==
        std::vector<Weight>{3, 5, 8});

  // single weight 7, n = 4
  Instance b = make({7}, 3, {{0, 1, 2}});
  CHECK(normalize_weights(b).weight(0) == 4);

  Instance c = testsupport::chain();
  CHECK(normalize_weights(c) == c);
}

TEST_CASE("normalize_weights agrees with the hand formula when n is a power of two") {
  struct Case {
    std::vector<Weight> w;
    int servers;
  };
  // n = 4, 8, 8, 16, 16
  std::vector<Case> cases = {{{7}, 3}, {{9, 2, 30}, 5}, {{1, 3, 6, 8, 100}, 3}, {{5, 17, 33, 1000}, 12}, {{16, 3}, 14}};
  for (const auto& tc : cases) {
    std::vector<std::vector<int>> adj(tc.w.size(), std::vector<int>{0});
    Instance g = make(tc.w, tc.servers, adj);
    const Weight n = g.n();
    REQUIRE(std::has_single_bit(static_cast<std::uint64_t>(n)));
    const Weight W = *std::max_element(tc.w.begin(), tc.w.end());
    auto norm = normalize_weights(g);
    for (std::size_t c = 0; c < tc.w.size(); ++c) {
      Weight expect = tc.w[c];
      if (W > n) expect = (tc.w[c] * n + W - 1) / W;
      expect = static_cast<Weight>(std::bit_ceil(static_cast<std::uint64_t>(expect)));
      CHECK(norm.weight(static_cast<int>(c)) == expect);
    }
  }
}

TEST_CASE("normalize_weights keeps the maximum at most n for any n") {
  // n = 10 with W = 12
  Instance g = make({12, 5, 1}, 7, {{0}, {1}, {2}});
  auto norm = normalize_weights(g);
  CHECK(norm.max_weight() <= g.n());
  CHECK(norm.weight(0) == 8);
}

TEST_CASE("normalize_weights properties on random instances") {
  std::mt19937_64 rng(11);
  testsupport::RandomShape shape;
  shape.max_clients = 12;
  shape.max_servers = 9;
  shape.max_weight = 1000;
  for (int trial = 0; trial < 300; ++trial) {
    Instance g = testsupport::random_instance(rng, shape);
    auto once = normalize_weights(g);
    auto twice = normalize_weights(once);
    CHECK(once == twice);
    CHECK(once.max_weight() <= g.n());
    for (int c = 0; c < g.num_clients(); ++c) {
      CHECK(is_power_of_two(once.weight(c)));
      for (int d = 0; d < g.num_clients(); ++d) {
        // order preserved up to a factor of two
        if (g.weight(c) <= g.weight(d)) CHECK(once.weight(c) <= 2 * once.weight(d));
      }
    }
  }
}

TEST_CASE("weight_classes examples") {
  Instance g = make({1, 1, 2, 4}, 2, {{0}, {1}, {0, 1}, {1}});
  auto classes = weight_classes(g);
  REQUIRE(classes.size() == 3);
  CHECK(classes[0].class_index == 0);
  CHECK(classes[0].clients.size() == 2);
  CHECK(classes[1].class_index == 1);
  CHECK(classes[1].clients.size() == 1);
  CHECK(classes[2].class_index == 2);
  CHECK(classes[2].clients.size() == 1);

  Instance unit = testsupport::chain();
  auto one = weight_classes(unit);
  REQUIRE(one.size() == 1);
  CHECK(one[0].clients.size() == 3);
  CHECK(one[0].edges.size() == 4);
  CHECK(one[0].servers.size() == 2);

  Instance pair = make({2, 2}, 1, {{0}, {0}});
  auto p = weight_classes(pair);
  REQUIRE(p.size() == 1);
  CHECK(p[0].class_index == 1);
  CHECK(p[0].clients.size() == 2);
  CHECK(p[0].servers == std::vector<int>{0});

  CHECK_THROWS_WITH_AS(weight_classes(make({3}, 1, {{0}})), doctest::Contains("normalize_weights"), InputError);
}

TEST_CASE("weight classes partition clients and edges") {
  std::mt19937_64 rng(5);
  testsupport::RandomShape shape;
  shape.max_clients = 15;
  shape.max_weight = 40;
  for (int trial = 0; trial < 200; ++trial) {
    Instance g = normalize_weights(testsupport::random_instance(rng, shape));
    std::vector<int> client_hits(g.num_clients(), 0), edge_hits(g.m(), 0);
    for (const auto& view : weight_classes(g)) {
      for (int c : view.clients) {
        ++client_hits[c];
        CHECK(g.weight(c) == view.class_weight());
      }
      for (int e : view.edges) ++edge_hits[e];
      auto sub = materialize(g, view, true);
      CHECK(sub.instance.m() == static_cast<int>(view.edges.size()));
      for (int e = 0; e < sub.instance.m(); ++e) {
        CHECK(sub.parent_client[sub.instance.edge_client(e)] == g.edge_client(sub.parent_edge[e]));
        CHECK(sub.parent_server[sub.instance.edge_server(e)] == g.edge_server(sub.parent_edge[e]));
      }
    }
    CHECK(std::all_of(client_hits.begin(), client_hits.end(), [](int h) { return h == 1; }));
    CHECK(std::all_of(edge_hits.begin(), edge_hits.end(), [](int h) { return h == 1; }));
  }
}

TEST_CASE("client_expand examples") {
  auto one = client_expand(make({3}, 2, {{0, 1}}));
  CHECK(one.expanded.num_clients() == 3);
  CHECK(one.expanded.m() == 6);
  CHECK(one.expanded.unit_weights());

  Instance unit = testsupport::chain();
  auto same = client_expand(unit);
  CHECK(same.expanded == unit);

  auto two = client_expand(make({2, 1}, 1, {{0}, {0}}));
  CHECK(two.expanded.num_clients() == 3);
  for (int c = 0; c < 3; ++c) CHECK(two.expanded.client_degree(c) == 1);
  CHECK(two.copy_of[0].client == 0);
  CHECK(two.copy_of[1].copy == 2);
  CHECK(two.copy_of[2].client == 1);

  CHECK_THROWS_AS(client_expand(make({5, 5}, 1, {{0}, {0}}), 9), InputError);
}

TEST_CASE("client_expand preserves weight and adjacency") {
  std::mt19937_64 rng(8);
  testsupport::RandomShape shape;
  shape.max_weight = 6;
  for (int trial = 0; trial < 100; ++trial) {
    Instance g = testsupport::random_instance(rng, shape);
    auto ex = client_expand(g);
    CHECK(ex.expanded.num_clients() == g.total_weight());
    std::int64_t edges = 0;
    for (int c = 0; c < g.num_clients(); ++c) edges += g.weight(c) * g.client_degree(c);
    CHECK(ex.expanded.m() == edges);
    for (int x = 0; x < ex.expanded.num_clients(); ++x) {
      int c = ex.copy_of[x].client;
      CHECK(ex.copy_of[x].copy >= 1);
      CHECK(ex.copy_of[x].copy <= g.weight(c));
      for (int s = 0; s < g.num_servers(); ++s) {
        CHECK(ex.expanded.find_edge(x, s).has_value() == g.find_edge(c, s).has_value());
      }
    }
  }
}

TEST_CASE("generators") {
  auto star = generate_instance({"star", 4}, 1);
  CHECK(star.num_clients() == 4);
  CHECK(star.num_servers() == 1);
  CHECK(star.m() == 4);

  GeneratorSpec dp;
  dp.name = "disjoint-perfect";
  dp.k = 3;
  auto d = generate_instance(dp, 1);
  CHECK(d.m() == 3);
  for (int i = 0; i < 3; ++i) CHECK(d.find_edge(i, i).has_value());

  GeneratorSpec rb{"random-bipartite", 50, 10, 0, 0.3};
  CHECK(generate_instance(rb, 7) == generate_instance(rb, 7));
  CHECK(!(generate_instance(rb, 7) == generate_instance(rb, 8)));

  CHECK_THROWS_WITH_AS(generate_instance({"nope"}, 1), doctest::Contains("unknown generator"), InputError);
  CHECK_THROWS_AS(generate_instance({"random-bipartite", 5, 3, 0, 1.5}, 1), InputError);
  CHECK_THROWS_AS(generate_instance({"random-bipartite", 5, 0, 0, 0.5}, 1), InputError);

  for (std::string name : {"random-bipartite", "power-law-degrees", "weighted-random"}) {
    GeneratorSpec s{name, 40, 7, 0, 0.02, 2.5, 9};
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      auto g = generate_instance(s, seed);
      for (int c = 0; c < g.num_clients(); ++c) CHECK(g.client_degree(c) >= 1);
      if (name == "weighted-random") CHECK(g.max_weight() <= 9);
    }
  }
}

TEST_CASE("instance file round trip and diagnostics") {
  auto dir = std::filesystem::temp_directory_path() / "loadbal_io_test";
  std::filesystem::create_directories(dir);
  auto star = generate_instance({"star", 4}, 1);
  write_instance(star, dir / "star.json");
  CHECK(read_instance(dir / "star.json") == star);
  CHECK(instance_to_json(star) ==
        "{\"clients\":[{\"id\":0,\"weight\":1},{\"id\":1,\"weight\":1},{\"id\":2,\"weight\":1},{\"id\":3,"
        "\"weight\":1}],\"servers\":[{\"id\":4}],\"edges\":[[0,4],[1,4],[2,4],[3,4]]}\n");

  CHECK_THROWS_WITH_AS(instance_from_json(R"({"clients":[{"id":0,"weight":0}],"servers":[{"id":1}],"edges":[[0,1]]})"),
                       doctest::Contains("weight"), InputError);
  CHECK_THROWS_WITH_AS(
      instance_from_json(R"({"clients":[{"id":0,"weight":1,"colour":3}],"servers":[{"id":1}],"edges":[]})"),
      doctest::Contains("colour"), InputError);
  CHECK_THROWS_WITH_AS(instance_from_json(R"({"clients":[],"servers":[],"edges":[],"extra":1})"),
                       doctest::Contains("extra"), InputError);
  CHECK_THROWS_WITH_AS(instance_from_json("{\"clients\":\n[{\"id\":0,}]}"), doctest::Contains("line 2"),
                       InputError);
  CHECK_THROWS_AS(read_instance(dir / "missing.json"), InputError);
  std::filesystem::remove_all(dir);
}

TEST_CASE("digest is stable across equal instances") {
  auto a = generate_instance({"random-bipartite", 20, 5, 0, 0.3}, 3);
  auto b = instance_from_json(instance_to_json(a));
  CHECK(instance_digest(a) == instance_digest(b));
  CHECK(instance_digest(a).size() == 16);
}

}  // TEST_SUITE
