#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "loadbal/errors.hpp"
#include "loadbal/generators.hpp"
#include "loadbal/matching.hpp"
#include "loadbal/oracle.hpp"
#include "loadbal/solvers.hpp"
#include "test_support.hpp"

using namespace loadbal;
using testsupport::make;

namespace {

const std::vector<double> kNorms{1.0, 2.0, 3.0, kInfNorm};

}  // namespace

TEST_SUITE("oracle") {

TEST_CASE("chain optimum") {
  Instance g = testsupport::chain();
  CHECK(opt_minmax_unweighted(g) == 2);
  auto opt = opt_allnorm_enum(g, kNorms);
  CHECK(opt.optimum[0] == doctest::Approx(3.0));
  CHECK(opt.optimum[1] == doctest::Approx(std::sqrt(5.0)));
  CHECK(opt.optimum[3] == doctest::Approx(2.0));
  CHECK(opt.canonical.server_of == std::vector<int>{0, 0, 1});
  CHECK(opt.canonical_is_all_norm);
  CHECK(opt.enumerated == 2);
}

TEST_CASE("star and weighted optima") {
  CHECK(opt_minmax_unweighted(generate_instance({"star", 4}, 1)) == 4);
  Instance pair = make({2, 1}, 1, {{0}, {0}});
  CHECK(opt_allnorm_enum(pair, kNorms).optimum[3] == doctest::Approx(3.0));
  CHECK(opt_split(pair) == 3);
  CHECK(opt_split(make({2}, 2, {{0, 1}})) == 1);
  CHECK(opt_split(make({4, 4}, 2, {{0, 1}, {1}})) == 4);
  CHECK(opt_split(make({3, 1}, 2, {{0, 1}, {1}})) == 2);
}

TEST_CASE("enumeration limits and infeasibility") {
  Instance g = make({1, 1, 1}, 3, {{0, 1, 2}, {0, 1, 2}, {0, 1, 2}});
  CHECK(assignment_count(g, 100) == 27);
  CHECK(assignment_count(g, 10) == 11);
  CHECK_THROWS_AS(opt_allnorm_enum(g, kNorms, 10), InputError);
  Instance isolated = Instance::build({{0, 1}, {1, 1}}, {2}, {{0, 2}});
  CHECK_THROWS_AS(opt_allnorm_enum(isolated, kNorms), InfeasibleError);
}

TEST_CASE("cost-reducing paths") {
  Instance g = make({1, 1, 1}, 2, {{0, 1}, {0, 1}, {0, 1}});
  Assignment bad{{0, 0, 0}};
  auto path = find_cost_reducing_path(g, bad);
  REQUIRE(path.has_value());
  CHECK(path->servers.front() == 0);
  CHECK(path->servers.back() == 1);
  Assignment better = apply_cost_reducing_path(bad, *path);
  CHECK(better.valid(g));
  CHECK(better.loads(g).norm(2.0) < bad.loads(g).norm(2.0));
  CHECK(better.loads(g).max() == 2);
  CHECK(!find_cost_reducing_path(g, better).has_value());

  // two hops: c0 only on s0, c1 bridges s0 and s1, c2 bridges s1 and s2
  Instance hop = make({1, 1, 1, 1}, 3, {{0}, {0, 1}, {1, 2}, {0}});
  Assignment a{{0, 0, 1, 0}};
  auto p = find_cost_reducing_path(hop, a);
  REQUIRE(p.has_value());
  CHECK(p->servers.front() == 0);
  CHECK(apply_cost_reducing_path(a, *p).loads(hop).max() == 2);
}

TEST_CASE("no cost-reducing path at the optimum") {
  std::mt19937_64 rng(19);
  testsupport::RandomShape shape;
  shape.max_clients = 8;
  shape.max_servers = 4;
  shape.max_assignments = 20000;
  for (int trial = 0; trial < 100; ++trial) {
    Instance g = testsupport::random_instance(rng, shape);
    auto opt = opt_allnorm_enum(g, kNorms);
    CHECK(!find_cost_reducing_path(g, opt.canonical).has_value());
    CHECK(opt.canonical_is_all_norm);
    CHECK(opt.optimum[0] == doctest::Approx(static_cast<double>(g.num_clients())));
    CHECK(static_cast<Mult>(opt.optimum[3]) == opt_minmax_unweighted(g));
    CHECK(opt_split(g) == opt_minmax_unweighted(g));
  }
}

TEST_CASE("verify_no_short_aug_paths witness") {
  Instance g = make({1, 1}, 2, {{0}, {0, 1}});
  CapMatching x(g, CapacityProfile::uniform(g, 1, 1));
  x.add(g, *g.find_edge(1, 0), 1);
  auto w = verify_no_short_aug_paths(g, x, 3);
  REQUIRE(w.has_value());
  CHECK(w->length() == 3);
  CHECK(w->clients == std::vector<int>{0, 1});
  CHECK(w->servers == std::vector<int>{0, 1});
  CHECK(!verify_no_short_aug_paths(g, x, 2).has_value());
  CHECK(testsupport::brute_force_shortest_aug(g, x, 10) == 3);

  Instance star = generate_instance({"star", 3}, 1);
  CapMatching y(star, CapacityProfile::uniform(star, 1, 1));
  y.add(star, 0, 1);
  CHECK(!verify_no_short_aug_paths(star, y, 99).has_value());
}

TEST_CASE("Berge check agrees with max flow") {
  std::mt19937_64 rng(23);
  testsupport::RandomShape shape;
  shape.max_clients = 10;
  shape.max_servers = 6;
  shape.p = 0.3;
  for (int trial = 0; trial < 200; ++trial) {
    Instance g = testsupport::random_instance(rng, shape);
    const Mult tau = 1 + static_cast<Mult>(trial % 3);
    CapacityProfile profile = CapacityProfile::uniform(g, 1, tau);
    const int k = 2 * static_cast<int>(rng() % 3) + 1;
    CapMatching x = eliminate_short_paths(g, profile, k);
    const bool maximum = x.total() == max_matching_size(g, profile);
    CHECK(maximum == !verify_no_short_aug_paths(g, x, 2 * g.n() + 1).has_value());
    auto brute = testsupport::brute_force_shortest_aug(g, x, 2 * g.n() + 1);
    auto found = verify_no_short_aug_paths(g, x, 2 * g.n() + 1);
    CHECK(brute.has_value() == found.has_value());
    if (brute && found) CHECK(*brute == found->length());
  }
}

TEST_CASE("residual distance") {
  Instance g = testsupport::chain();
  CapacityProfile profile = CapacityProfile::uniform(g, 1, 2);
  CapMatching empty(g, profile);
  CHECK(residual_distance(g, empty) == 3);
  CapMatching full = eliminate_short_paths(g, profile, 9);
  REQUIRE(is_client_perfect(g, full));
  CHECK(!residual_distance(g, full).has_value());
}

TEST_CASE("ceil_log_alpha") {
  CHECK(ceil_log_alpha(2.0, 1) == 0);
  CHECK(ceil_log_alpha(2.0, 8) == 3);
  CHECK(ceil_log_alpha(2.0, 9) == 4);
  CHECK(ceil_log_alpha(3.0, 9) == 2);
  CHECK(ceil_log_alpha(1.5, 2) == 2);
}

TEST_CASE("expansion check examples") {
  Instance g = testsupport::chain();
  std::vector<Mult> kappa{1, 1, 1};
  std::vector<Mult> tau{2, 1};
  CapacityProfile doubled = CapacityProfile::uniform(g, 1, 0);
  doubled.server_cap = {4, 2};
  CapMatching x(g, doubled);
  CHECK(!verify_expansion_lemma(g, kappa, tau, 2.0, x).has_value());
  x.add(g, *g.find_edge(1, 1), 1);
  CHECK(!verify_expansion_lemma(g, kappa, tau, 2.0, x).has_value());

  Instance star = generate_instance({"star", 3}, 1);
  std::vector<Mult> one{1};
  CapMatching y(star, CapacityProfile::uniform(star, 1, 2));
  CHECK_THROWS_AS(verify_expansion_lemma(star, std::vector<Mult>{1, 1, 1}, one, 2.0, y), PreconditionError);
}

TEST_CASE("expansion check on random partial matchings") {
  std::mt19937_64 rng(29);
  testsupport::RandomShape shape;
  shape.max_clients = 10;
  shape.max_servers = 6;
  int checked = 0;
  for (int trial = 0; trial < 200; ++trial) {
    Instance g = testsupport::random_instance(rng, shape);
    std::vector<Mult> kappa(g.num_clients(), 1);
    std::vector<Mult> tau(g.num_servers(), 1 + static_cast<Mult>(rng() % 3));
    CapacityProfile base = CapacityProfile::uniform(g, 1, tau[0]);
    if (!client_perfect_exists(g, base)) continue;
    CapacityProfile doubled = CapacityProfile::uniform(g, 1, 2 * tau[0]);
    CapMatching x = eliminate_short_paths(g, doubled, 2 * static_cast<int>(rng() % 2) + 1);
    CHECK(!verify_expansion_lemma(g, kappa, tau, 2.0, x).has_value());
    ++checked;
  }
  CHECK(checked > 50);
}

TEST_CASE("levels of the chain") {
  Instance g = testsupport::chain();
  LevelMap lv = levels(g);
  CHECK(lv.server_level == std::vector<Load>{2, 1});
  CHECK(lv.client_level == std::vector<Load>{2, 2, 1});
  CHECK(nodown_violations(g, lv).empty());

  LevelMap broken = lv;
  broken.server_level = {3, 1};
  broken.client_level = {3, 3, 1};
  auto v = nodown_violations(g, broken);
  REQUIRE(v.size() == 1);
  CHECK(v[0].client == 1);
  CHECK(v[0].server == 1);
}

TEST_CASE("levels and saturation on random instances") {
  std::mt19937_64 rng(31);
  testsupport::RandomShape shape;
  shape.max_clients = 9;
  shape.max_servers = 5;
  shape.max_assignments = 50000;
  for (int trial = 0; trial < 60; ++trial) {
    Instance g = testsupport::random_instance(rng, shape);
    LevelMap lv = levels(g);
    CHECK(nodown_violations(g, lv).empty());
    auto res = solve_unweighted(g);
    CHECK(saturation_violations(g, lv, res.schedule).empty());
  }
}

TEST_CASE("backup optimum") {
  Instance g = make({1, 1}, 2, {{0, 1}, {0, 1}});
  auto opt = opt_backup_enum(g, 2);
  CHECK(opt.linf == 2);
  CHECK(opt.enumerated == 1);
  CHECK(opt.witness.servers_of[0] == std::vector<int>{0, 1});
  CHECK(opt_backup_enum(make({1, 1, 1}, 3, {{0, 1, 2}, {0, 1, 2}, {0, 1, 2}}), 2).linf == 2);
  CHECK_THROWS_AS(opt_backup_enum(make({1}, 1, {{0}}), 2), InfeasibleError);
}

}  // TEST_SUITE
