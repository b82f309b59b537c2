#include <doctest.h>

#include <cmath>
#include <random>

#include "loadbal/dist_sim.hpp"
#include "loadbal/errors.hpp"
#include "loadbal/generators.hpp"
#include "loadbal/solvers.hpp"
#include "test_support.hpp"

using namespace loadbal;

namespace {

ModelSpec congest(int c = 32) { return {Model::kCongest, c}; }
ModelSpec local() { return {Model::kLocal, 32}; }

}  // namespace

TEST_SUITE("dist-sim") {

TEST_CASE("star(15) charge under CONGEST") {
  Instance g = generate_instance({"star", 15}, 1);
  REQUIRE(g.n() == 16);
  auto res = run_simulation(g, AlgorithmId::kCongestUnweighted, congest(), 1);
  CHECK(res.trace.charged_rounds == 98260);
  CHECK(round_budget(AlgorithmId::kCongestUnweighted, 16, congest()) == 98260);
  CHECK(verify_message_budget(res.trace, congest()));
}

TEST_CASE("LOCAL charge is the largest single step") {
  Instance g = generate_instance({"star", 15}, 1);
  auto res = run_simulation(g, AlgorithmId::kCongestUnweighted, local(), 1);
  CHECK(res.trace.charged_rounds == 17 * 17 * 4);
  CHECK(res.trace.charged_rounds == round_budget(AlgorithmId::kCongestUnweighted, 16, local()));
}

TEST_CASE("single edge announces one message") {
  Instance g = generate_instance({"star", 1}, 1);
  auto res = run_simulation(g, AlgorithmId::kCongestUnweighted, congest(), 1);
  REQUIRE(res.trace.messages.size() == 1);
  CHECK(res.trace.messages[0].round == res.trace.charged_rounds + 1);
  CHECK(res.trace.messages[0].bits == 1);
  CHECK(res.trace.messages[0].edge == 0);
}

TEST_CASE("verify_message_budget on hand traces") {
  SimTrace t;
  t.n = 1024;
  t.messages.push_back({1, 0, 100});
  CHECK(verify_message_budget(t, congest(32)));
  CHECK(!verify_message_budget(t, congest(4)));
  CHECK(verify_message_budget(t, local()));
  // two messages on one edge in one round add up
  t.messages.push_back({1, 0, 300});
  CHECK(!verify_message_budget(t, congest(32)));
  t.messages.back().round = 2;
  CHECK(verify_message_budget(t, congest(32)));
  SimTrace empty;
  CHECK(verify_message_budget(empty, congest(1)));
}

TEST_CASE("round_budget closed forms") {
  CHECK(round_budget(AlgorithmId::kCongestUnweighted, 2, congest()) == 250);
  CHECK(round_budget(AlgorithmId::kCongestWeighted, 2, congest()) == 250);
  CHECK(round_budget(AlgorithmId::kCongestBackup, 2, congest()) == 250);
  CHECK(round_budget(AlgorithmId::kCongestUnweighted, 2, local()) == 25);
  // ntilde = 4: (4*2+1)^2 * 2 + (4+1)^2 * 1
  CHECK(round_budget(AlgorithmId::kLocalWeighted, 2, local(), 4) == 162 + 25);
  CHECK_THROWS_AS(round_budget(AlgorithmId::kLocalWeighted, 2, congest(), 4), InputError);
}

TEST_CASE("round_budget doubling ratio") {
  for (int L = 10; L <= 19; ++L) {
    const int n = 1 << L;
    double ratio = static_cast<double>(round_budget(AlgorithmId::kCongestUnweighted, 2 * n, congest())) /
                   static_cast<double>(round_budget(AlgorithmId::kCongestUnweighted, n, congest()));
    double expected = std::pow(static_cast<double>(L + 1) / L, 5.0);
    CHECK(std::abs(ratio - expected) <= 0.1 * expected);
  }
}

TEST_CASE("simulation matches the direct solvers") {
  std::mt19937_64 rng(13);
  testsupport::RandomShape shape;
  shape.max_clients = 12;
  shape.max_servers = 6;
  shape.max_weight = 6;
  shape.min_degree = 2;
  for (int trial = 0; trial < 30; ++trial) {
    Instance raw = testsupport::random_instance(rng, shape);
    Instance g = normalize_weights(raw);
    for (std::uint64_t seed : {1u, 7u}) {
      auto w = run_simulation(g, AlgorithmId::kCongestWeighted, congest(), seed);
      CHECK(w.assignment == solve_weighted_congest(g).assignment);
      CHECK(w.trace.charged_rounds == round_budget(AlgorithmId::kCongestWeighted, g.n(), congest()));
      CHECK(verify_message_budget(w.trace, congest()));

      auto l = run_simulation(g, AlgorithmId::kLocalWeighted, local(), seed);
      CHECK(l.assignment == solve_weighted_local(g).assignment);
      CHECK(l.trace.charged_rounds == round_budget(AlgorithmId::kLocalWeighted, g.n(), local(), l.n_expanded));

      auto b = run_simulation(g, AlgorithmId::kCongestBackup, congest(), seed, 2);
      CHECK(b.multi_assignment == solve_backup(g, 2).assignment);
      CHECK(b.trace.charged_rounds == round_budget(AlgorithmId::kCongestBackup, g.n(), congest()));
      CHECK(verify_message_budget(b.trace, congest()));
    }
    Instance unit = raw.with_weights(std::vector<Weight>(raw.num_clients(), 1));
    auto u = run_simulation(unit, AlgorithmId::kCongestUnweighted, congest(), 3);
    CHECK(u.assignment == solve_unweighted(unit).assignment);
    CHECK(u.trace.charged_rounds == round_budget(AlgorithmId::kCongestUnweighted, unit.n(), congest()));
  }
}

TEST_CASE("simulation argument errors") {
  Instance g = generate_instance({"star", 3}, 1);
  CHECK_THROWS_AS(run_simulation(g, AlgorithmId::kLocalWeighted, congest(), 1), InputError);
  CHECK_THROWS_AS(run_simulation(g, AlgorithmId::kCongestUnweighted, congest(0), 1), InputError);
  CHECK(parse_algorithm("congest-weighted") == AlgorithmId::kCongestWeighted);
  CHECK(parse_model("LOCAL") == Model::kLocal);
  CHECK_THROWS_AS(parse_algorithm("nope"), InputError);
}

TEST_CASE("bandwidth grows with n") {
  CHECK(congest(32).bandwidth_bits(2) == 32);
  CHECK(congest(32).bandwidth_bits(1) == 32);
  CHECK(congest(2).bandwidth_bits(1025) == 22);
}

}  // TEST_SUITE
