#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

#include "test_support.hpp"
#include "trustfire/errors.hpp"
#include "trustfire/oracles.hpp"
#include "trustfire/random.hpp"

using namespace trustfire;
using namespace trustfire::oracles;

namespace {

// Repeated full passes until nothing changes; a second, naive fixpoint.
std::vector<NodeId> cascade_by_passes(const TrusteeNetwork& gt, const std::vector<NodeId>& seeds, std::size_t k) {
  std::vector<char> in(gt.node_count(), 0);
  for (NodeId s : seeds) in[s] = 1;
  bool changed = true;
  while (changed) {
    changed = false;
    for (NodeId u = 0; u < gt.node_count(); ++u) {
      if (in[u] || !gt.is_adopter(u)) continue;
      std::size_t hits = 0;
      for (NodeId v : gt.trustees(u)) hits += in[v] ? 1 : 0;
      if (hits >= k) in[u] = changed = 1;
    }
  }
  std::vector<NodeId> out;
  for (NodeId u = 0; u < gt.node_count(); ++u)
    if (in[u]) out.push_back(u);
  return out;
}

SetCoverInstance two_element_instance(std::vector<std::vector<std::size_t>> subsets) {
  SetCoverInstance instance;
  instance.ground_set_size = 2;
  instance.subsets = std::move(subsets);
  instance.k = 2;
  instance.cover_choice = {0, 1};
  return instance;
}

}  // namespace

TEST(EnumerateTail, WorkedValuesAndLimit) {
  EXPECT_NEAR(enumerate_tail(std::vector<double>{1, 1, 0.05}, 3), 0.05, 1e-15);
  for (double p : {0.0, 0.13, 0.5, 1.0}) EXPECT_NEAR(enumerate_tail(std::vector<double>{p}, 1), p, 1e-15);
  EXPECT_THROW(enumerate_tail(std::vector<double>(21, 0.5), 3), ResourceError);
}

TEST(EnumerateTail, AgreesWithDpUpToLengthTen) {
  Rng rng(51);
  for (int trial = 0; trial < 2000; ++trial) {
    std::vector<double> probs(rng.below(11));
    for (auto& p : probs) p = rng.uniform();
    for (std::size_t k = 0; k <= probs.size() + 1; ++k) {
      EXPECT_NEAR(enumerate_tail(probs, k), tail_at_least_k(probs, k), 1e-12);
    }
  }
}

TEST(Cascade, SixUser) {
  const auto gt = test_support::six_user_network();
  EXPECT_EQ(deterministic_cascade(gt, std::vector<NodeId>{0, 1, 2}, 3), (std::vector<NodeId>{0, 1, 2, 5}));
  EXPECT_TRUE(deterministic_cascade(gt, std::vector<NodeId>{}, 3).empty());
}

TEST(Cascade, MatchesNaiveFixpointAndIgnoresLabels) {
  Rng rng(52);
  for (int trial = 0; trial < 40; ++trial) {
    const auto gt = random_trustee_network(5 + rng.below(100), 1 + rng.below(5), 0.8, rng);
    std::vector<NodeId> seeds;
    for (NodeId u = 0; u < gt.node_count(); ++u)
      if (rng.bernoulli(0.2)) seeds.push_back(u);
    const std::size_t k = 1 + rng.below(3);
    const auto expected = cascade_by_passes(gt, seeds, k);
    EXPECT_EQ(deterministic_cascade(gt, seeds, k), expected);

    // Reversed labels visit the worklist in a different order.
    const auto n = static_cast<NodeId>(gt.node_count());
    std::vector<TrustEdge> flipped;
    for (const auto& e : gt.edges()) flipped.push_back({n - 1 - e.trustee, n - 1 - e.user});
    std::vector<NodeId> flipped_seeds;
    for (NodeId s : seeds) flipped_seeds.push_back(n - 1 - s);
    auto back = deterministic_cascade(TrusteeNetwork::from_edges(n, flipped), flipped_seeds, k);
    for (auto& u : back) u = n - 1 - u;
    std::sort(back.begin(), back.end());
    EXPECT_EQ(back, expected);
  }
}

TEST(SetCoverReduction, CoveringInstance) {
  const auto instance = two_element_instance({{0}, {1}});
  const auto reduction = gen_set_cover_instance(instance);
  EXPECT_EQ(reduction.network.node_count(), 38u);
  EXPECT_EQ(reduction.seeds.size(), 4u);
  EXPECT_EQ(reduction.target, 38u);
  EXPECT_TRUE(chosen_subsets_cover(instance));
  EXPECT_EQ(deterministic_cascade(reduction.network, reduction.seeds, 2).size(), 38u);
}

TEST(SetCoverReduction, NonCoveringInstanceMissesElement) {
  const auto instance = two_element_instance({{0}, {0}});
  const auto reduction = gen_set_cover_instance(instance);
  EXPECT_FALSE(chosen_subsets_cover(instance));
  const auto cascade = deterministic_cascade(reduction.network, reduction.seeds, 2);
  EXPECT_LT(cascade.size(), reduction.target);
  // Element x2 sits right after the four subset copies.
  EXPECT_FALSE(std::binary_search(cascade.begin(), cascade.end(), NodeId{5}));
  EXPECT_TRUE(std::binary_search(cascade.begin(), cascade.end(), NodeId{4}));
}

TEST(SetCoverReduction, IffOverRandomInstances) {
  Rng rng(53);
  std::size_t covering = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const auto instance = random_set_cover_instance(4, 4, 3, rng);
    const auto reduction = gen_set_cover_instance(instance);
    const bool covers = chosen_subsets_cover(instance);
    covering += covers ? 1 : 0;
    const auto cascade = deterministic_cascade(reduction.network, reduction.seeds, instance.k);
    EXPECT_EQ(cascade.size() == reduction.target, covers);
  }
  EXPECT_GT(covering, 20u);
  EXPECT_LT(covering, 180u);
}

TEST(SetCoverReduction, InvalidInstances) {
  auto instance = two_element_instance({{0}, {1}});
  instance.cover_choice = {5};
  EXPECT_THROW(gen_set_cover_instance(instance), ValidationError);
  instance = two_element_instance({{0}, {7}});
  EXPECT_THROW(gen_set_cover_instance(instance), ValidationError);
  instance = two_element_instance({{0}, {}});
  EXPECT_THROW(gen_set_cover_instance(instance), ValidationError);
}

TEST(MonteCarlo, NoRandomnessReproducesTheCascade) {
  Rng rng(54);
  for (int trial = 0; trial < 10; ++trial) {
    const auto gt = random_trustee_network(10 + rng.below(60), 4, 0.8, rng);
    std::vector<NodeId> seeds;
    for (NodeId u = 0; u < gt.node_count(); ++u)
      if (rng.bernoulli(0.2)) seeds.push_back(u);
    AttackConfig config;
    config.k = 2;
    config.p_s = 0.0;
    config.iterations = gt.node_count();
    for (auto ordering : {OrderingKind::Random, OrderingKind::Gradient}) {
      config.ordering = ordering;
      const auto mc = monte_carlo_attack(gt, seeds, config, 50, 3);
      EXPECT_EQ(mc.mean_compromised, static_cast<double>(deterministic_cascade(gt, seeds, 2).size()));
      EXPECT_EQ(mc.std_error, 0.0);
    }
    // Fewer iterations: still trial-independent and equal to the model.
    config.iterations = 2;
    const auto mc = monte_carlo_attack(gt, seeds, config, 20, 4);
    EXPECT_EQ(mc.std_error, 0.0);
    EXPECT_EQ(mc.mean_compromised, run_attack(gt, seeds, config).final_nc);
  }
}

TEST(MonteCarlo, SixUserAgreesWithModel) {
  AttackConfig config;
  config.iterations = 1;
  config.ordering = OrderingKind::Fixed;
  config.fixed_order = {5, 4, 3};
  const auto mc = monte_carlo_attack(test_support::six_user_network(), std::vector<NodeId>{0, 1, 2}, config, 100000, 61);
  EXPECT_LE(std::abs(mc.mean_compromised - 4.05), 3 * mc.std_error);
  EXPECT_NEAR(mc.mean_messages, 1.0, 1e-12);  // message to u4 is certain
}

TEST(MonteCarlo, IndependentForestAgreesWithModel) {
  Rng rng(55);
  const auto forest = random_independent_forest(40, 3, rng);
  AttackConfig config;
  config.iterations = 3;
  config.ordering = OrderingKind::Random;
  config.rng_seed = 8;
  const auto model = run_attack(forest.network, forest.seeds, config);
  const auto mc = monte_carlo_attack(forest.network, forest.seeds, config, 100000, 62);
  EXPECT_GT(mc.std_error, 0.0);
  EXPECT_LE(std::abs(model.final_nc - mc.mean_compromised), 3 * mc.std_error);
  EXPECT_NEAR(model.total_messages, mc.mean_messages, 0.02 * model.total_messages + 0.05);
}

// On forests with deeper chains a user's trials in successive iterations
// share its trustees' state, so only the first iteration is exact; later
// ones overestimate.
TEST(MonteCarlo, GeneralForestsExactForOneIterationBiasedUpwardAfter) {
  Rng rng(56);
  for (int i = 0; i < 5; ++i) {
    const auto forest = random_forest_network(50, 3, rng);
    AttackConfig config;
    config.ordering = OrderingKind::Random;
    config.rng_seed = 100 + i;
    config.iterations = 1;
    auto mc = monte_carlo_attack(forest.network, forest.seeds, config, 100000, 200 + i);
    EXPECT_LE(std::abs(run_attack(forest.network, forest.seeds, config).final_nc - mc.mean_compromised),
              3 * mc.std_error + 1e-12);
    config.iterations = 3;
    mc = monte_carlo_attack(forest.network, forest.seeds, config, 100000, 300 + i);
    EXPECT_GE(run_attack(forest.network, forest.seeds, config).final_nc, mc.mean_compromised - 3 * mc.std_error);
  }
}

TEST(MonteCarlo, IndependentOfWorkerCount) {
  Rng rng(57);
  const auto gt = random_trustee_network(40, 4, 0.8, rng);
  const std::vector<NodeId> seeds = {1, 2, 3, 4};
  AttackConfig config;
  config.p_r = 0.1;
  MonteCarloResult one, many;
  {
    test_support::ScopedWorkers w(1);
    one = monte_carlo_attack(gt, seeds, config, 2000, 5);
  }
  {
    test_support::ScopedWorkers w(5);
    many = monte_carlo_attack(gt, seeds, config, 2000, 5);
  }
  EXPECT_EQ(one.mean_compromised, many.mean_compromised);
  EXPECT_EQ(one.std_error, many.std_error);
  EXPECT_EQ(one.mean_messages, many.mean_messages);
  EXPECT_THROW(monte_carlo_attack(gt, seeds, config, 0, 5), ValidationError);
}

TEST(Generators, ForestsAreForests) {
  Rng rng(58);
  for (int i = 0; i < 30; ++i) {
    for (const auto& forest : {random_forest_network(50, 3, rng), random_independent_forest(50, 3, rng)}) {
      const auto& gt = forest.network;
      EXPECT_LE(gt.node_count(), 50u);
      // Each node is a trustee of at most one user, and following those
      // links never revisits a node.
      for (NodeId u = 0; u < gt.node_count(); ++u) {
        EXPECT_LE(gt.out_degree(u), 1u);
        NodeId at = u;
        std::size_t steps = 0;
        while (gt.out_degree(at) == 1 && steps <= gt.node_count()) {
          at = gt.dependents(at)[0];
          ++steps;
        }
        EXPECT_LE(steps, gt.node_count());
      }
      for (NodeId s : forest.seeds) EXPECT_FALSE(gt.is_adopter(s));
    }
  }
}
