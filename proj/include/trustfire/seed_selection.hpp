#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "trustfire/attack.hpp"
#include "trustfire/graph.hpp"

namespace trustfire {

enum class SeedStrategyKind { Random, Degree, BadRank, Closeness, Greedy };

// Which way distances run for closeness. Forward follows compromise
// propagation (trustee -> dependent); Reverse follows trustee links
// (user -> its trustees).
enum class ClosenessDirection { Forward, Reverse };

struct ClosenessOptions {
  std::size_t sample_count = 256;
  std::uint64_t rng_seed = 0;
  std::size_t exact_threshold = 10000;  // exact all-pairs BFS up to this many nodes
  ClosenessDirection direction = ClosenessDirection::Forward;
};

struct SeedStrategy {
  SeedStrategyKind kind = SeedStrategyKind::Degree;
  std::size_t n_s = 1000;
  double alpha = 0.9;  // BadRank restart probability
  std::uint64_t rng_seed = 0;
  std::size_t sample_count = 256;  // closeness pivots
  std::size_t closeness_exact_threshold = 10000;
  ClosenessDirection closeness_direction = ClosenessDirection::Forward;
  std::size_t greedy_budget = 1'000'000;  // max model runs for Greedy
};

// Stationary distribution of the restart walk: with probability alpha jump
// to a uniform node, otherwise step to a uniform trustee of the current node
// (nodes without trustees always jump). Power iteration until the L1 change
// drops below tol or max_iter sweeps.
std::vector<double> badrank_scores(const TrusteeNetwork& gt, double alpha, double tol = 1e-10,
                                   std::size_t max_iter = 1000);

// Harmonic closeness sum_v 1/d(u, v) by one BFS per node.
std::vector<double> harmonic_closeness_exact(const TrusteeNetwork& gt,
                                             ClosenessDirection direction = ClosenessDirection::Forward);

// Exact below options.exact_threshold nodes, otherwise estimated from
// uniformly sampled pivots: BFS against the direction from each pivot and
// rescale the partial harmonic sums by (N-1)/pivots.
std::vector<double> closeness_scores(const TrusteeNetwork& gt, const ClosenessOptions& options);

// The n highest-scoring nodes, ties by ascending id.
std::vector<NodeId> top_by_score(std::span<const double> scores, std::size_t n);

// min(n_s, |V_T|) distinct seeds. Greedy requires `attack` and delegates to
// greedy_seeds.
std::vector<NodeId> select_seeds(const TrusteeNetwork& gt, const SeedStrategy& strategy,
                                 const AttackConfig* attack = nullptr);

// Adds, one at a time, the node whose addition maximizes run_attack's n_c.
// Throws ResourceError when n_s * |V_T| exceeds `budget` model runs.
std::vector<NodeId> greedy_seeds(const TrusteeNetwork& gt, std::size_t n_s, const AttackConfig& config,
                                 std::size_t budget = 1'000'000);

SeedStrategyKind parse_seed_strategy(std::string_view name);  // random, degree, badrank, closeness, greedy
std::string_view to_string(SeedStrategyKind kind);
ClosenessDirection parse_closeness_direction(std::string_view name);  // forward, reverse
std::string_view to_string(ClosenessDirection direction);

}  // namespace trustfire
