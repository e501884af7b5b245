#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "trustfire/attack.hpp"
#include "trustfire/graph.hpp"
#include "trustfire/random.hpp"

// Ground-truth routines used to validate the probabilistic model. None of
// them call into the model's probability arithmetic.
namespace trustfire::oracles {

// Direct subset enumeration of P(at least k events). Throws ResourceError for
// more than 20 events.
double enumerate_tail(std::span<const double> probs, std::size_t k);

// Least fixpoint of: seeds are compromised; an adopter with at least k
// compromised trustees is compromised. Returns the sorted compromised set.
std::vector<NodeId> deterministic_cascade(const TrusteeNetwork& gt, std::span<const NodeId> seeds, std::size_t k);

struct MonteCarloResult {
  double mean_compromised = 0.0;
  double std_error = 0.0;
  double mean_messages = 0.0;
};

// Simulates the literal attack with boolean compromise flags: each trial on
// an uncompromised user draws an independent spoof per uncompromised
// trustee, compromises the user on k codes, counts a message to every
// uncompromised trustee when fewer than k of the other trustees are
// compromised, then each compromised user recovers with probability p_r.
// Orderings come from the model's builder applied to the boolean state.
MonteCarloResult monte_carlo_attack(const TrusteeNetwork& gt, std::span<const NodeId> seeds,
                                    const AttackConfig& config, std::size_t trials, std::uint64_t rng_seed);

struct SetCoverInstance {
  std::size_t ground_set_size = 0;                 // a
  std::vector<std::vector<std::size_t>> subsets;  // element ids < a
  std::size_t k = 1;                               // copies per subset
  std::vector<std::size_t> cover_choice;           // indices of the t chosen subsets
};

struct ReductionNetwork {
  TrusteeNetwork network;
  std::vector<NodeId> seeds;
  std::size_t target = 0;  // l = t*a^2*k^2 + t*k + a
};

// Node layout: the k copies of subset j are j*k .. j*k+k-1; element i follows
// the copies; then a^2*k^2 dummies per subset in subset order.
ReductionNetwork gen_set_cover_instance(const SetCoverInstance& instance);

// True iff the chosen subsets cover every element.
bool chosen_subsets_cover(const SetCoverInstance& instance);

// Random instance generators for property and acceptance tests.

// `nodes` users; each node adopts with probability adopt_rate and then
// appoints up to max_trustees distinct random trustees.
TrusteeNetwork random_trustee_network(std::size_t nodes, std::size_t max_trustees, double adopt_rate, Rng& rng);

// Forest-shaped trustee network (the undirected skeleton is acyclic): every
// node is a trustee of at most one user. Seeds are drawn among the leaves.
struct ForestInstance {
  TrusteeNetwork network;
  std::vector<NodeId> seeds;
};
ForestInstance random_forest_network(std::size_t max_nodes, std::size_t k, Rng& rng);

// Forest in which every trustee of an adopter has a compromise trajectory
// fixed by the ordering alone: seed leaves, inert leaves, adopters whose k or
// more trustees are all seeds, and adopters with fewer than k trustees. A
// user's trials in different iterations then share no random event, so the
// per-iteration aggregation is exact and not only the per-trial tail.
ForestInstance random_independent_forest(std::size_t max_nodes, std::size_t k, Rng& rng);

SetCoverInstance random_set_cover_instance(std::size_t max_elements, std::size_t max_subsets, std::size_t max_k,
                                           Rng& rng);

}  // namespace trustfire::oracles
