#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "trustfire/graph.hpp"

namespace trustfire {

enum class OrderingKind { Random, Gradient, Fixed };

struct AttackConfig {
  std::size_t k = 3;           // recovery threshold
  std::size_t iterations = 10; // n
  double p_s = 0.05;           // spoofing probability
  double p_r = 0.0;            // recovery probability
  double c_I = 0.0;            // seed acquisition cost
  double c_e = 1.0;            // cost per spoofing message
  OrderingKind ordering = OrderingKind::Gradient;
  std::uint64_t rng_seed = 0;

  // OrderingKind::Fixed: these nodes first, in the given order, then every
  // remaining node by ascending id. Reused every iteration.
  std::vector<NodeId> fixed_order;

  // Per-edge spoofing probabilities keyed by spoof_key(trustee, user);
  // edges without an entry use p_s.
  std::unordered_map<std::uint64_t, double> spoof_overrides;

  static constexpr std::uint64_t spoof_key(NodeId trustee, NodeId user) noexcept {
    return (std::uint64_t{trustee} << 32) | user;
  }
  double spoof_probability(NodeId trustee, NodeId user) const {
    if (spoof_overrides.empty()) return p_s;
    auto it = spoof_overrides.find(spoof_key(trustee, user));
    return it == spoof_overrides.end() ? p_s : it->second;
  }

  // Throws ValidationError on k == 0, probabilities outside [0,1] or
  // negative costs.
  void validate() const;
};

// p_c and p_a for every node of the trustee network.
struct ProbState {
  std::vector<double> compromise;  // p_c of the latest iteration
  std::vector<double> aggregate;   // p_a after the latest iteration
};

struct AttackReport {
  std::vector<double> per_iteration_nc;        // sum of p_a after each iteration
  std::vector<double> per_iteration_messages;  // expected spoofing messages per iteration
  double final_nc = 0.0;
  double total_messages = 0.0;
  double total_cost = 0.0;  // c_I + c_e * total_messages
  ProbState final_state;
};

// P(at least k of the independent events with the given probabilities
// occur), by the Poisson-binomial recurrence in O(|probs| * k). k == 0 gives
// 1, k > |probs| gives 0. Throws DomainError for a probability outside [0,1].
double tail_at_least_k(std::span<const double> probs, std::size_t k);

// P(at most k-1 of the events occur) = 1 - tail_at_least_k.
double fewer_than_k(std::span<const double> probs, std::size_t k);

// Probability that the attack trial on u yields trustee v's code, given the
// probability `pa` that v is compromised when u is attacked.
constexpr double code_probability(double pa, double spoof) noexcept { return pa + spoof * (1.0 - pa); }

// Expected spoofing messages in one trial on u. `uncompromised[i]` is the
// probability that u's i-th trustee is uncompromised at trial time and
// `pa_user` is u's aggregate probability before the trial.
double spoof_cost_user(std::span<const double> uncompromised, double pa_user, std::size_t k);

// Ignition: p_a = p_c = 1 on seeds, 0 elsewhere. Throws ValidationError on
// duplicate or out-of-range seeds.
ProbState initial_state(const TrusteeNetwork& gt, std::span<const NodeId> seeds);

// One attack iteration over `ordering` (a permutation of all nodes), updating
// `state` in place, so trustees already visited contribute their new p_a.
// Returns the expected number of spoofing messages. Throws DomainError if
// `ordering` is not a permutation.
double iteration_step(const TrusteeNetwork& gt, ProbState& state, std::span<const NodeId> ordering,
                      const AttackConfig& config);

// Nodes by descending seeded uniform score, ties by ascending id.
std::vector<NodeId> build_ordering_random(const TrusteeNetwork& gt, std::uint64_t rng_seed);

// Nodes by descending predicted gain q_a(u) - p_a(u), ties by ascending id.
std::vector<NodeId> build_ordering_gradient(const TrusteeNetwork& gt, std::span<const double> aggregate,
                                            const AttackConfig& config);

std::vector<NodeId> build_ordering_fixed(const TrusteeNetwork& gt, std::span<const NodeId> prefix);

// Ordering for iteration `iteration` (1-based) from the state after the
// previous iteration.
std::vector<NodeId> build_ordering(const TrusteeNetwork& gt, std::span<const double> aggregate,
                                   const AttackConfig& config, std::size_t iteration);

AttackReport run_attack(const TrusteeNetwork& gt, std::span<const NodeId> seeds, const AttackConfig& config);

OrderingKind parse_ordering(std::string_view name);  // "random", "gradient", "fixed"
std::string_view to_string(OrderingKind kind);

}  // namespace trustfire
