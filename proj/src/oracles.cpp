#include "trustfire/oracles.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <deque>

#include "trustfire/errors.hpp"
#include "trustfire/parallel.hpp"

namespace trustfire::oracles {

double enumerate_tail(std::span<const double> probs, std::size_t k) {
  if (probs.size() > 20) throw ResourceError("subset enumeration is limited to 20 events");
  const std::size_t m = probs.size();
  double total = 0.0;
  for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
    if (static_cast<std::size_t>(std::popcount(mask)) < k) continue;
    double term = 1.0;
    for (std::size_t i = 0; i < m; ++i) term *= (mask >> i) & 1u ? probs[i] : 1.0 - probs[i];
    total += term;
  }
  return total;
}

std::vector<NodeId> deterministic_cascade(const TrusteeNetwork& gt, std::span<const NodeId> seeds, std::size_t k) {
  const std::size_t n = gt.node_count();
  std::vector<char> compromised(n, 0);
  std::vector<std::size_t> hits(n, 0);
  std::deque<NodeId> work;
  for (NodeId s : seeds) {
    if (s >= n) throw ValidationError("seed " + std::to_string(s) + " is not a node of the trustee network");
    if (!compromised[s]) {
      compromised[s] = 1;
      work.push_back(s);
    }
  }
  while (!work.empty()) {
    const NodeId v = work.front();
    work.pop_front();
    for (NodeId u : gt.dependents(v)) {
      if (compromised[u]) continue;
      if (++hits[u] >= k) {
        compromised[u] = 1;
        work.push_back(u);
      }
    }
  }
  std::vector<NodeId> out;
  for (NodeId u = 0; u < n; ++u)
    if (compromised[u]) out.push_back(u);
  return out;
}

MonteCarloResult monte_carlo_attack(const TrusteeNetwork& gt, std::span<const NodeId> seeds,
                                    const AttackConfig& config, std::size_t trials, std::uint64_t rng_seed) {
  if (trials == 0) throw ValidationError("Monte Carlo needs at least one trial");
  config.validate();
  const std::size_t n = gt.node_count();
  const auto initial = initial_state(gt, seeds);  // validates seeds

  // Orderings that do not depend on the state are shared by all trials.
  std::vector<std::vector<NodeId>> shared_orders;
  if (config.ordering != OrderingKind::Gradient) {
    for (std::size_t t = 1; t <= config.iterations; ++t)
      shared_orders.push_back(build_ordering(gt, initial.aggregate, config, t));
  }

  std::vector<double> compromised_count(trials);
  std::vector<double> message_count(trials);
  parallel_for(trials, [&](std::size_t trial) {
    Rng rng(rng_seed, trial);
    std::vector<char> flag(n, 0);
    for (NodeId s : seeds) flag[s] = 1;
    std::vector<double> as_prob;
    std::vector<NodeId> gradient_order;
    double messages = 0.0;
    for (std::size_t t = 1; t <= config.iterations; ++t) {
      const std::vector<NodeId>* order = nullptr;
      if (config.ordering == OrderingKind::Gradient) {
        as_prob.assign(flag.begin(), flag.end());
        gradient_order = build_ordering_gradient(gt, as_prob, config);
        order = &gradient_order;
      } else {
        order = &shared_orders[t - 1];
      }
      for (NodeId u : *order) {
        if (!flag[u]) {
          std::size_t held = 0;
          for (NodeId v : gt.trustees(u)) held += flag[v] ? 1 : 0;
          std::size_t codes = held;
          for (NodeId v : gt.trustees(u)) {
            if (flag[v]) continue;
            if (held < config.k) messages += 1.0;
            if (rng.bernoulli(config.spoof_probability(v, u))) ++codes;
          }
          if (codes >= config.k) flag[u] = 1;
        }
        if (flag[u] && config.p_r > 0.0 && rng.bernoulli(config.p_r)) flag[u] = 0;
      }
    }
    std::size_t count = 0;
    for (char f : flag) count += f ? 1 : 0;
    compromised_count[trial] = static_cast<double>(count);
    message_count[trial] = messages;
  });

  MonteCarloResult result;
  double sum = 0.0, sum_messages = 0.0;
  for (std::size_t i = 0; i < trials; ++i) {
    sum += compromised_count[i];
    sum_messages += message_count[i];
  }
  result.mean_compromised = sum / static_cast<double>(trials);
  result.mean_messages = sum_messages / static_cast<double>(trials);
  if (trials > 1) {
    double sq = 0.0;
    for (double c : compromised_count) sq += (c - result.mean_compromised) * (c - result.mean_compromised);
    const double variance = sq / static_cast<double>(trials - 1);
    result.std_error = std::sqrt(variance / static_cast<double>(trials));
  }
  return result;
}

ReductionNetwork gen_set_cover_instance(const SetCoverInstance& instance) {
  const std::size_t a = instance.ground_set_size;
  const std::size_t k = instance.k;
  const std::size_t s = instance.subsets.size();
  if (k == 0) throw ValidationError("set-cover reduction needs k >= 1");
  for (const auto& subset : instance.subsets) {
    if (subset.empty()) throw ValidationError("set-cover subsets must be non-empty");
    for (auto x : subset)
      if (x >= a) throw ValidationError("subset element " + std::to_string(x) + " is outside the ground set");
  }
  std::vector<char> picked(s, 0);
  for (auto j : instance.cover_choice) {
    if (j >= s || picked[j]) throw ValidationError("cover choice lists an invalid or repeated subset index");
    picked[j] = 1;
  }

  const std::size_t dummies_per_subset = a * a * k * k;
  const std::size_t element_base = s * k;
  const std::size_t dummy_base = element_base + a;
  const std::size_t node_count = dummy_base + s * dummies_per_subset;
  if (node_count > kMaxNodeId) throw ResourceError("set-cover reduction too large");

  auto copy = [k](std::size_t j, std::size_t c) { return static_cast<NodeId>(j * k + c); };
  std::vector<TrustEdge> edges;
  for (std::size_t j = 0; j < s; ++j) {
    std::vector<std::size_t> members = instance.subsets[j];
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
    for (auto x : members)
      for (std::size_t c = 0; c < k; ++c) edges.push_back({copy(j, c), static_cast<NodeId>(element_base + x)});
    for (std::size_t d = 0; d < dummies_per_subset; ++d) {
      const auto dummy = static_cast<NodeId>(dummy_base + j * dummies_per_subset + d);
      for (std::size_t c = 0; c < k; ++c) edges.push_back({copy(j, c), dummy});
    }
  }

  ReductionNetwork out;
  out.network = TrusteeNetwork::from_edges(node_count, edges);
  for (auto j : instance.cover_choice)
    for (std::size_t c = 0; c < k; ++c) out.seeds.push_back(copy(j, c));
  const std::size_t t = instance.cover_choice.size();
  out.target = t * dummies_per_subset + t * k + a;
  return out;
}

bool chosen_subsets_cover(const SetCoverInstance& instance) {
  std::vector<char> covered(instance.ground_set_size, 0);
  for (auto j : instance.cover_choice)
    for (auto x : instance.subsets.at(j)) covered.at(x) = 1;
  return std::all_of(covered.begin(), covered.end(), [](char c) { return c != 0; });
}

TrusteeNetwork random_trustee_network(std::size_t nodes, std::size_t max_trustees, double adopt_rate, Rng& rng) {
  std::vector<TrustEdge> edges;
  if (nodes >= 2 && max_trustees > 0) {
    for (NodeId u = 0; u < nodes; ++u) {
      if (!rng.bernoulli(adopt_rate)) continue;
      const auto want = std::min<std::size_t>(1 + rng.below(max_trustees), nodes - 1);
      std::vector<NodeId> chosen;
      while (chosen.size() < want) {
        const auto v = static_cast<NodeId>(rng.below(nodes));
        if (v == u || std::find(chosen.begin(), chosen.end(), v) != chosen.end()) continue;
        chosen.push_back(v);
      }
      for (NodeId v : chosen) edges.push_back({v, u});
    }
  }
  return TrusteeNetwork::from_edges(nodes, edges);
}

ForestInstance random_forest_network(std::size_t max_nodes, std::size_t k, Rng& rng) {
  // Grow trees top-down: an expanded node either appoints k..k+2 fresh
  // trustees (its children) or stays a leaf. Children are new nodes, so the
  // skeleton is acyclic and every node has at most one dependent.
  std::vector<TrustEdge> edges;
  std::vector<NodeId> leaves;
  std::deque<std::pair<NodeId, bool>> frontier;  // (node, is_root)
  std::size_t next = 0;
  while (next < max_nodes) {
    frontier.emplace_back(static_cast<NodeId>(next++), true);
    while (!frontier.empty()) {
      const auto [u, is_root] = frontier.front();
      frontier.pop_front();
      const std::size_t children = k + rng.below(3);
      const bool expand = next + children <= max_nodes && rng.bernoulli(is_root ? 1.0 : 0.45);
      if (!expand) {
        leaves.push_back(u);
        continue;
      }
      for (std::size_t c = 0; c < children; ++c) {
        const auto child = static_cast<NodeId>(next++);
        edges.push_back({child, u});
        frontier.emplace_back(child, false);
      }
    }
  }
  ForestInstance out;
  out.network = TrusteeNetwork::from_edges(next, edges);
  for (NodeId leaf : leaves)
    if (rng.bernoulli(0.6)) out.seeds.push_back(leaf);
  std::sort(out.seeds.begin(), out.seeds.end());
  return out;
}

ForestInstance random_independent_forest(std::size_t max_nodes, std::size_t k, Rng& rng) {
  std::vector<TrustEdge> edges;
  std::vector<NodeId> seeds;
  std::size_t next = 0;
  auto fresh = [&] { return static_cast<NodeId>(next++); };
  auto leaf_under = [&](NodeId user, bool seed) {
    const NodeId leaf = fresh();
    edges.push_back({leaf, user});
    if (seed) seeds.push_back(leaf);
  };
  // Worst case for one target: (k + 2) trustees, each saturated with k + 1 seeds.
  const std::size_t worst = 1 + (k + 2) * (k + 2);
  while (next + worst <= max_nodes) {
    const NodeId target = fresh();
    const std::size_t trustees = k + rng.below(3);
    for (std::size_t i = 0; i < trustees; ++i) {
      const double kind = rng.uniform();
      if (kind < 0.5) {
        leaf_under(target, true);
      } else if (kind < 0.75) {
        leaf_under(target, false);
      } else if (kind < 0.9) {
        const NodeId saturated = fresh();
        edges.push_back({saturated, target});
        const std::size_t count = k + rng.below(2);
        for (std::size_t c = 0; c < count; ++c) leaf_under(saturated, true);
      } else {
        const NodeId blocked = fresh();
        edges.push_back({blocked, target});
        const std::size_t count = k > 1 ? 1 + rng.below(k - 1) : 0;
        for (std::size_t c = 0; c < count; ++c) leaf_under(blocked, rng.bernoulli(0.5));
      }
    }
  }
  ForestInstance out;
  out.network = TrusteeNetwork::from_edges(next, edges);
  std::sort(seeds.begin(), seeds.end());
  out.seeds = std::move(seeds);
  return out;
}

SetCoverInstance random_set_cover_instance(std::size_t max_elements, std::size_t max_subsets, std::size_t max_k,
                                           Rng& rng) {
  SetCoverInstance inst;
  inst.ground_set_size = 1 + rng.below(max_elements);
  inst.k = 1 + rng.below(max_k);
  const std::size_t subset_count = 1 + rng.below(max_subsets);
  for (std::size_t j = 0; j < subset_count; ++j) {
    std::vector<std::size_t> subset;
    while (subset.empty()) {
      for (std::size_t x = 0; x < inst.ground_set_size; ++x)
        if (rng.bernoulli(0.5)) subset.push_back(x);
    }
    inst.subsets.push_back(std::move(subset));
  }
  for (std::size_t j = 0; j < subset_count; ++j)
    if (rng.bernoulli(0.5)) inst.cover_choice.push_back(j);
  if (inst.cover_choice.empty()) inst.cover_choice.push_back(rng.below(subset_count));
  return inst;
}

}  // namespace trustfire::oracles
