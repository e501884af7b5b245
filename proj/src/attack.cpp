#include "trustfire/attack.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "trustfire/errors.hpp"
#include "trustfire/random.hpp"

namespace trustfire {

namespace {

constexpr double kDriftTolerance = 1e-12;

// Clamps floating drift back into [0,1]; anything larger is a logic error.
double unit_interval(double x) {
  if (x >= 0.0 && x <= 1.0) return x;
  if (x < 0.0 && x > -kDriftTolerance) return 0.0;
  if (x > 1.0 && x < 1.0 + kDriftTolerance) return 1.0;
  throw std::logic_error("probability drifted outside [0,1]: " + std::to_string(x));
}

bool is_probability(double p) { return p >= 0.0 && p <= 1.0; }

// Small-buffer scratch for the distribution over 0..k successes.
class CountDistribution {
 public:
  explicit CountDistribution(std::size_t k) : size_(k + 1) {
    if (size_ > inline_.size()) heap_.assign(size_, 0.0);
    data()[0] = 1.0;
  }

  double* data() { return heap_.empty() ? inline_.data() : heap_.data(); }

  // Slots 0..k-1 hold P(exactly j successes); slot k absorbs P(>= k).
  void add(double p) {
    double* d = data();
    const std::size_t k = size_ - 1;
    const double q = 1.0 - p;
    d[k] += d[k - 1] * p;
    for (std::size_t j = k - 1; j > 0; --j) d[j] = d[j] * q + d[j - 1] * p;
    d[0] *= q;
  }

  double at_least_k() { return data()[size_ - 1]; }

  double below_k() {
    double* d = data();
    double sum = 0.0;
    for (std::size_t j = 0; j + 1 < size_; ++j) sum += d[j];
    return sum;
  }

 private:
  std::size_t size_;
  std::array<double, 16> inline_{};
  std::vector<double> heap_;
};

void require_probabilities(std::span<const double> probs) {
  for (double p : probs) {
    if (!is_probability(p)) throw DomainError("probability " + std::to_string(p) + " is outside [0,1]");
  }
}

std::vector<NodeId> sort_by_score_desc(std::vector<std::pair<double, NodeId>>& scored) {
  std::sort(scored.begin(), scored.end(), [](const auto& a, const auto& b) {
    return a.first != b.first ? a.first > b.first : a.second < b.second;
  });
  std::vector<NodeId> order;
  order.reserve(scored.size());
  for (const auto& s : scored) order.push_back(s.second);
  return order;
}

}  // namespace

void AttackConfig::validate() const {
  if (k == 0) throw ValidationError("recovery threshold k must be at least 1");
  if (!is_probability(p_s)) throw ValidationError("p_s must lie in [0,1]");
  if (!is_probability(p_r)) throw ValidationError("p_r must lie in [0,1]");
  if (!(c_I >= 0.0) || !(c_e >= 0.0)) throw ValidationError("costs c_I and c_e must be non-negative");
  for (const auto& [key, p] : spoof_overrides) {
    if (!is_probability(p)) throw ValidationError("per-edge spoofing probability outside [0,1]");
  }
}

double tail_at_least_k(std::span<const double> probs, std::size_t k) {
  require_probabilities(probs);
  if (k == 0) return 1.0;
  if (k > probs.size()) return 0.0;
  CountDistribution dist(k);
  for (double p : probs) dist.add(p);
  return unit_interval(dist.at_least_k());
}

double fewer_than_k(std::span<const double> probs, std::size_t k) {
  require_probabilities(probs);
  if (k == 0) return 0.0;
  if (k > probs.size()) return 1.0;
  CountDistribution dist(k);
  for (double p : probs) dist.add(p);
  return unit_interval(dist.below_k());
}

double spoof_cost_user(std::span<const double> uncompromised, double pa_user, std::size_t k) {
  require_probabilities(uncompromised);
  if (uncompromised.empty() || pa_user == 1.0) return 0.0;
  const std::size_t m = uncompromised.size();
  double sum = 0.0;
  std::vector<double> others;
  others.reserve(m - 1);
  for (std::size_t i = 0; i < m; ++i) {
    if (uncompromised[i] == 0.0) continue;
    others.clear();
    for (std::size_t j = 0; j < m; ++j)
      if (j != i) others.push_back(1.0 - uncompromised[j]);
    double r = 1.0;
    if (k <= others.size()) {
      CountDistribution dist(k);
      for (double p : others) dist.add(p);
      r = unit_interval(dist.below_k());
    }
    sum += uncompromised[i] * r;
  }
  return (1.0 - pa_user) * sum;
}

ProbState initial_state(const TrusteeNetwork& gt, std::span<const NodeId> seeds) {
  ProbState state;
  state.compromise.assign(gt.node_count(), 0.0);
  state.aggregate.assign(gt.node_count(), 0.0);
  for (NodeId s : seeds) {
    if (s >= gt.node_count()) {
      throw ValidationError("seed " + std::to_string(s) + " is not a node of the trustee network");
    }
    if (state.aggregate[s] == 1.0) throw ValidationError("duplicate seed " + std::to_string(s));
    state.aggregate[s] = 1.0;
    state.compromise[s] = 1.0;
  }
  return state;
}

double iteration_step(const TrusteeNetwork& gt, ProbState& state, std::span<const NodeId> ordering,
                      const AttackConfig& config) {
  const std::size_t n = gt.node_count();
  if (ordering.size() != n) throw DomainError("ordering must list every node exactly once");
  {
    std::vector<char> seen(n, 0);
    for (NodeId u : ordering) {
      if (u >= n || seen[u]) throw DomainError("ordering is not a permutation of the nodes");
      seen[u] = 1;
    }
  }
  if (state.aggregate.size() != n || state.compromise.size() != n) {
    throw DomainError("state does not match the trustee network size");
  }

  auto& pa = state.aggregate;
  std::vector<double> codes;
  std::vector<double> uncompromised;
  double messages = 0.0;
  for (NodeId u : ordering) {
    const auto trustees = gt.trustees(u);
    codes.clear();
    uncompromised.clear();
    // pa is updated in place, so trustees visited earlier this iteration
    // already carry their new aggregate probability.
    for (NodeId v : trustees) {
      codes.push_back(code_probability(pa[v], config.spoof_probability(v, u)));
      uncompromised.push_back(1.0 - pa[v]);
    }
    const double previous = pa[u];
    const double pc = tail_at_least_k(codes, config.k);
    messages += spoof_cost_user(uncompromised, previous, config.k);
    state.compromise[u] = pc;
    pa[u] = unit_interval((1.0 - config.p_r) * (previous + (1.0 - previous) * pc));
  }
  return messages;
}

std::vector<NodeId> build_ordering_random(const TrusteeNetwork& gt, std::uint64_t rng_seed) {
  Rng rng(rng_seed);
  std::vector<std::pair<double, NodeId>> scored;
  scored.reserve(gt.node_count());
  for (NodeId u = 0; u < gt.node_count(); ++u) scored.emplace_back(rng.uniform(), u);
  return sort_by_score_desc(scored);
}

std::vector<NodeId> build_ordering_gradient(const TrusteeNetwork& gt, std::span<const double> aggregate,
                                            const AttackConfig& config) {
  if (aggregate.size() != gt.node_count()) throw DomainError("state does not match the trustee network size");
  std::vector<std::pair<double, NodeId>> scored;
  scored.reserve(gt.node_count());
  std::vector<double> codes;
  for (NodeId u = 0; u < gt.node_count(); ++u) {
    codes.clear();
    for (NodeId v : gt.trustees(u)) codes.push_back(code_probability(aggregate[v], config.spoof_probability(v, u)));
    const double predicted_trial = tail_at_least_k(codes, config.k);
    // q_a - p_a with q_a = 1 - (1 - p_a)(1 - p_u), written without the
    // cancellation so equal gaps compare equal.
    scored.emplace_back((1.0 - aggregate[u]) * predicted_trial, u);
  }
  return sort_by_score_desc(scored);
}

std::vector<NodeId> build_ordering_fixed(const TrusteeNetwork& gt, std::span<const NodeId> prefix) {
  std::vector<char> placed(gt.node_count(), 0);
  std::vector<NodeId> order;
  order.reserve(gt.node_count());
  for (NodeId u : prefix) {
    if (u >= gt.node_count() || placed[u]) throw DomainError("fixed ordering lists an invalid or repeated node");
    placed[u] = 1;
    order.push_back(u);
  }
  for (NodeId u = 0; u < gt.node_count(); ++u)
    if (!placed[u]) order.push_back(u);
  return order;
}

std::vector<NodeId> build_ordering(const TrusteeNetwork& gt, std::span<const double> aggregate,
                                   const AttackConfig& config, std::size_t iteration) {
  switch (config.ordering) {
    case OrderingKind::Random: return build_ordering_random(gt, mix_seed(config.rng_seed, iteration));
    case OrderingKind::Gradient: return build_ordering_gradient(gt, aggregate, config);
    case OrderingKind::Fixed: return build_ordering_fixed(gt, config.fixed_order);
  }
  throw std::logic_error("unhandled ordering kind");
}

AttackReport run_attack(const TrusteeNetwork& gt, std::span<const NodeId> seeds, const AttackConfig& config) {
  config.validate();
  AttackReport report;
  ProbState state = initial_state(gt, seeds);
  report.per_iteration_nc.reserve(config.iterations);
  report.per_iteration_messages.reserve(config.iterations);
  for (std::size_t t = 1; t <= config.iterations; ++t) {
    const auto ordering = build_ordering(gt, state.aggregate, config, t);
    const double messages = iteration_step(gt, state, ordering, config);
    report.per_iteration_messages.push_back(messages);
    report.per_iteration_nc.push_back(std::accumulate(state.aggregate.begin(), state.aggregate.end(), 0.0));
    report.total_messages += messages;
  }
  report.final_nc = std::accumulate(state.aggregate.begin(), state.aggregate.end(), 0.0);
  report.total_cost = config.c_I + config.c_e * report.total_messages;
  report.final_state = std::move(state);
  return report;
}

OrderingKind parse_ordering(std::string_view name) {
  if (name == "random") return OrderingKind::Random;
  if (name == "gradient") return OrderingKind::Gradient;
  if (name == "fixed") return OrderingKind::Fixed;
  throw ValidationError("unknown ordering '" + std::string(name) + "' (expected random, gradient or fixed)");
}

std::string_view to_string(OrderingKind kind) {
  switch (kind) {
    case OrderingKind::Random: return "random";
    case OrderingKind::Gradient: return "gradient";
    case OrderingKind::Fixed: return "fixed";
  }
  return "?";
}

}  // namespace trustfire
