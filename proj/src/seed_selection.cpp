#include "trustfire/seed_selection.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "trustfire/errors.hpp"
#include "trustfire/parallel.hpp"
#include "trustfire/random.hpp"

namespace trustfire {

namespace {

constexpr std::uint32_t kUnreached = std::numeric_limits<std::uint32_t>::max();

std::span<const NodeId> step(const TrusteeNetwork& gt, NodeId u, ClosenessDirection direction) {
  return direction == ClosenessDirection::Forward ? gt.dependents(u) : gt.trustees(u);
}

ClosenessDirection opposite(ClosenessDirection d) {
  return d == ClosenessDirection::Forward ? ClosenessDirection::Reverse : ClosenessDirection::Forward;
}

// Fills dist with hop counts from source along `direction`; queue ends up
// holding the visit order (source first).
void bfs(const TrusteeNetwork& gt, NodeId source, ClosenessDirection direction, std::vector<std::uint32_t>& dist,
         std::vector<NodeId>& queue) {
  std::fill(dist.begin(), dist.end(), kUnreached);
  queue.clear();
  dist[source] = 0;
  queue.push_back(source);
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const NodeId u = queue[head];
    for (NodeId w : step(gt, u, direction)) {
      if (dist[w] != kUnreached) continue;
      dist[w] = dist[u] + 1;
      queue.push_back(w);
    }
  }
}

}  // namespace

std::vector<double> badrank_scores(const TrusteeNetwork& gt, double alpha, double tol, std::size_t max_iter) {
  const std::size_t n = gt.node_count();
  if (n == 0) throw DomainError("BadRank is undefined on an empty trustee network");
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw DomainError("restart probability alpha must lie in [0,1]");

  const double inv_n = 1.0 / static_cast<double>(n);
  std::vector<double> rank(n, inv_n);
  std::vector<double> next(n);
  for (std::size_t iter = 0; iter < max_iter; ++iter) {
    double jump = 0.0;
    for (NodeId u = 0; u < n; ++u) jump += gt.is_adopter(u) ? alpha * rank[u] : rank[u];
    const double base = jump * inv_n;
    for (NodeId v = 0; v < n; ++v) {
      double walk = 0.0;
      for (NodeId u : gt.dependents(v)) walk += rank[u] / static_cast<double>(gt.trustee_count(u));
      next[v] = base + (1.0 - alpha) * walk;
    }
    double change = 0.0;
    for (NodeId v = 0; v < n; ++v) change += std::abs(next[v] - rank[v]);
    rank.swap(next);
    if (change < tol) break;
  }
  const double total = std::accumulate(rank.begin(), rank.end(), 0.0);
  for (double& r : rank) r /= total;
  return rank;
}

std::vector<double> harmonic_closeness_exact(const TrusteeNetwork& gt, ClosenessDirection direction) {
  const std::size_t n = gt.node_count();
  std::vector<double> scores(n, 0.0);
  parallel_for(n, [&](std::size_t u) {
    // One scratch pair per call keeps bodies independent.
    thread_local std::vector<std::uint32_t> dist;
    thread_local std::vector<NodeId> queue;
    dist.resize(n);
    bfs(gt, static_cast<NodeId>(u), direction, dist, queue);
    double sum = 0.0;
    for (std::size_t i = 1; i < queue.size(); ++i) sum += 1.0 / dist[queue[i]];
    scores[u] = sum;
  });
  return scores;
}

std::vector<double> closeness_scores(const TrusteeNetwork& gt, const ClosenessOptions& options) {
  const std::size_t n = gt.node_count();
  if (options.sample_count == 0) throw DomainError("closeness sample_count must be at least 1");
  const std::size_t pivots = std::min(options.sample_count, n);
  if (n <= options.exact_threshold || pivots == n) return harmonic_closeness_exact(gt, options.direction);

  // Partial Fisher-Yates for distinct uniform pivots.
  std::vector<NodeId> nodes(n);
  std::iota(nodes.begin(), nodes.end(), NodeId{0});
  Rng rng(options.rng_seed);
  for (std::size_t i = 0; i < pivots; ++i) {
    const auto j = i + static_cast<std::size_t>(rng.below(n - i));
    std::swap(nodes[i], nodes[j]);
  }

  std::vector<double> partial(n, 0.0);
  std::vector<std::uint32_t> dist(n);
  std::vector<NodeId> queue;
  const auto back = opposite(options.direction);
  for (std::size_t i = 0; i < pivots; ++i) {
    // Distances *to* the pivot: walk against the scoring direction.
    bfs(gt, nodes[i], back, dist, queue);
    for (std::size_t q = 1; q < queue.size(); ++q) partial[queue[q]] += 1.0 / dist[queue[q]];
  }
  std::vector<char> is_pivot(n, 0);
  for (std::size_t i = 0; i < pivots; ++i) is_pivot[nodes[i]] = 1;
  std::vector<double> scores(n, 0.0);
  for (NodeId u = 0; u < n; ++u) {
    const std::size_t others = pivots - (is_pivot[u] ? 1 : 0);
    if (others > 0) scores[u] = partial[u] * static_cast<double>(n - 1) / static_cast<double>(others);
  }
  return scores;
}

std::vector<NodeId> top_by_score(std::span<const double> scores, std::size_t n) {
  std::vector<NodeId> ids(scores.size());
  std::iota(ids.begin(), ids.end(), NodeId{0});
  const auto take = std::min(n, ids.size());
  std::partial_sort(ids.begin(), ids.begin() + static_cast<std::ptrdiff_t>(take), ids.end(),
                    [&](NodeId a, NodeId b) { return scores[a] != scores[b] ? scores[a] > scores[b] : a < b; });
  ids.resize(take);
  return ids;
}

std::vector<NodeId> select_seeds(const TrusteeNetwork& gt, const SeedStrategy& strategy, const AttackConfig* attack) {
  if (!(strategy.alpha >= 0.0 && strategy.alpha <= 1.0)) throw ValidationError("alpha must lie in [0,1]");
  const std::size_t n = gt.node_count();
  if (strategy.n_s == 0 || n == 0) return {};
  std::vector<double> scores;
  switch (strategy.kind) {
    case SeedStrategyKind::Random: {
      Rng rng(strategy.rng_seed);
      scores.resize(n);
      for (auto& s : scores) s = rng.uniform();
      break;
    }
    case SeedStrategyKind::Degree:
      scores.resize(n);
      for (NodeId u = 0; u < n; ++u) scores[u] = static_cast<double>(gt.out_degree(u));
      break;
    case SeedStrategyKind::BadRank: scores = badrank_scores(gt, strategy.alpha); break;
    case SeedStrategyKind::Closeness:
      scores = closeness_scores(gt, {strategy.sample_count, strategy.rng_seed, strategy.closeness_exact_threshold,
                                     strategy.closeness_direction});
      break;
    case SeedStrategyKind::Greedy:
      if (attack == nullptr) throw ValidationError("greedy seed selection needs an attack configuration");
      return greedy_seeds(gt, strategy.n_s, *attack, strategy.greedy_budget);
  }
  return top_by_score(scores, strategy.n_s);
}

std::vector<NodeId> greedy_seeds(const TrusteeNetwork& gt, std::size_t n_s, const AttackConfig& config,
                                 std::size_t budget) {
  const std::size_t n = gt.node_count();
  n_s = std::min(n_s, n);
  if (n_s == 0) return {};
  if (n_s > budget / std::max<std::size_t>(n, 1)) {
    throw ResourceError("greedy seed selection needs about " + std::to_string(n_s) + " x " + std::to_string(n) +
                        " model runs, over the budget of " + std::to_string(budget));
  }
  config.validate();

  std::vector<NodeId> seeds;
  std::vector<char> taken(n, 0);
  std::vector<double> value(n);
  for (std::size_t round = 0; round < n_s; ++round) {
    parallel_for(n, [&](std::size_t c) {
      if (taken[c]) return;
      std::vector<NodeId> trial = seeds;
      trial.push_back(static_cast<NodeId>(c));
      value[c] = run_attack(gt, trial, config).final_nc;
    });
    NodeId best = 0;
    bool found = false;
    for (NodeId c = 0; c < n; ++c) {
      if (taken[c]) continue;
      if (!found || value[c] > value[best]) {
        best = c;
        found = true;
      }
    }
    taken[best] = 1;
    seeds.push_back(best);
  }
  return seeds;
}

SeedStrategyKind parse_seed_strategy(std::string_view name) {
  if (name == "random") return SeedStrategyKind::Random;
  if (name == "degree") return SeedStrategyKind::Degree;
  if (name == "badrank") return SeedStrategyKind::BadRank;
  if (name == "closeness") return SeedStrategyKind::Closeness;
  if (name == "greedy") return SeedStrategyKind::Greedy;
  throw ValidationError("unknown seed strategy '" + std::string(name) +
                        "' (expected random, degree, badrank, closeness or greedy)");
}

std::string_view to_string(SeedStrategyKind kind) {
  switch (kind) {
    case SeedStrategyKind::Random: return "random";
    case SeedStrategyKind::Degree: return "degree";
    case SeedStrategyKind::BadRank: return "badrank";
    case SeedStrategyKind::Closeness: return "closeness";
    case SeedStrategyKind::Greedy: return "greedy";
  }
  return "?";
}

ClosenessDirection parse_closeness_direction(std::string_view name) {
  if (name == "forward") return ClosenessDirection::Forward;
  if (name == "reverse") return ClosenessDirection::Reverse;
  throw ValidationError("unknown closeness direction '" + std::string(name) + "' (expected forward or reverse)");
}

std::string_view to_string(ClosenessDirection direction) {
  return direction == ClosenessDirection::Forward ? "forward" : "reverse";
}

}  // namespace trustfire
