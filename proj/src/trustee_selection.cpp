#include "trustfire/trustee_selection.hpp"

#include <algorithm>
#include <cmath>

#include "trustfire/errors.hpp"
#include "trustfire/parallel.hpp"
#include "trustfire/random.hpp"

namespace trustfire {

namespace {

void require_friends(const SocialNetwork& g, NodeId u, NodeId v) {
  if (u >= g.node_count() || v >= g.node_count() || !g.adjacent(u, v)) {
    throw DomainError("node " + std::to_string(v) + " is not a friend of " + std::to_string(u));
  }
}

// Visits every common neighbor of u and v by merging the sorted lists.
template <class Fn>
void for_each_common(const SocialNetwork& g, NodeId u, NodeId v, Fn&& fn) {
  auto a = g.neighbors(u);
  auto b = g.neighbors(v);
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] < b[j]) {
      ++i;
    } else if (b[j] < a[i]) {
      ++j;
    } else {
      fn(a[i]);
      ++i;
      ++j;
    }
  }
}

std::size_t common_count(const SocialNetwork& g, NodeId u, NodeId v) {
  std::size_t count = 0;
  for_each_common(g, u, v, [&](NodeId) { ++count; });
  return count;
}

double jaccard_unchecked(const SocialNetwork& g, NodeId u, NodeId v) {
  const auto common = common_count(g, u, v);
  const auto uni = g.degree(u) + g.degree(v) - common;
  return static_cast<double>(common) / static_cast<double>(uni);
}

double adamic_adar_unchecked(const SocialNetwork& g, NodeId u, NodeId v) {
  double sum = 0.0;
  for_each_common(g, u, v, [&](NodeId w) { sum += 1.0 / std::log(static_cast<double>(g.degree(w))); });
  return sum;
}

std::vector<NodeId> normalized_adopters(const SocialNetwork& g, std::span<const NodeId> adopters) {
  std::vector<NodeId> out(adopters.begin(), adopters.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  for (NodeId u : out) {
    if (u >= g.node_count()) {
      throw ValidationError("adopter " + std::to_string(u) + " is not a node of the social network");
    }
    if (g.degree(u) == 0) {
      throw ValidationError("adopter " + std::to_string(u) + " has no friends to appoint as trustees");
    }
  }
  return out;
}

void require_m(const TrusteeStrategy& strategy) {
  if (strategy.m == 0) throw ValidationError("trustees per user (m) must be at least 1");
}

TrusteeSelection assemble(const SocialNetwork& g, std::vector<SelectionLogEntry> log) {
  std::vector<TrustEdge> edges;
  edges.reserve(log.size());
  for (const auto& e : log) edges.push_back({e.trustee, e.user});
  return {TrusteeNetwork::from_edges(g.node_count(), edges), std::move(log)};
}

}  // namespace

double score_common_friends(const SocialNetwork& g, NodeId u, NodeId v) {
  require_friends(g, u, v);
  return static_cast<double>(common_count(g, u, v));
}

double score_jaccard(const SocialNetwork& g, NodeId u, NodeId v) {
  require_friends(g, u, v);
  return jaccard_unchecked(g, u, v);
}

double score_adamic_adar(const SocialNetwork& g, NodeId u, NodeId v) {
  require_friends(g, u, v);
  return adamic_adar_unchecked(g, u, v);
}

TrusteeSelection select_trustees_local(const SocialNetwork& g, std::span<const NodeId> adopters,
                                       const TrusteeStrategy& strategy) {
  require_m(strategy);
  if (strategy.kind == TrusteeStrategyKind::Degree) {
    throw ValidationError("T-Degree is a global strategy; use select_trustees_degree");
  }
  const auto users = normalized_adopters(g, adopters);

  std::vector<std::vector<SelectionLogEntry>> picks(users.size());
  parallel_for(users.size(), [&](std::size_t idx) {
    const NodeId u = users[idx];
    const auto friends = g.neighbors(u);
    std::vector<std::pair<double, NodeId>> scored;
    scored.reserve(friends.size());
    Rng rng(strategy.rng_seed, u);
    for (NodeId v : friends) {
      double s = 0.0;
      switch (strategy.kind) {
        case TrusteeStrategyKind::Random: s = rng.uniform(); break;
        case TrusteeStrategyKind::CommonFriends: s = static_cast<double>(common_count(g, u, v)); break;
        case TrusteeStrategyKind::Jaccard: s = jaccard_unchecked(g, u, v); break;
        case TrusteeStrategyKind::AdamicAdar: s = adamic_adar_unchecked(g, u, v); break;
        case TrusteeStrategyKind::Degree: break;
      }
      scored.emplace_back(s, v);
    }
    const auto take = std::min(strategy.m, scored.size());
    std::partial_sort(scored.begin(), scored.begin() + static_cast<std::ptrdiff_t>(take), scored.end(),
                      [](const auto& a, const auto& b) {
                        return a.first != b.first ? a.first > b.first : a.second < b.second;
                      });
    auto& out = picks[idx];
    out.reserve(take);
    for (std::size_t i = 0; i < take; ++i) out.push_back({u, scored[i].second, scored[i].first});
  });

  std::vector<SelectionLogEntry> log;
  for (auto& p : picks) log.insert(log.end(), p.begin(), p.end());
  return assemble(g, std::move(log));
}

TrusteeSelection select_trustees_degree(const SocialNetwork& g, std::span<const NodeId> adopters,
                                        const TrusteeStrategy& strategy) {
  require_m(strategy);
  if (strategy.kind != TrusteeStrategyKind::Degree) {
    throw ValidationError("select_trustees_degree requires the T-Degree strategy");
  }
  const auto users = normalized_adopters(g, adopters);
  std::vector<std::size_t> out_degree(g.node_count(), 0);
  std::vector<SelectionLogEntry> log;
  Rng rng(strategy.rng_seed);
  std::vector<char> chosen;

  for (NodeId u : users) {
    const auto friends = g.neighbors(u);
    chosen.assign(friends.size(), 0);
    const auto take = std::min(strategy.m, friends.size());
    for (std::size_t pick = 0; pick < take; ++pick) {
      std::size_t best = friends.size();
      std::size_t ties = 0;
      for (std::size_t i = 0; i < friends.size(); ++i) {
        if (chosen[i]) continue;
        if (best == friends.size() || out_degree[friends[i]] < out_degree[friends[best]]) {
          best = i;
          ties = 1;
        } else if (out_degree[friends[i]] == out_degree[friends[best]] &&
                   strategy.tie_break == DegreeTieBreak::Random) {
          // Reservoir sampling keeps the choice uniform over all minima.
          ++ties;
          if (rng.below(ties) == 0) best = i;
        }
      }
      chosen[best] = 1;
      const NodeId v = friends[best];
      log.push_back({u, v, static_cast<double>(out_degree[v])});
      ++out_degree[v];
    }
  }
  return assemble(g, std::move(log));
}

TrusteeSelection select_trustees(const SocialNetwork& g, std::span<const NodeId> adopters,
                                 const TrusteeStrategy& strategy) {
  if (strategy.kind == TrusteeStrategyKind::Degree) return select_trustees_degree(g, adopters, strategy);
  return select_trustees_local(g, adopters, strategy);
}

TrusteeStrategyKind parse_trustee_strategy(std::string_view name) {
  if (name == "random") return TrusteeStrategyKind::Random;
  if (name == "cf") return TrusteeStrategyKind::CommonFriends;
  if (name == "jc") return TrusteeStrategyKind::Jaccard;
  if (name == "aa") return TrusteeStrategyKind::AdamicAdar;
  if (name == "degree") return TrusteeStrategyKind::Degree;
  throw ValidationError("unknown trustee strategy '" + std::string(name) +
                        "' (expected random, cf, jc, aa or degree)");
}

std::string_view to_string(TrusteeStrategyKind kind) {
  switch (kind) {
    case TrusteeStrategyKind::Random: return "random";
    case TrusteeStrategyKind::CommonFriends: return "cf";
    case TrusteeStrategyKind::Jaccard: return "jc";
    case TrusteeStrategyKind::AdamicAdar: return "aa";
    case TrusteeStrategyKind::Degree: return "degree";
  }
  return "?";
}

}  // namespace trustfire
