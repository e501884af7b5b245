#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "trustfire/graph.hpp"

namespace trustfire {

enum class TrusteeStrategyKind { Random, CommonFriends, Jaccard, AdamicAdar, Degree };

// How T-Degree resolves ties between friends of equal out-degree.
enum class DegreeTieBreak { Random, AscendingId };

struct TrusteeStrategy {
  TrusteeStrategyKind kind = TrusteeStrategyKind::CommonFriends;
  std::size_t m = 5;  // trustees per adopter
  std::uint64_t rng_seed = 0;
  DegreeTieBreak tie_break = DegreeTieBreak::Random;
};

// One trustee pick. For local strategies `score` is s(v,u); for T-Degree it
// is d_o(trustee) just before the pick.
struct SelectionLogEntry {
  NodeId user;
  NodeId trustee;
  double score;
};

struct TrusteeSelection {
  TrusteeNetwork network;
  std::vector<SelectionLogEntry> log;  // in pick order
};

// Friend-similarity scores. Each requires v to be a friend of u and throws
// DomainError otherwise.
double score_common_friends(const SocialNetwork& g, NodeId u, NodeId v);
double score_jaccard(const SocialNetwork& g, NodeId u, NodeId v);
// Sum over common friends w of 1 / ln|Gamma(w)|.
double score_adamic_adar(const SocialNetwork& g, NodeId u, NodeId v);

// Every adopter u gets min(m, |Gamma(u)|) friends with the highest scores,
// ties by ascending id. Adopters are de-duplicated; an adopter without
// friends throws ValidationError.
TrusteeSelection select_trustees_local(const SocialNetwork& g, std::span<const NodeId> adopters,
                                       const TrusteeStrategy& strategy);

// Greedy out-degree balancing: adopters in ascending id order repeatedly
// take the unchosen friend with the smallest current out-degree.
TrusteeSelection select_trustees_degree(const SocialNetwork& g, std::span<const NodeId> adopters,
                                        const TrusteeStrategy& strategy);

TrusteeSelection select_trustees(const SocialNetwork& g, std::span<const NodeId> adopters,
                                 const TrusteeStrategy& strategy);

// "random", "cf", "jc", "aa", "degree"
TrusteeStrategyKind parse_trustee_strategy(std::string_view name);
std::string_view to_string(TrusteeStrategyKind kind);

}  // namespace trustfire
