#include "trustfire/graph.hpp"

#include <algorithm>
#include <string>

#include "trustfire/errors.hpp"

namespace trustfire {

namespace {

// Counting-sort style CSR build over (key, value) pairs already sorted by key.
template <class Pairs, class Key, class Value>
void build_csr(std::size_t node_count, const Pairs& pairs, Key key, Value value,
               std::vector<std::size_t>& offsets, std::vector<NodeId>& targets) {
  offsets.assign(node_count + 1, 0);
  for (const auto& p : pairs) ++offsets[key(p) + 1];
  for (std::size_t i = 0; i < node_count; ++i) offsets[i + 1] += offsets[i];
  targets.resize(pairs.size());
  std::vector<std::size_t> cursor(offsets.begin(), offsets.end() - 1);
  for (const auto& p : pairs) targets[cursor[key(p)]++] = value(p);
}

}  // namespace

SocialNetwork SocialNetwork::from_edges(std::size_t node_count,
                                        std::span<const std::pair<NodeId, NodeId>> edges,
                                        BuildStats* stats) {
  std::vector<std::pair<NodeId, NodeId>> canonical;
  canonical.reserve(edges.size());
  std::size_t self_loops = 0;
  for (auto [a, b] : edges) {
    if (a >= node_count || b >= node_count) {
      throw ValidationError("edge (" + std::to_string(a) + ", " + std::to_string(b) +
                            ") references a node outside [0, " + std::to_string(node_count) + ")");
    }
    if (a == b) {
      ++self_loops;
      continue;
    }
    canonical.emplace_back(std::min(a, b), std::max(a, b));
  }
  std::sort(canonical.begin(), canonical.end());
  const auto before = canonical.size();
  canonical.erase(std::unique(canonical.begin(), canonical.end()), canonical.end());
  if (stats) {
    stats->self_loops += self_loops;
    stats->duplicate_edges += before - canonical.size();
  }

  std::vector<std::pair<NodeId, NodeId>> directed;
  directed.reserve(canonical.size() * 2);
  for (auto [a, b] : canonical) {
    directed.emplace_back(a, b);
    directed.emplace_back(b, a);
  }
  std::sort(directed.begin(), directed.end());

  SocialNetwork g;
  build_csr(
      node_count, directed, [](const auto& p) { return p.first; },
      [](const auto& p) { return p.second; }, g.offsets_, g.neighbors_);
  return g;
}

bool SocialNetwork::adjacent(NodeId u, NodeId v) const {
  auto n = neighbors(u);
  return std::binary_search(n.begin(), n.end(), v);
}

TrusteeNetwork TrusteeNetwork::from_edges(std::size_t node_count, std::span<const TrustEdge> edges,
                                          BuildStats* stats) {
  std::vector<TrustEdge> by_user(edges.begin(), edges.end());
  for (const auto& e : by_user) {
    if (e.trustee >= node_count || e.user >= node_count) {
      throw ValidationError("trustee edge (" + std::to_string(e.trustee) + ", " +
                            std::to_string(e.user) + ") references a node outside [0, " +
                            std::to_string(node_count) + ")");
    }
    if (e.trustee == e.user) {
      throw ValidationError("user " + std::to_string(e.user) + " cannot be its own trustee");
    }
  }
  // (user, trustee) order: groups trustee lists per user, sorted.
  auto user_major = [](const TrustEdge& a, const TrustEdge& b) {
    return a.user != b.user ? a.user < b.user : a.trustee < b.trustee;
  };
  std::sort(by_user.begin(), by_user.end(), user_major);
  const auto before = by_user.size();
  by_user.erase(std::unique(by_user.begin(), by_user.end()), by_user.end());
  if (stats) stats->duplicate_edges += before - by_user.size();

  TrusteeNetwork gt;
  build_csr(
      node_count, by_user, [](const TrustEdge& e) { return e.user; },
      [](const TrustEdge& e) { return e.trustee; }, gt.in_offsets_, gt.trustees_);

  std::vector<TrustEdge> by_trustee = by_user;
  std::sort(by_trustee.begin(), by_trustee.end());  // (trustee, user)
  build_csr(
      node_count, by_trustee, [](const TrustEdge& e) { return e.trustee; },
      [](const TrustEdge& e) { return e.user; }, gt.out_offsets_, gt.dependents_);
  return gt;
}

bool TrusteeNetwork::has_trustee(NodeId u, NodeId v) const {
  const auto list = trustees(u);
  return std::binary_search(list.begin(), list.end(), v);
}

std::vector<NodeId> TrusteeNetwork::adopters() const {
  std::vector<NodeId> out;
  for (NodeId u = 0; u < node_count(); ++u)
    if (is_adopter(u)) out.push_back(u);
  return out;
}

std::size_t TrusteeNetwork::adopter_count() const {
  std::size_t count = 0;
  for (NodeId u = 0; u < node_count(); ++u) count += is_adopter(u) ? 1 : 0;
  return count;
}

std::size_t TrusteeNetwork::max_out_degree() const {
  std::size_t best = 0;
  for (NodeId u = 0; u < node_count(); ++u) best = std::max(best, out_degree(u));
  return best;
}

std::size_t TrusteeNetwork::max_trustee_count() const {
  std::size_t best = 0;
  for (NodeId u = 0; u < node_count(); ++u) best = std::max(best, trustee_count(u));
  return best;
}

std::vector<TrustEdge> TrusteeNetwork::edges() const {
  std::vector<TrustEdge> out;
  out.reserve(edge_count());
  for (NodeId u = 0; u < node_count(); ++u)
    for (NodeId v : trustees(u)) out.push_back({v, u});
  return out;
}

std::vector<NodeId> adopting_users(const SocialNetwork& g, std::size_t min_degree) {
  if (min_degree == 0) throw DomainError("min_degree must be at least 1");
  std::vector<NodeId> out;
  for (NodeId u = 0; u < g.node_count(); ++u)
    if (g.degree(u) >= min_degree) out.push_back(u);
  return out;
}

}  // namespace trustfire
