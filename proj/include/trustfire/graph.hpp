#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <utility>
#include <vector>

namespace trustfire {

using NodeId = std::uint32_t;

inline constexpr NodeId kMaxNodeId = std::numeric_limits<NodeId>::max() - 1;

// Counters for input defects that are dropped instead of rejected.
struct BuildStats {
  std::size_t duplicate_edges = 0;
  std::size_t self_loops = 0;
};

// Undirected friendship graph in CSR form. Neighbor lists are sorted and
// free of duplicates and self-loops; adjacency is symmetric.
class SocialNetwork {
 public:
  SocialNetwork() = default;

  // Builds from undirected edge pairs. Self-loops and repeated edges (in
  // either orientation) are dropped and counted in `stats` when provided.
  static SocialNetwork from_edges(std::size_t node_count,
                                  std::span<const std::pair<NodeId, NodeId>> edges,
                                  BuildStats* stats = nullptr);

  std::size_t node_count() const noexcept { return offsets_.empty() ? 0 : offsets_.size() - 1; }
  std::size_t edge_count() const noexcept { return neighbors_.size() / 2; }

  std::span<const NodeId> neighbors(NodeId u) const {
    return {neighbors_.data() + offsets_[u], neighbors_.data() + offsets_[u + 1]};
  }
  std::size_t degree(NodeId u) const { return offsets_[u + 1] - offsets_[u]; }
  bool adjacent(NodeId u, NodeId v) const;

 private:
  std::vector<std::size_t> offsets_;
  std::vector<NodeId> neighbors_;
};

// Directed edge (trustee -> user): `trustee` is a trustee of `user`.
struct TrustEdge {
  NodeId trustee;
  NodeId user;

  friend bool operator==(const TrustEdge&, const TrustEdge&) = default;
  friend auto operator<=>(const TrustEdge&, const TrustEdge&) = default;
};

// Trustee network. For every user u, trustees(u) lists the users u appointed
// (in-neighbors) and dependents(u) lists the users that appointed u
// (out-neighbors). Both lists are sorted. A user is an adopter iff it has at
// least one trustee.
class TrusteeNetwork {
 public:
  TrusteeNetwork() = default;

  // Duplicate edges are dropped and counted; a self-loop throws
  // ValidationError; ids >= node_count throw ValidationError.
  static TrusteeNetwork from_edges(std::size_t node_count, std::span<const TrustEdge> edges,
                                   BuildStats* stats = nullptr);

  std::size_t node_count() const noexcept { return in_offsets_.empty() ? 0 : in_offsets_.size() - 1; }
  std::size_t edge_count() const noexcept { return trustees_.size(); }

  std::span<const NodeId> trustees(NodeId u) const {
    return {trustees_.data() + in_offsets_[u], trustees_.data() + in_offsets_[u + 1]};
  }
  std::span<const NodeId> dependents(NodeId u) const {
    return {dependents_.data() + out_offsets_[u], dependents_.data() + out_offsets_[u + 1]};
  }
  // m_u
  std::size_t trustee_count(NodeId u) const { return in_offsets_[u + 1] - in_offsets_[u]; }
  // d_o(u)
  std::size_t out_degree(NodeId u) const { return out_offsets_[u + 1] - out_offsets_[u]; }
  bool is_adopter(NodeId u) const { return trustee_count(u) > 0; }
  // True iff v is a trustee of u.
  bool has_trustee(NodeId u, NodeId v) const;

  // Index of the i-th trustee edge of u in [0, edge_count()); lets callers
  // keep per-edge side tables aligned with trustees(u).
  std::size_t trustee_edge_index(NodeId u, std::size_t i) const { return in_offsets_[u] + i; }

  std::vector<NodeId> adopters() const;
  std::size_t adopter_count() const;
  std::size_t max_out_degree() const;
  std::size_t max_trustee_count() const;

  // All edges ordered by (user, trustee).
  std::vector<TrustEdge> edges() const;

 private:
  std::vector<std::size_t> in_offsets_;
  std::vector<NodeId> trustees_;
  std::vector<std::size_t> out_offsets_;
  std::vector<NodeId> dependents_;
};

// Users with at least `min_degree` friends. Throws DomainError when
// min_degree is 0.
std::vector<NodeId> adopting_users(const SocialNetwork& g, std::size_t min_degree);

}  // namespace trustfire
