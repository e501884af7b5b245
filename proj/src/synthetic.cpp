#include "trustfire/synthetic.hpp"

#include <algorithm>
#include <utility>
#include <vector>

#include "trustfire/errors.hpp"
#include "trustfire/random.hpp"

namespace trustfire {

SocialNetwork generate_preferential_attachment(const SyntheticOptions& options) {
  const std::size_t n = options.nodes;
  const std::size_t m = options.attach;
  if (m == 0) throw ValidationError("attachment count must be at least 1");
  if (n < m + 1) throw ValidationError("need at least attach+1 nodes for the initial clique");
  if (n > kMaxNodeId) throw RangeError("too many nodes");
  if (!(options.triad_prob >= 0.0 && options.triad_prob <= 1.0)) {
    throw ValidationError("triad probability must lie in [0,1]");
  }

  Rng rng(options.rng_seed);
  std::vector<std::pair<NodeId, NodeId>> edges;
  edges.reserve(m * n);
  // Every edge endpoint once: sampling a slot uniformly is degree-proportional.
  std::vector<NodeId> endpoints;
  endpoints.reserve(2 * m * n);
  // Neighbour lists are needed for triad steps only.
  std::vector<std::vector<NodeId>> adj(options.triad_prob > 0.0 ? n : 0);

  auto link = [&](NodeId a, NodeId b) {
    edges.emplace_back(a, b);
    endpoints.push_back(a);
    endpoints.push_back(b);
    if (!adj.empty()) {
      adj[a].push_back(b);
      adj[b].push_back(a);
    }
  };

  for (NodeId a = 0; a <= m; ++a)
    for (NodeId b = a + 1; b <= m; ++b) link(a, b);

  std::vector<NodeId> chosen;
  chosen.reserve(m);
  auto taken = [&](NodeId v) { return std::find(chosen.begin(), chosen.end(), v) != chosen.end(); };
  for (auto u = static_cast<NodeId>(m + 1); u < n; ++u) {
    chosen.clear();
    // Endpoints of u's own edges are appended only after all targets are
    // picked, so u never selects itself.
    const std::size_t pool = endpoints.size();
    while (chosen.size() < m) {
      NodeId target = 0;
      bool found = false;
      if (!chosen.empty() && !adj.empty() && rng.bernoulli(options.triad_prob)) {
        const auto& around = adj[chosen.back()];
        const NodeId w = around[rng.below(around.size())];
        if (!taken(w)) {
          target = w;
          found = true;
        }
      }
      while (!found) {
        target = endpoints[rng.below(pool)];
        found = !taken(target);
      }
      chosen.push_back(target);
    }
    for (NodeId v : chosen) link(u, v);
  }
  return SocialNetwork::from_edges(n, edges);
}

}  // namespace trustfire
