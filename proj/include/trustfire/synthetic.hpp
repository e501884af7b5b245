#pragma once

#include <cstddef>
#include <cstdint>

#include "trustfire/graph.hpp"

namespace trustfire {

struct SyntheticOptions {
  std::size_t nodes = 10000;
  std::size_t attach = 5;    // edges added per arriving node
  double triad_prob = 0.0;   // chance each extra edge closes a triangle instead
  std::uint64_t rng_seed = 0;
};

// Growth model: start from a clique on attach+1 nodes; every later node links
// to `attach` distinct existing nodes. The first target is chosen in
// proportion to degree; each further target, with probability triad_prob, is
// a random neighbour of the previous target (falling back to degree-
// proportional choice when that neighbour is unusable). triad_prob = 0 is
// plain preferential attachment.
SocialNetwork generate_preferential_attachment(const SyntheticOptions& options);

}  // namespace trustfire
