#include "test_support.hpp"

#include <cstdlib>

#include "trustfire/random.hpp"

namespace test_support {

trustfire::SocialNetwork random_social(std::size_t n, std::size_t edges, std::uint64_t seed) {
  trustfire::Rng rng(seed);
  std::vector<std::pair<trustfire::NodeId, trustfire::NodeId>> list;
  for (std::size_t e = 0; e < edges; ++e) {
    list.emplace_back(static_cast<trustfire::NodeId>(rng.below(n)), static_cast<trustfire::NodeId>(rng.below(n)));
  }
  return trustfire::SocialNetwork::from_edges(n, list);
}

trustfire::TrusteeNetwork six_user_network() {
  return trustee_net(6, {{0, 5}, {1, 5}, {2, 5}, {2, 4}, {3, 4}, {5, 4}});
}

ScopedWorkers::ScopedWorkers(std::size_t n) {
  if (const char* old = std::getenv("TRUSTFIRE_WORKERS")) {
    previous_ = old;
    had_previous_ = true;
  }
  setenv("TRUSTFIRE_WORKERS", std::to_string(n).c_str(), 1);
}

ScopedWorkers::~ScopedWorkers() {
  if (had_previous_) setenv("TRUSTFIRE_WORKERS", previous_.c_str(), 1);
  else unsetenv("TRUSTFIRE_WORKERS");
}

}  // namespace test_support
