#include <gtest/gtest.h>

#include "trustfire/verify.hpp"

using namespace trustfire;

namespace {

double tail_k_plus_one(std::span<const double> probs, std::size_t k) { return tail_at_least_k(probs, k + 1); }
double tail_k_minus_one(std::span<const double> probs, std::size_t k) {
  return tail_at_least_k(probs, k == 0 ? 0 : k - 1);
}

verify::Options quick() {
  verify::Options o;
  o.forest_trials = 20000;
  o.forest_instances = 5;
  return o;
}

}  // namespace

TEST(Verify, AllSuitesPass) {
  for (const auto& suite : verify::run_all(quick())) EXPECT_TRUE(suite.passed) << suite.name << ": " << suite.detail;
}

TEST(Verify, CorruptedTailIsCaught) {
  auto options = quick();
  options.tail = &tail_k_plus_one;
  EXPECT_FALSE(verify::tail_vs_enumeration(options).passed);
  options.tail = &tail_k_minus_one;
  EXPECT_FALSE(verify::tail_vs_enumeration(options).passed);
}
