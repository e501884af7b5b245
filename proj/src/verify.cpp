#include "trustfire/verify.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <numeric>
#include <fmt/format.h>

#include "trustfire/oracles.hpp"
#include "trustfire/random.hpp"

namespace trustfire::verify {

namespace {

// Stream ids keep the suites' random draws independent of each other.
enum Stream : std::uint64_t { kTail = 1, kCascade = 2, kSetCover = 3, kForest = 4, kForestTrials = 5 };

SuiteResult timed(std::string name, const std::function<void(SuiteResult&)>& body) {
  SuiteResult result;
  result.name = std::move(name);
  const auto start = std::chrono::steady_clock::now();
  body(result);
  result.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

// Mix of interior values with exact 0, 1 and tiny probabilities, which are
// where a recurrence is most likely to slip.
double draw_probability(Rng& rng) {
  const double r = rng.uniform();
  if (r < 0.1) return 0.0;
  if (r < 0.2) return 1.0;
  if (r < 0.3) return rng.uniform() * 1e-6;
  return rng.uniform();
}

std::vector<NodeId> compromised_set(std::span<const double> aggregate, bool& exact) {
  std::vector<NodeId> out;
  exact = true;
  for (NodeId u = 0; u < aggregate.size(); ++u) {
    if (aggregate[u] == 1.0) out.push_back(u);
    else if (aggregate[u] != 0.0) exact = false;
  }
  return out;
}

}  // namespace

SuiteResult tail_vs_enumeration(const Options& options) {
  return timed("tail-vs-enumeration", [&](SuiteResult& r) {
    Rng rng(options.rng_seed, kTail);
    std::size_t checks = 0, failures = 0;
    double worst = 0.0;
    std::vector<double> probs;
    for (std::size_t i = 0; i < options.tail_vectors; ++i) {
      probs.resize(rng.below(options.tail_max_length + 1));
      for (auto& p : probs) p = draw_probability(rng);
      for (std::size_t k = 0; k <= probs.size() + 1; ++k) {
        const double diff = std::abs(options.tail(probs, k) - oracles::enumerate_tail(probs, k));
        worst = std::max(worst, diff);
        ++checks;
        if (!(diff <= options.tail_tolerance)) ++failures;
      }
    }
    r.passed = failures == 0;
    r.detail = fmt::format("{} (vector, k) checks, {} beyond {:g}, max error {:.3g}", checks, failures,
                           options.tail_tolerance, worst);
  });
}

SuiteResult cascade_equivalence(const Options& options) {
  return timed("cascade-equivalence", [&](SuiteResult& r) {
    Rng rng(options.rng_seed, kCascade);
    std::size_t runs = 0, failures = 0, propagated = 0;
    for (std::size_t i = 0; i < options.cascade_networks; ++i) {
      const std::size_t nodes = 2 + rng.below(options.cascade_max_nodes - 1);
      const std::size_t max_trustees = 1 + rng.below(6);
      const auto gt = oracles::random_trustee_network(nodes, max_trustees, 0.5 + 0.5 * rng.uniform(), rng);
      const std::size_t k = 1 + rng.below(3);
      std::vector<NodeId> seeds;
      const double seed_rate = 0.05 + 0.25 * rng.uniform();
      for (NodeId u = 0; u < nodes; ++u)
        if (rng.bernoulli(seed_rate)) seeds.push_back(u);

      const auto expected = oracles::deterministic_cascade(gt, seeds, k);
      if (expected.size() > seeds.size()) ++propagated;
      for (auto ordering : {OrderingKind::Random, OrderingKind::Gradient}) {
        AttackConfig config;
        config.k = k;
        config.p_s = 0.0;
        config.p_r = 0.0;
        config.iterations = nodes;
        config.ordering = ordering;
        config.rng_seed = rng.next();
        const auto report = run_attack(gt, seeds, config);
        bool exact = false;
        const auto got = compromised_set(report.final_state.aggregate, exact);
        ++runs;
        if (!exact || got != expected) ++failures;
      }
    }
    r.passed = failures == 0;
    r.detail = fmt::format("{} model runs on {} networks ({} with propagation beyond the seeds), {} mismatches",
                           runs, options.cascade_networks, propagated, failures);
  });
}

SuiteResult set_cover_reduction(const Options& options) {
  return timed("set-cover-reduction", [&](SuiteResult& r) {
    Rng rng(options.rng_seed, kSetCover);
    std::size_t covering = 0, failures = 0;
    for (std::size_t i = 0; i < options.setcover_instances; ++i) {
      const auto instance = oracles::random_set_cover_instance(
          options.setcover_max_elements, options.setcover_max_subsets, options.setcover_max_k, rng);
      const auto reduction = oracles::gen_set_cover_instance(instance);
      const auto cascade = oracles::deterministic_cascade(reduction.network, reduction.seeds, instance.k);
      const bool covers = oracles::chosen_subsets_cover(instance);
      covering += covers ? 1 : 0;
      if ((cascade.size() == reduction.target) != covers) ++failures;
    }
    r.passed = failures == 0;
    r.detail = fmt::format("{} instances ({} covering, {} not), {} violations", options.setcover_instances, covering,
                           options.setcover_instances - covering, failures);
  });
}

SuiteResult forest_monte_carlo(const Options& options) {
  return timed("forest-monte-carlo", [&](SuiteResult& r) {
    Rng rng(options.rng_seed, kForest);
    std::size_t failures = 0;
    double worst_z = 0.0;
    for (std::size_t i = 0; i < options.forest_instances; ++i) {
      AttackConfig config;
      config.p_s = options.forest_p_s;
      config.p_r = 0.0;
      config.iterations = options.forest_iterations;
      config.ordering = OrderingKind::Random;
      config.rng_seed = rng.next();
      const auto forest = oracles::random_independent_forest(options.forest_max_nodes, config.k, rng);
      const double model = run_attack(forest.network, forest.seeds, config).final_nc;
      const auto mc = oracles::monte_carlo_attack(forest.network, forest.seeds, config, options.forest_trials,
                                                  mix_seed(options.rng_seed, kForestTrials + i));
      const double diff = std::abs(model - mc.mean_compromised);
      if (mc.std_error > 0.0) worst_z = std::max(worst_z, diff / mc.std_error);
      if (!(diff <= options.forest_sigmas * mc.std_error + 1e-9)) ++failures;
    }
    r.passed = failures == 0;
    r.detail = fmt::format("{} forests x {} trials, {} beyond {:g} SE, max |z| {:.2f}", options.forest_instances,
                           options.forest_trials, failures, options.forest_sigmas, worst_z);
  });
}

std::vector<SuiteResult> run_all(const Options& options) {
  return {tail_vs_enumeration(options), cascade_equivalence(options), set_cover_reduction(options),
          forest_monte_carlo(options)};
}

}  // namespace trustfire::verify
