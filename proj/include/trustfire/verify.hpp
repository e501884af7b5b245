#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "trustfire/attack.hpp"

// Cross-checks of the model against the oracles, shared by the CLI's verify
// command and the acceptance tests.
namespace trustfire::verify {

using TailFunction = double (*)(std::span<const double>, std::size_t);

struct SuiteResult {
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

struct Options {
  std::uint64_t rng_seed = 20140601;
  // Tail implementation under test; swapping it lets the suite be checked
  // against a deliberately broken DP.
  TailFunction tail = &tail_at_least_k;

  std::size_t tail_vectors = 1000;
  std::size_t tail_max_length = 10;
  double tail_tolerance = 1e-12;

  std::size_t cascade_networks = 50;
  std::size_t cascade_max_nodes = 200;

  std::size_t setcover_instances = 100;
  std::size_t setcover_max_elements = 4;
  std::size_t setcover_max_subsets = 4;
  std::size_t setcover_max_k = 3;

  std::size_t forest_instances = 20;
  std::size_t forest_max_nodes = 50;
  std::size_t forest_trials = 100000;
  std::size_t forest_iterations = 3;
  double forest_p_s = 0.05;
  double forest_sigmas = 3.0;
};

// Random probability vectors against subset enumeration, every k from 0 to
// length + 1.
SuiteResult tail_vs_enumeration(const Options& options);

// p_s = p_r = 0 and n = |V_T|: run_attack must give p_a in {0,1} matching the
// threshold cascade exactly, under O-Random and O-Gradient.
SuiteResult cascade_equivalence(const Options& options);

// Reduction networks: cascade size equals l exactly iff the chosen subsets
// cover the ground set.
SuiteResult set_cover_reduction(const Options& options);

// Forests whose trustees have ordering-determined trajectories: model n_c
// within forest_sigmas standard errors of the Monte Carlo mean.
SuiteResult forest_monte_carlo(const Options& options);

std::vector<SuiteResult> run_all(const Options& options);

}  // namespace trustfire::verify
