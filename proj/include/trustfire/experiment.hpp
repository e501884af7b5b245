#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "trustfire/attack.hpp"
#include "trustfire/graph.hpp"
#include "trustfire/seed_selection.hpp"
#include "trustfire/synthetic.hpp"
#include "trustfire/trustee_selection.hpp"

namespace trustfire {

enum class SweepAxis { M, K, SpoofProbability, SeedCount, RecoveryProbability };

// Every knob of an experiment. Paths are empty when unset.
struct ExperimentConfig {
  std::string social_graph;
  bool remap_ids = false;
  std::string trustee_network;  // reuse a built trustee network instead of the social graph
  std::string seeds;            // reuse a seed list instead of selecting one
  std::string spoof_table;      // "trustee user p" lines overriding p_s per edge
  std::string output_dir = "out";
  std::uint64_t rng_seed = 0;

  std::size_t min_degree = 10;
  TrusteeStrategy trustee;  // T-CF, m = 5
  SeedStrategy seed;        // S-Degree, n_s = 1000, alpha = 0.9
  AttackConfig attack;      // k = 3, n = 10, p_s = 0.05, p_r = 0, O-Gradient

  std::optional<SweepAxis> sweep_axis;
  std::vector<double> sweep_values;
  bool timing = false;  // adds a wall-clock column to sweep output

  SyntheticOptions synthetic{10000, 5, 0.5, 0};

  // gen-setcover instance: subsets as "0,1;1;2", chosen indices as "0,2",
  // copies per subset taken from attack.k.
  std::size_t setcover_elements = 0;
  std::string setcover_subsets;
  std::string setcover_choice;
};

// Config keys in canonical order.
const std::vector<std::string>& config_keys();

// Sets one key from its text form. Unknown keys and malformed values throw
// ValidationError. rng_seed is propagated to every component seed.
void set_config_value(ExperimentConfig& config, std::string_view key, std::string_view value);

// Effective configuration as (key, value) text pairs in canonical order.
std::vector<std::pair<std::string, std::string>> config_entries(const ExperimentConfig& config);

// Line-oriented "key = value" file; '#' starts a comment line. Errors carry
// the source name and line number.
void apply_config_text(ExperimentConfig& config, std::string_view text, const std::string& source);

SweepAxis parse_sweep_axis(std::string_view name);  // m, k, p_s, n_s, p_r
std::string_view to_string(SweepAxis axis);

// Comma-separated numbers.
std::vector<double> parse_number_list(std::string_view text);

// "trustee user p" per line. Throws ValidationError for edges absent from gt.
void load_spoof_table(AttackConfig& attack, std::string_view text, const std::string& source,
                      const TrusteeNetwork& gt);

TrusteeSelection build_trustees(const SocialNetwork& g, const ExperimentConfig& config);

std::vector<NodeId> choose_seeds(const TrusteeNetwork& gt, const ExperimentConfig& config);

struct SweepRow {
  double value = 0.0;
  double final_nc = 0.0;
  double total_cost = 0.0;
  double runtime_seconds = 0.0;
};

// One full pipeline per axis value (the trustee network is rebuilt only
// across m values). Points run in parallel; rows come back sorted by value.
std::vector<SweepRow> run_sweep(const SocialNetwork& g, const ExperimentConfig& config);

// Shortest text that parses back to the same double.
std::string format_number(double value);

}  // namespace trustfire
