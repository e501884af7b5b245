#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <map>

#include "test_support.hpp"
#include "trustfire/errors.hpp"
#include "trustfire/experiment.hpp"
#include "trustfire/synthetic.hpp"

using namespace trustfire;

namespace {

const SocialNetwork& desk_graph() {
  static const SocialNetwork g = generate_preferential_attachment({10000, 5, 0.5, 1});
  return g;
}

std::map<std::string, std::string> entries_map(const ExperimentConfig& c) {
  const auto entries = config_entries(c);
  return {entries.begin(), entries.end()};
}

ExperimentConfig sweep_config(const std::string& axis, const std::string& values) {
  ExperimentConfig c;
  set_config_value(c, "sweep_axis", axis);
  set_config_value(c, "sweep_values", values);
  set_config_value(c, "rng_seed", "1");
  return c;
}

}  // namespace

TEST(Config, Defaults) {
  const auto e = entries_map(ExperimentConfig{});
  EXPECT_EQ(e.at("min_degree"), "10");
  EXPECT_EQ(e.at("m"), "5");
  EXPECT_EQ(e.at("n_s"), "1000");
  EXPECT_EQ(e.at("k"), "3");
  EXPECT_EQ(e.at("n"), "10");
  EXPECT_EQ(e.at("p_s"), "0.05");
  EXPECT_EQ(e.at("p_r"), "0");
  EXPECT_EQ(e.at("ordering"), "gradient");
  EXPECT_EQ(e.at("alpha"), "0.9");
  EXPECT_EQ(e.at("c_I"), "0");
  EXPECT_EQ(e.at("c_e"), "1");
  EXPECT_EQ(e.at("trustee_strategy"), "cf");
  EXPECT_EQ(e.at("seed_strategy"), "degree");
  EXPECT_EQ(config_keys().size(), config_entries(ExperimentConfig{}).size());
}

TEST(Config, FileParsingAndSeedPropagation) {
  ExperimentConfig c;
  apply_config_text(c, "# experiment\n\nk = 4\r\n  p_s=0.2\nordering = random\nrng_seed = 99\n", "exp.conf");
  EXPECT_EQ(c.attack.k, 4u);
  EXPECT_EQ(c.attack.p_s, 0.2);
  EXPECT_EQ(c.attack.ordering, OrderingKind::Random);
  EXPECT_EQ(c.trustee.rng_seed, 99u);
  EXPECT_EQ(c.seed.rng_seed, 99u);
  EXPECT_EQ(c.attack.rng_seed, 99u);
  EXPECT_EQ(c.synthetic.rng_seed, 99u);
}

TEST(Config, ErrorsCarryLineNumbers) {
  ExperimentConfig c;
  try {
    apply_config_text(c, "k = 3\nwidth = 4\n", "exp.conf");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
  EXPECT_THROW(apply_config_text(c, "k 3\n", "x"), ParseError);
  EXPECT_THROW(apply_config_text(c, "p_s = 1.5\n", "x"), ParseError);
  EXPECT_THROW(apply_config_text(c, "k = 0\n", "x"), ParseError);
  EXPECT_THROW(apply_config_text(c, "m = -2\n", "x"), ParseError);
  EXPECT_THROW(apply_config_text(c, "timing = maybe\n", "x"), ParseError);
  EXPECT_THROW(set_config_value(c, "sweep_axis", "q"), ValidationError);
}

TEST(Config, EntriesRoundTrip) {
  ExperimentConfig c;
  apply_config_text(c, "k = 2\np_s = 0.125\nsweep_axis = p_r\nsweep_values = 0,0.2\nfixed_order = 3,1\n", "x");
  ExperimentConfig copy;
  for (const auto& [key, value] : config_entries(c)) set_config_value(copy, key, value);
  EXPECT_EQ(config_entries(copy), config_entries(c));
}

TEST(SpoofTable, LoadsAndValidates) {
  const auto gt = test_support::six_user_network();
  AttackConfig attack;
  load_spoof_table(attack, "# trustee user p\n3 4 0.5\n", "t", gt);
  EXPECT_EQ(attack.spoof_probability(3, 4), 0.5);
  EXPECT_EQ(attack.spoof_probability(2, 4), attack.p_s);
  EXPECT_THROW(load_spoof_table(attack, "4 3 0.5\n", "t", gt), ParseError);
  EXPECT_THROW(load_spoof_table(attack, "3 4\n", "t", gt), ParseError);
  EXPECT_THROW(load_spoof_table(attack, "3 4 2\n", "t", gt), ParseError);
}

TEST(Synthetic, SizesDegreesAndDeterminism) {
  const auto g = generate_preferential_attachment({500, 4, 0.0, 3});
  EXPECT_EQ(g.node_count(), 500u);
  EXPECT_EQ(g.edge_count(), 10u + (500u - 5u) * 4u);
  for (NodeId u = 0; u < 500; ++u) EXPECT_GE(g.degree(u), 4u);
  const auto again = generate_preferential_attachment({500, 4, 0.0, 3});
  for (NodeId u = 0; u < 500; ++u) {
    const auto a = g.neighbors(u), b = again.neighbors(u);
    EXPECT_TRUE(std::equal(a.begin(), a.end(), b.begin(), b.end()));
  }
  EXPECT_THROW(generate_preferential_attachment({3, 4, 0.0, 0}), ValidationError);
  EXPECT_THROW(generate_preferential_attachment({10, 0, 0.0, 0}), ValidationError);
}

TEST(Synthetic, TriadClosureRaisesClustering) {
  auto triangles = [](const SocialNetwork& g) {
    std::size_t count = 0;
    for (NodeId u = 0; u < g.node_count(); ++u)
      for (NodeId v : g.neighbors(u))
        if (v > u)
          for (NodeId w : g.neighbors(v))
            if (w > v && g.adjacent(u, w)) ++count;
    return count;
  };
  const auto plain = generate_preferential_attachment({3000, 4, 0.0, 5});
  const auto clustered = generate_preferential_attachment({3000, 4, 0.8, 5});
  EXPECT_EQ(plain.edge_count(), clustered.edge_count());
  EXPECT_GT(triangles(clustered), 3 * triangles(plain));
}

TEST(Sweep, KRowsNonIncreasing) {
  const auto rows = run_sweep(desk_graph(), sweep_config("k", "5,3,1,4,2"));
  ASSERT_EQ(rows.size(), 5u);
  for (std::size_t i = 0; i < rows.size(); ++i) EXPECT_EQ(rows[i].value, static_cast<double>(i + 1));
  for (std::size_t i = 1; i < rows.size(); ++i) EXPECT_LE(rows[i].final_nc, rows[i - 1].final_nc);
}

TEST(Sweep, RecoveryStrictlyDecreasing) {
  const auto rows = run_sweep(desk_graph(), sweep_config("p_r", "0,0.2,0.4"));
  EXPECT_GT(rows[0].final_nc, rows[1].final_nc);
  EXPECT_GT(rows[1].final_nc, rows[2].final_nc);
}

TEST(Sweep, SeedCountIncreasing) {
  auto c = sweep_config("n_s", "0,10,100");
  const auto rows = run_sweep(desk_graph(), c);
  EXPECT_LT(rows[0].final_nc, rows[1].final_nc);
  EXPECT_LT(rows[1].final_nc, rows[2].final_nc);
  // No seeds and no spoofing: nothing is ever compromised.
  set_config_value(c, "p_s", "0");
  EXPECT_EQ(run_sweep(desk_graph(), c)[0].final_nc, 0.0);
}

TEST(Sweep, SpoofingGrowthPeaksAroundTwoTenths) {
  auto c = sweep_config("p_s", "0,0.05,0.1,0.15,0.2,0.25,0.3,0.35,0.4");
  set_config_value(c, "trustee_strategy", "degree");
  const auto rows = run_sweep(desk_graph(), c);
  std::size_t steepest = 1;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    EXPECT_GE(rows[i].final_nc, rows[i - 1].final_nc);
    if (rows[i].final_nc - rows[i - 1].final_nc > rows[steepest].final_nc - rows[steepest - 1].final_nc) steepest = i;
  }
  EXPECT_GE(rows[steepest].value, 0.1);
  EXPECT_LE(rows[steepest].value, 0.3);
}

TEST(Sweep, MAxisRebuildsTrustees) {
  const auto rows = run_sweep(desk_graph(), sweep_config("m", "1,3,5"));
  EXPECT_LT(rows[0].final_nc, rows[1].final_nc);
  EXPECT_LE(rows[1].final_nc, rows[2].final_nc);
}

TEST(Sweep, DeterministicAcrossWorkerCounts) {
  std::vector<SweepRow> reference;
  for (std::size_t workers : {1, 4}) {
    test_support::ScopedWorkers w(workers);
    const auto rows = run_sweep(desk_graph(), sweep_config("p_s", "0.3,0,0.1"));
    if (reference.empty()) reference = rows;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      EXPECT_EQ(rows[i].value, reference[i].value);
      EXPECT_EQ(rows[i].final_nc, reference[i].final_nc);
      EXPECT_EQ(rows[i].total_cost, reference[i].total_cost);
    }
  }
}

TEST(Sweep, Errors) {
  ExperimentConfig c;
  EXPECT_THROW(run_sweep(desk_graph(), c), ValidationError);
  EXPECT_THROW(run_sweep(desk_graph(), sweep_config("k", "")), ValidationError);
  EXPECT_THROW(run_sweep(desk_graph(), sweep_config("k", "2.5")), ValidationError);
  EXPECT_THROW(run_sweep(desk_graph(), sweep_config("p_s", "1.5")), ValidationError);
  EXPECT_THROW(parse_number_list("1,,2"), ValidationError);
}

TEST(FormatNumber, ShortestRoundTrip) {
  EXPECT_EQ(format_number(4.05), "4.05");
  EXPECT_EQ(format_number(3.0), "3");
  EXPECT_EQ(format_number(0.1 + 0.2), "0.30000000000000004");
}
